// Acceptance run: one line per criterion, PASS or FAIL with the measured
// numbers. Exit status 0 when every criterion outside --expect-fail passed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lmcf/flow.hpp"
#include "lmcf/generators.hpp"
#include "lmcf/scenarios.hpp"
#include "lmcf/singularity.hpp"
#include "lmcf/solitons.hpp"

using namespace lmcf;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    // Records one sub-check; the criterion passes only if all of them do.
    void require(bool ok, const std::string& what) {
        pass = pass && ok;
        if (!detail.empty()) detail += "; ";
        detail += what + (ok ? "" : " [x]");
    }
};

std::string num(double v, int digits = 4) {
    std::ostringstream s;
    s.precision(digits);
    s << v;
    return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct ScenarioRun {
    Trajectory traj;
    SingularityReport report;
};

ScenarioRun run_builtin(const std::string& name) {
    const ScenarioConfig& c = builtin_scenario(name);
    ScenarioRun r;
    r.traj = run(generate(c.generator, c.seed), c.flow);
    if (c.analyze) r.report = analyze(r.traj, c.analysis);
    return r;
}

double window_distance(const ProfileCurve& a, const ProfileCurve& b, double radius, bool mirror = false) {
    const auto pa = as_polylines(a, mirror), pb = as_polylines(b, mirror);
    return polyline_hausdorff(pa, pb, Window{{}, radius});
}

std::string model_text(const std::optional<ModelFit>& f) {
    if (!f) return "none";
    std::string s = f->model + " " + num(f->distance);
    if (auto it = f->parameters.find("multiplicity"); it != f->parameters.end())
        s += " (multiplicity " + num(it->second, 2) + ")";
    return s;
}

double w_norm(const SingularityReport& r) {
    if (!r.estimate) throw AnalysisError("no singular point estimate");
    return norm(r.estimate->w_hat);
}

// Extinction time of the unit circle at a given node count.
double circle_extinction(std::size_t samples) {
    FlowConfig f;
    f.spacing_fraction = 1.0 / static_cast<double>(samples);
    f.stop.sup_velocity_threshold = 1e3;
    const Trajectory t = run(circle(1.0, samples), f);
    return estimate_singularity(t).T_hat;
}

Outcome circle_extinction_profile() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    FlowConfig f;
    f.spacing_fraction = 1.0 / 512.0;
    f.stop.sup_velocity_threshold = 1e3;
    f.snapshot_interval = 0.01;
    const auto c = circle(1.0, 512);
    const Trajectory t = run(c, f);
    const double T = estimate_singularity(t).T_hat;
    const double elapsed = seconds_since(t0);
    double worst = 0.0;
    std::size_t checked = 0;
    for (const auto& s : t.snapshots) {
        if (s.time > 0.24) continue;
        const double r = std::sqrt(1.0 - 4.0 * s.time);
        for (const Vec2 p : s.curve.points()) worst = std::max(worst, std::abs(norm(p) - r));
        ++checked;
    }
    o.require(c.max_spacing() <= 2 * pi / 512 * (1 + 1e-12), "spacing " + num(c.max_spacing()));
    o.require(checked >= 24 && worst < 1e-3, "max |r - sqrt(1-4t)| " + num(worst) + " over " + std::to_string(checked) +
                                                 " snapshots up to t = 0.24");
    o.require(std::abs(T - 0.25) <= 0.02 * 0.25, "T_hat " + num(T, 8));
    o.require(elapsed < 10.0, "runtime " + num(elapsed, 3) + " s");
    return o;
}

Outcome shrinker_fixed_point() {
    Outcome o;
    const auto c0 = circle_shrinker(-0.5, 256).curve;
    FlowConfig f;
    f.gauge = Gauge::shrinker_gauge;
    f.stop.max_time = 2.0;
    const Trajectory t = run(c0, f);
    const double rate = window_distance(t.back().curve, c0, 1e9) / t.back().time;
    o.require(rate < 1e-4, "Hausdorff drift " + num(rate) + " per unit gauge time over s = " + num(t.back().time));
    return o;
}

Outcome grim_reaper_translation() {
    Outcome o;
    const auto r = run_builtin("grim-reaper");
    const double d = grim_reaper_band_distance(r.traj.back().curve, 1.0, pi / 2 - 0.2);
    o.require(std::abs(r.traj.back().time - 1.0) < 1e-12, "t = " + num(r.traj.back().time, 12));
    o.require(d < 1e-3, "distance to the translate on |y| <= pi/2 - 0.2: " + num(d));
    return o;
}

Outcome lawlor_stationary() {
    Outcome o;
    const auto l = lawlor_profile(1.0 / 3.0, 3.0, 0.01);
    const double residual = soliton_residual(l.curve, SolitonSpec::standard(SolitonKind::minimal));
    o.require(residual < 1e-6, "velocity residual " + num(residual));
    FlowConfig f;
    f.stop.max_time = 1.0;
    const Trajectory t = run(l.curve, f);
    const double drift = window_distance(t.back().curve, l.curve, 3.0);
    o.require(drift < 1e-3, "unit-time drift " + num(drift));
    const double osc = angle_oscillation(lagrangian_angle(l.curve, 1e-9));
    o.require(osc < 1e-4, "Lagrangian angle oscillation " + num(osc));
    return o;
}

Outcome ellipse_neck() {
    Outcome o;
    const auto r = run_builtin("ellipse");
    const auto& rep = r.report;
    o.require(w_norm(rep) <= 0.05, "|w_hat| " + num(w_norm(rep)));
    if (!rep.type1_curve || rep.type1_fits.empty()) {
        o.require(false, "no resolvable Type I rescale");
        return o;
    }
    const double sigma = rep.type1_fits.back().first;
    const auto& fit = rep.type1_fits.back().second;
    o.require(fit.model == "line_pair" && fit.distance < 0.05,
              "sigma " + num(sigma) + ": " + fit.model + " " + num(fit.distance));
    MatchOptions mo;
    mo.window_radius = builtin_scenario("ellipse").analysis.type1_window;
    mo.origin = rep.type1_curve->origin;
    mo.models = {"circle_2"};
    const auto circle_fit = match_model(rep.type1_curve->curve, mo);
    const double monitor = rep.classification ? rep.classification->monitor.back().value : 0.0;
    o.require(circle_fit.model != "circle_2" || circle_fit.distance >= 0.05,
              "radius-2 circle distance " + num(circle_fit.distance) + ", final monitor " + num(monitor));
    return o;
}

Outcome figure_eight_collapse() {
    Outcome o;
    const auto r = run_builtin("figure-eight");
    const auto& rep = r.report;
    o.require(w_norm(rep) <= 0.05, "|w_hat| " + num(w_norm(rep)));
    bool monotone = true;
    double prev = aspect_ratio(r.traj.front().curve);
    const double first = prev;
    for (const auto& s : r.traj.snapshots) {
        const double a = aspect_ratio(s.curve);
        monotone = monotone && a <= prev;
        prev = a;
    }
    o.require(monotone && first / prev >= 5.0, std::string(monotone ? "monotone" : "non-monotone") +
                                                   " aspect ratio " + num(first) + " -> " + num(prev) + " (x" +
                                                   num(first / prev) + ")");
    o.require(rep.verdict == TypeVerdict::type_II && rep.type2_match && rep.type2_match->model == "grim_reaper" &&
                  rep.type2_match->distance < 0.05,
              "verdict " + to_string(rep.verdict) + ", Type II fit " + model_text(rep.type2_match));
    const bool line2 = rep.blowup_match && rep.blowup_match->model == "line" &&
                       rep.blowup_match->parameters.count("multiplicity") &&
                       rep.blowup_match->parameters.at("multiplicity") == 2.0;
    o.require(line2, "Type I fit " + model_text(rep.blowup_match));
    return o;
}

Outcome obtuse_arc() {
    Outcome o;
    const auto r = run_builtin("obtuse-arc");
    const auto& rep = r.report;
    const auto reason = r.traj.termination.reason;
    o.require(reason == StopReason::min_radius || reason == StopReason::sup_velocity,
              "stopped on " + to_string(reason) + " at t = " + num(r.traj.termination.time, 8));
    o.require(w_norm(rep) <= 0.05, "|w_hat| " + num(w_norm(rep)));
    o.require(rep.verdict == TypeVerdict::type_II, "verdict " + to_string(rep.verdict));
    o.require(rep.blowup_match && rep.blowup_match->model == "line_pair",
              "Type I fit " + model_text(rep.blowup_match));
    o.require(rep.blowdown_to_type1 && *rep.blowdown_to_type1 < 0.05,
              "blow-down to the Type I pair " + (rep.blowdown_to_type1 ? num(*rep.blowdown_to_type1) : "n/a"));
    return o;
}

Outcome lawlor_convergence() {
    Outcome o;
    const auto r = run_builtin("lawlor-stability");
    const auto& term = r.traj.termination;
    o.require(term.reason == StopReason::steady_state && term.residual < 1e-5,
              "stopped on " + to_string(term.reason) + " at t = " + num(term.time) + ", residual " + num(term.residual));
    MatchOptions mo;
    mo.window_radius = 3.0;
    mo.models = {"lawlor"};
    const auto fit = match_model(r.traj.back().curve, mo);
    o.require(fit.model == "lawlor" && fit.distance < 0.01,
              "Lawlor fit " + num(fit.distance) + " (c = " + num(fit.parameters.count("c") ? fit.parameters.at("c") : 0.0) +
                  ")");
    return o;
}

Outcome acute_arc() {
    Outcome o;
    const auto r = run_builtin("acute-arc");
    const auto shot = expander_for_angle(pi / 4);
    const double d = window_distance(r.traj.back().curve, shot.profile.curve, 3.0);
    o.require(d < 0.02, "distance to the pi/4 expander " + num(d) + " at s = " + num(r.traj.back().time) + " (" +
                            to_string(r.traj.termination.reason) + ")");
    return o;
}

Outcome chekanov_collapse() {
    Outcome o;
    const auto r = run_builtin("chekanov");
    const auto& rep = r.report;
    o.require(w_norm(rep) > 0.5, "|w_hat| " + num(w_norm(rep)) + ", stopped on " +
                                     to_string(r.traj.termination.reason));
    o.require(rep.blowup_match && rep.blowup_match->model == "circle_sqrt2" && rep.blowup_match->distance < 0.05,
              "Type I fit " + model_text(rep.blowup_match));
    return o;
}

Outcome numerics_hygiene() {
    Outcome o;
    const double e64 = std::abs(circle_extinction(64) - 0.25), e128 = std::abs(circle_extinction(128) - 0.25);
    o.require(e64 / e128 >= 3.0, "extinction error " + num(e64) + " -> " + num(e128) + " (x" + num(e64 / e128) + ")");

    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> angle(0.0, 2 * pi);
    double worst_rot = 0.0, worst_odd = 0.0;
    for (const auto& c : {ellipse(3, 1, 256), star(5, 0.3, 256), chekanov(256), figure_eight(3.0, 256)}) {
        const double eps = default_origin_epsilon(c);
        const auto v = flow_velocity(c, eps);
        double scale = 0.0;
        for (const Vec2 w : v) scale = std::max(scale, norm(w));
        for (int k = 0; k < 8; ++k) {
            const double beta = angle(rng);
            const auto vr = flow_velocity(c.rotated(beta), eps);
            for (std::size_t i = 0; i < c.size(); ++i)
                worst_rot = std::max(worst_rot, norm(vr[i] - rotate(v[i], beta)) / scale);
        }
        const auto vn = flow_velocity(c.negated(), eps);
        for (std::size_t i = 0; i < c.size(); ++i) worst_odd = std::max(worst_odd, norm(vn[i] + v[i]) / scale);
    }
    o.require(worst_rot <= 1e-12, "rotation equivariance " + num(worst_rot));
    o.require(worst_odd <= 1e-12, "oddness " + num(worst_odd));

    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> count(1, 60);
    std::size_t violations = 0;
    const int triples = 500;
    for (int k = 0; k < triples; ++k) {
        std::vector<Vec2> s[3];
        for (auto& set : s) {
            const int n = count(rng);
            for (int i = 0; i < n; ++i) set.push_back({u(rng), u(rng)});
        }
        const double ab = hausdorff_distance(s[0], s[1]), ba = hausdorff_distance(s[1], s[0]);
        const double bc = hausdorff_distance(s[1], s[2]), ac = hausdorff_distance(s[0], s[2]);
        const bool ok = ab == ba && ab >= 0.0 && ac <= ab + bc + 1e-12 && hausdorff_distance(s[0], s[0]) == 0.0;
        if (!ok) ++violations;
    }
    o.require(violations == 0, "metric axioms violated on " + std::to_string(violations) + " of " +
                                   std::to_string(triples) + " random triples");
    return o;
}

std::set<int> parse_ids(const std::string& s) {
    std::set<int> ids;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) ids.insert(std::stoi(item));
    return ids;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    std::string only, expect_fail;
    app.add_option("--only", only, "comma-separated criterion numbers to run");
    app.add_option("--expect-fail", expect_fail,
                   "comma-separated criteria known to fail; they still print FAIL but do not set the exit status");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"circle extinction profile", circle_extinction_profile},
        {"shrinker gauge fixed point", shrinker_fixed_point},
        {"grim reaper translation", grim_reaper_translation},
        {"lawlor stationarity", lawlor_stationary},
        {"ellipse (3,1) neck pinch", ellipse_neck},
        {"figure-eight collapse", figure_eight_collapse},
        {"obtuse arc (2.2)", obtuse_arc},
        {"right-angle arc to lawlor neck", lawlor_convergence},
        {"acute arc (pi/4) to expander", acute_arc},
        {"chekanov collapse", chekanov_collapse},
        {"numerics hygiene", numerics_hygiene},
    };
    const std::set<int> selected = parse_ids(only), expected = parse_ids(expect_fail);

    int unexpected = 0, passed = 0, ran = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!selected.empty() && !selected.count(id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail += (o.detail.empty() ? "" : "; ") + std::string("error: ") + e.what();
        }
        ++ran;
        if (o.pass) ++passed;
        if (!o.pass && !expected.count(id)) ++unexpected;
        std::printf("%-4s %2d %-32s %s (%.1f s)%s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(),
                    o.detail.c_str(), seconds_since(t0), !o.pass && expected.count(id) ? " [known failure]" : "");
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", passed, ran);
    return unexpected == 0 ? 0 : 1;
}
