#include "lmcf/scenarios.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <sstream>

#include "lmcf/generators.hpp"
#include "lmcf/kernels.hpp"
#include "lmcf/plots.hpp"
#include "lmcf/solitons.hpp"

namespace lmcf {

std::filesystem::path output_root() {
    const char* env = std::getenv(output_root_variable);
    return env && *env ? std::filesystem::path(env) : std::filesystem::path("runs");
}

const std::map<std::string, std::map<std::string, double>>& generator_defaults() {
    static const std::map<std::string, std::map<std::string, double>> d{
        {"circle", {{"radius", 1.0}, {"samples", 256}}},
        {"ellipse", {{"a", 3.0}, {"b", 1.0}, {"samples", 256}}},
        {"chekanov", {{"samples", 256}}},
        {"figure_eight", {{"scale", 3.0}, {"samples", 256}}},
        {"arc", {{"alpha", 2.2}, {"c", 1.0 / 3.0}, {"window", 6.0}, {"spacing", 0.05}}},
        {"lawlor_sandwich", {{"c", 1.0 / 3.0}, {"amplitude", 0.5}, {"window", 4.0}, {"spacing", 0.03}}},
        {"star", {{"k", 4}, {"eps", 0.1}, {"samples", 256}}},
        {"grim_reaper", {{"samples", 1024}, {"y_margin", 0.2}}},
        {"lawlor", {{"c", 1.0 / 3.0}, {"window", 4.0}, {"spacing", 0.02}}},
    };
    return d;
}

namespace {

std::size_t count_param(const std::map<std::string, double>& p, const std::string& key) {
    const double v = p.at(key);
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e7) throw ParameterError(key, "must be a positive integer");
    return static_cast<std::size_t>(v);
}

}  // namespace

ProfileCurve generate(const GeneratorSpec& spec, std::uint64_t seed) {
    const auto& all = generator_defaults();
    const auto it = all.find(spec.id);
    if (it == all.end()) throw ParameterError("generator.id", "unknown generator '" + spec.id + "'");
    std::map<std::string, double> p = it->second;
    for (const auto& [k, v] : spec.params) {
        if (!p.count(k)) throw ParameterError("generator.params." + k, "not a parameter of " + spec.id);
        if (!std::isfinite(v)) throw ParameterError("generator.params." + k, "must be finite");
        p[k] = v;
    }
    try {
        const std::string& id = spec.id;
        if (id == "circle") {
            if (!(p["radius"] > 0.0)) throw ParameterError("radius", "must be positive");
            return circle(p["radius"], count_param(p, "samples"));
        }
        if (id == "ellipse") return ellipse(p["a"], p["b"], count_param(p, "samples"));
        if (id == "chekanov") return chekanov(count_param(p, "samples"));
        if (id == "figure_eight") return figure_eight(p["scale"], count_param(p, "samples"));
        if (id == "arc") return arc(p["alpha"], p["c"], p["window"], p["spacing"]);
        if (id == "lawlor_sandwich") return lawlor_sandwich(p["c"], p["amplitude"], p["window"], p["spacing"], seed);
        if (id == "star") {
            const double k = p["k"];
            if (k != std::floor(k) || k < 1 || k > 1000) throw ParameterError("k", "must be a positive integer");
            return star(static_cast<int>(k), p["eps"], count_param(p, "samples"));
        }
        if (id == "grim_reaper") {
            const double m = p["y_margin"];
            if (!(m > 0.0 && m < pi / 2)) throw ParameterError("y_margin", "must lie in (0, pi/2)");
            return grim_reaper(count_param(p, "samples"), m).curve;
        }
        if (p["c"] <= 0.0) throw ParameterError("c", "must be positive");
        if (!(p["window"] > 2.0 * std::sqrt(p["c"]))) throw ParameterError("window", "must exceed 2 sqrt(c)");
        if (!(p["spacing"] > 0.0)) throw ParameterError("spacing", "must be positive");
        return lawlor_profile(p["c"], p["window"], p["spacing"]).curve;
    } catch (const ParameterError& e) {
        throw ParameterError("generator.params." + e.field(), std::string(e.what()).substr(e.field().size() + 2));
    }
}

void ScenarioConfig::validate() const {
    if (name.empty()) throw ParameterError("name", "must not be empty");
    if (!generator_defaults().count(generator.id))
        throw ParameterError("generator.id", "unknown generator '" + generator.id + "'");
    try {
        flow.validate();
    } catch (const std::exception& e) {
        throw ParameterError("flow", e.what());
    }
    if (expect.final_profile) {
        const auto& f = *expect.final_profile;
        if (f.kind != "lawlor" && f.kind != "expander" && f.kind != "translated_grim_reaper")
            throw ParameterError("expect.final_profile.kind", "unknown kind '" + f.kind + "'");
        if (!(f.max_distance > 0.0)) throw ParameterError("expect.final_profile.max_distance", "must be positive");
    }
}

namespace {

json analysis_to_json(const AnalysisOptions& a) {
    return {{"sigmas", a.sigmas},
            {"type1_window", a.type1_window},
            {"type2_window", a.type2_window},
            {"blowdown_lambdas", a.blowdown_lambdas},
            {"blowdown_window", a.blowdown_window},
            {"type2_frames", a.type2_frames},
            {"bounded_ratio", a.classify.bounded_ratio},
            {"growth_factor", a.classify.growth_factor},
            {"max_type1_drift", a.classify.max_type1_drift}};
}

AnalysisOptions analysis_from_json(const json& j) {
    AnalysisOptions a;
    for (const auto& [k, v] : j.items()) {
        if (k == "sigmas")
            a.sigmas = v.get<std::vector<double>>();
        else if (k == "type1_window")
            a.type1_window = v.get<double>();
        else if (k == "type2_window")
            a.type2_window = v.get<double>();
        else if (k == "blowdown_lambdas")
            a.blowdown_lambdas = v.get<std::vector<double>>();
        else if (k == "blowdown_window")
            a.blowdown_window = v.get<double>();
        else if (k == "type2_frames")
            a.type2_frames = v.get<std::size_t>();
        else if (k == "bounded_ratio")
            a.classify.bounded_ratio = v.get<double>();
        else if (k == "growth_factor")
            a.classify.growth_factor = v.get<double>();
        else if (k == "max_type1_drift")
            a.classify.max_type1_drift = v.get<double>();
        else
            throw ParameterError("analysis." + k, "unknown field");
    }
    return a;
}

json expectation_to_json(const Expectation& e) {
    json j = json::object();
    if (e.stop_reason) j["stop_reason"] = to_string(*e.stop_reason);
    if (e.verdict) j["verdict"] = to_string(*e.verdict);
    if (e.singular_time) {
        j["singular_time"] = *e.singular_time;
        j["singular_time_rel_tol"] = e.singular_time_rel_tol;
    }
    if (e.w_hat_max_norm) j["w_hat_max_norm"] = *e.w_hat_max_norm;
    if (e.w_hat_min_norm) j["w_hat_min_norm"] = *e.w_hat_min_norm;
    if (e.blowup_model) j["blowup_model"] = *e.blowup_model;
    if (e.type2_model) j["type2_model"] = *e.type2_model;
    if (e.max_final_residual) j["max_final_residual"] = *e.max_final_residual;
    if (e.final_profile) {
        const auto& f = *e.final_profile;
        j["final_profile"] = {{"kind", f.kind},   {"window", f.window}, {"max_distance", f.max_distance},
                              {"alpha", f.alpha}, {"offset", f.offset}, {"band", f.band}};
    }
    return j;
}

Expectation expectation_from_json(const json& j) {
    Expectation e;
    for (const auto& [k, v] : j.items()) {
        if (k == "stop_reason")
            e.stop_reason = stop_reason_from_string(v.get<std::string>());
        else if (k == "verdict")
            e.verdict = type_verdict_from_string(v.get<std::string>());
        else if (k == "singular_time")
            e.singular_time = v.get<double>();
        else if (k == "singular_time_rel_tol")
            e.singular_time_rel_tol = v.get<double>();
        else if (k == "w_hat_max_norm")
            e.w_hat_max_norm = v.get<double>();
        else if (k == "w_hat_min_norm")
            e.w_hat_min_norm = v.get<double>();
        else if (k == "blowup_model")
            e.blowup_model = v.get<std::string>();
        else if (k == "type2_model")
            e.type2_model = v.get<std::string>();
        else if (k == "max_final_residual")
            e.max_final_residual = v.get<double>();
        else if (k == "final_profile") {
            FinalProfileCheck f;
            f.kind = v.at("kind").get<std::string>();
            f.window = v.value("window", f.window);
            f.max_distance = v.value("max_distance", f.max_distance);
            f.alpha = v.value("alpha", f.alpha);
            f.offset = v.value("offset", f.offset);
            f.band = v.value("band", f.band);
            e.final_profile = f;
        } else
            throw ParameterError("expect." + k, "unknown field");
    }
    return e;
}

}  // namespace

json scenario_to_json(const ScenarioConfig& c) {
    return {{"name", c.name},
            {"description", c.description},
            {"generator", {{"id", c.generator.id}, {"params", c.generator.params}}},
            {"flow", flow_config_to_json(c.flow)},
            {"analyze", c.analyze},
            {"plots", c.plots},
            {"analysis", analysis_to_json(c.analysis)},
            {"output_dir", c.output_dir},
            {"seed", c.seed},
            {"expect", expectation_to_json(c.expect)}};
}

ScenarioConfig scenario_from_json(const json& j) {
    if (!j.is_object()) throw ParameterError("config", "must be a JSON object");
    ScenarioConfig c;
    try {
        for (const auto& [k, v] : j.items()) {
            if (k == "name")
                c.name = v.get<std::string>();
            else if (k == "description")
                c.description = v.get<std::string>();
            else if (k == "generator") {
                if (!v.contains("id")) throw ParameterError("generator.id", "missing");
                c.generator.id = v.at("id").get<std::string>();
                if (v.contains("params")) c.generator.params = v.at("params").get<std::map<std::string, double>>();
            } else if (k == "flow")
                c.flow = flow_config_from_json(v);
            else if (k == "analyze")
                c.analyze = v.get<bool>();
            else if (k == "plots")
                c.plots = v.get<bool>();
            else if (k == "analysis")
                c.analysis = analysis_from_json(v);
            else if (k == "output_dir")
                c.output_dir = v.get<std::string>();
            else if (k == "seed")
                c.seed = v.get<std::uint64_t>();
            else if (k == "expect")
                c.expect = expectation_from_json(v);
            else
                throw ParameterError(k, "unknown field");
        }
    } catch (const json::exception& e) {
        throw ParameterError("config", e.what());
    } catch (const FormatError& e) {
        throw ParameterError("flow", e.what());
    } catch (const FlowError& e) {
        throw ParameterError("flow", e.what());
    }
    c.validate();
    return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) { return scenario_from_json(read_json(path)); }

namespace {

ScenarioConfig make(const std::string& name, const std::string& description, GeneratorSpec gen) {
    ScenarioConfig c;
    c.name = name;
    c.description = description;
    c.generator = std::move(gen);
    c.flow.stop.max_time = 10.0;
    return c;
}

std::vector<ScenarioConfig> make_builtins() {
    std::vector<ScenarioConfig> v;
    {
        auto c = make("clifford", "unit circle: self-similar shrinking to the origin at t = 1/4",
                      {"ellipse", {{"a", 1.0}, {"b", 1.0}, {"samples", 512}}});
        c.flow.stop.max_time = 1.0;
        c.flow.stop.sup_velocity_threshold = 1e3;
        c.expect.verdict = TypeVerdict::type_I;
        c.expect.singular_time = 0.25;
        c.expect.w_hat_max_norm = 0.05;
        c.expect.blowup_model = "circle_2";
        v.push_back(c);
    }
    {
        auto c = make("ellipse", "ellipse with semi-axes 3 and 1: neck pinch at the origin, not Clifford-like",
                      {"ellipse", {{"a", 3.0}, {"b", 1.0}, {"samples", 256}}});
        c.flow.stop.min_radius_threshold = 1e-5;
        c.expect.stop_reason = StopReason::min_radius;
        c.expect.verdict = TypeVerdict::type_II;
        c.expect.w_hat_max_norm = 0.05;
        c.expect.blowup_model = "line_pair";
        v.push_back(c);
    }
    {
        auto c = make("chekanov", "Chekanov-type loop not enclosing the origin: collapse to a round point away from it",
                      {"chekanov", {{"samples", 256}}});
        c.flow.stop.sup_velocity_threshold = 1e4;
        c.flow.stop.min_radius_threshold = 1e-5;
        c.expect.w_hat_min_norm = 0.5;
        c.expect.blowup_model = "circle_sqrt2";
        v.push_back(c);
    }
    {
        auto c = make("star", "star-shaped perturbation of the unit circle: Type I collapse to the origin",
                      {"star", {{"k", 4}, {"eps", 0.1}, {"samples", 256}}});
        c.flow.stop.sup_velocity_threshold = 1e3;
        c.expect.verdict = TypeVerdict::type_I;
        c.expect.w_hat_max_norm = 0.05;
        v.push_back(c);
    }
    {
        auto c = make("figure-eight", "figure eight through the origin: collapse at the origin, squashed vertically",
                      {"figure_eight", {{"scale", 3.0}, {"samples", 256}}});
        c.flow.stop.sup_velocity_threshold = 1e5;
        c.expect.verdict = TypeVerdict::type_II;
        c.expect.w_hat_max_norm = 0.05;
        c.expect.blowup_model = "line";
        c.expect.type2_model = "grim_reaper";
        v.push_back(c);
    }
    {
        auto c = make("grim-reaper", "Grim Reaper under curve shortening: translation by t along e1",
                      {"grim_reaper", {{"samples", 2048}, {"y_margin", 0.002}}});
        c.flow.gauge = Gauge::csf_only;
        c.flow.stop.max_time = 1.0;
        c.flow.spacing_policy = SpacingPolicy::uniform;
        c.analyze = false;
        c.expect.stop_reason = StopReason::max_time;
        c.expect.final_profile = FinalProfileCheck{"translated_grim_reaper", 0.0, 1e-3, 0.0, 1.0, pi / 2 - 0.2};
        v.push_back(c);
    }
    {
        auto c = make("lawlor-stability",
                      "right-angle arc between two Lawlor profiles: long-time convergence to a Lawlor neck",
                      {"lawlor_sandwich", {{"c", 1.0 / 3.0}, {"amplitude", 0.5}, {"window", 4.0}, {"spacing", 0.03}}});
        c.seed = 7;
        c.flow.stop.max_time = 400.0;
        c.flow.stop.steady_state_residual = 1e-5;
        c.flow.snapshot_interval = 5.0;
        c.expect.stop_reason = StopReason::steady_state;
        c.expect.max_final_residual = 1e-5;
        c.expect.final_profile = FinalProfileCheck{"lawlor", 3.0, 0.01, 0.0, 0.0, 0.0};
        v.push_back(c);
    }
    {
        auto c = make("obtuse-arc", "arc with opening angle 2.2: finite-time singularity at the origin",
                      {"arc", {{"alpha", 2.2}, {"c", 1.0 / 3.0}, {"window", 6.0}, {"spacing", 0.05}}});
        c.flow.stop.min_radius_threshold = 1e-5;
        c.expect.stop_reason = StopReason::min_radius;
        c.expect.verdict = TypeVerdict::type_II;
        c.expect.w_hat_max_norm = 0.05;
        c.expect.blowup_model = "line_pair";
        v.push_back(c);
    }
    {
        auto c = make("acute-arc", "arc with opening angle pi/4 in the expander gauge: convergence to the self-expander",
                      {"arc", {{"alpha", pi / 4}, {"c", 1.0 / 3.0}, {"window", 6.0}, {"spacing", 0.05}}});
        c.flow.gauge = Gauge::expander_gauge;
        c.flow.stop.max_time = 60.0;
        c.flow.stop.steady_state_residual = 1e-6;
        c.flow.snapshot_interval = 1.0;
        c.expect.final_profile = FinalProfileCheck{"expander", 3.0, 0.02, pi / 4, 0.0, 0.0};
        v.push_back(c);
    }
    return v;
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

}  // namespace

const std::vector<ScenarioConfig>& builtin_scenarios() {
    static const std::vector<ScenarioConfig> all = make_builtins();
    return all;
}

const ScenarioConfig& builtin_scenario(const std::string& name) {
    for (const auto& c : builtin_scenarios())
        if (c.name == name) return c;
    throw ParameterError("scenario", "no built-in scenario named '" + name + "'");
}

double grim_reaper_band_distance(const ProfileCurve& curve, double offset, double band) {
    if (!(band > 0.0 && band < pi / 2)) throw ParameterError("band", "must lie in (0, pi/2)");
    // Dense exact samples of {(offset - log cos y, y) : |y| <= band}.
    const std::size_t n = 4000;
    Polyline exact;
    for (std::size_t i = 0; i <= n; ++i) {
        const double y = -band + 2.0 * band * i / n;
        exact.push_back({offset - std::log(std::cos(y)), y});
    }
    kernels::SegmentSet exact_segs, curve_segs;
    for (std::size_t i = 0; i < n; ++i) {
        exact_segs.start.push_back(exact[i]);
        exact_segs.end.push_back(exact[i + 1]);
    }
    std::vector<Vec2> inside;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (std::abs(curve[i].y) <= band) inside.push_back(curve[i]);
        if (i + 1 < curve.size()) {
            curve_segs.start.push_back(curve[i]);
            curve_segs.end.push_back(curve[i + 1]);
        }
    }
    if (inside.empty()) throw AnalysisError("no curve points in the band");
    return std::max(kernels::directed_segment_distance(inside, exact_segs),
                    kernels::directed_segment_distance(exact, curve_segs));
}

std::vector<CheckResult> evaluate_expectations(const Expectation& e, const Trajectory& traj,
                                               const SingularityReport& report) {
    std::vector<CheckResult> out;
    auto add = [&](std::string name, bool ok, std::string detail) { out.push_back({std::move(name), ok, std::move(detail)}); };
    const auto& term = traj.termination;
    if (e.stop_reason)
        add("stop_reason", term.reason == *e.stop_reason,
            "expected " + to_string(*e.stop_reason) + ", got " + to_string(term.reason));
    if (e.verdict)
        add("verdict", report.verdict == *e.verdict,
            "expected " + to_string(*e.verdict) + ", got " + to_string(report.verdict));
    if (e.singular_time) {
        if (!report.estimate)
            add("singular_time", false, "no singular-time estimate");
        else {
            const double rel = std::abs(report.estimate->T_hat - *e.singular_time) / *e.singular_time;
            add("singular_time", rel <= e.singular_time_rel_tol,
                "T_hat " + fmt(report.estimate->T_hat) + ", relative error " + fmt(rel));
        }
    }
    if (e.w_hat_max_norm || e.w_hat_min_norm) {
        if (!report.estimate)
            add("w_hat", false, "no singular-point estimate");
        else {
            const double r = norm(report.estimate->w_hat);
            if (e.w_hat_max_norm) add("w_hat_near_origin", r <= *e.w_hat_max_norm, "|w_hat| = " + fmt(r));
            if (e.w_hat_min_norm) add("w_hat_away_from_origin", r >= *e.w_hat_min_norm, "|w_hat| = " + fmt(r));
        }
    }
    if (e.blowup_model) {
        const std::string got = report.blowup_match ? report.blowup_match->model : "none";
        add("blowup_model", got == *e.blowup_model,
            "expected " + *e.blowup_model + ", got " + got +
                (report.blowup_match ? " at distance " + fmt(report.blowup_match->distance) : ""));
    }
    if (e.type2_model) {
        const std::string got = report.type2_match ? report.type2_match->model : "none";
        add("type2_model", got == *e.type2_model,
            "expected " + *e.type2_model + ", got " + got +
                (report.type2_match ? " at distance " + fmt(report.type2_match->distance) : ""));
    }
    if (e.max_final_residual)
        add("final_residual", term.residual < *e.max_final_residual, "residual " + fmt(term.residual));
    if (e.final_profile) {
        const auto& f = *e.final_profile;
        const ProfileCurve& last = traj.back().curve;
        try {
            double d = 0.0;
            std::string what;
            if (f.kind == "lawlor") {
                MatchOptions mo;
                mo.window_radius = f.window;
                mo.models = {"lawlor"};
                const auto fit = fit_all_models(last, mo).front();
                d = fit.distance;
                what = "Lawlor c = " + fmt(fit.parameters.at("c"));
            } else if (f.kind == "expander") {
                const auto shot = expander_for_angle(f.alpha);
                const auto a = as_polylines(last), b = as_polylines(shot.profile.curve);
                d = polyline_hausdorff(a, b, Window{{}, f.window});
                what = "expander vertex " + fmt(shot.vertex_distance);
            } else {
                d = grim_reaper_band_distance(last, f.offset, f.band);
                what = "translated Grim Reaper";
            }
            add("final_profile", d < f.max_distance, what + ", distance " + fmt(d));
        } catch (const std::exception& ex) {
            add("final_profile", false, ex.what());
        }
    }
    return out;
}

namespace {

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

json checks_to_json(const std::vector<CheckResult>& checks) {
    json a = json::array();
    for (const auto& c : checks) a.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return a;
}

}  // namespace

ScenarioOutcome run_scenario(const ScenarioConfig& config, const std::filesystem::path& root) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    ScenarioOutcome out;
    const std::filesystem::path rel = config.output_dir.empty() ? config.name : config.output_dir;
    out.directory = rel.is_absolute() ? rel : root / rel;
    std::filesystem::create_directories(out.directory);
    const auto traj_path = out.directory / "trajectory.jsonl";
    const auto report_path = out.directory / "report.json";

    json manifest;
    manifest["version"] = artifact_version;
    manifest["started_at"] = utc_now();
    manifest["scenario"] = scenario_to_json(config);
    manifest["seed"] = config.seed;
    manifest["flow_config"] = flow_config_to_json(config.flow);
    json outputs = json::object();
    double run_seconds = 0.0, analysis_seconds = 0.0;
    try {
        config.validate();
        const ProfileCurve initial = generate(config.generator, config.seed);
        manifest["initial_curve"] = {{"generator", config.generator.id},
                                     {"params", config.generator.params},
                                     {"points", initial.size()},
                                     {"sha256", sha256_hex(curve_to_json(initial).dump())}};
        const auto r0 = clock::now();
        out.trajectory = run(initial, config.flow);
        run_seconds = std::chrono::duration<double>(clock::now() - r0).count();
        manifest["termination"] = termination_to_json(out.trajectory->termination);
        write_trajectory_lines(traj_path, *out.trajectory);
        outputs["trajectory.jsonl"] = sha256_file(traj_path);

        const auto a0 = clock::now();
        out.report = config.analyze ? analyze(*out.trajectory, config.analysis) : SingularityReport{};
        if (!config.analyze) out.report->notes.push_back("analysis disabled");
        analysis_seconds = std::chrono::duration<double>(clock::now() - a0).count();
        write_json(report_path, report_to_json(*out.report));
        outputs["report.json"] = sha256_file(report_path);

        if (config.plots) {
            PlotOptions po;
            po.type1_window = config.analysis.type1_window;
            po.montage.normalize = config.generator.id == "figure_eight";
            for (const auto& p : emit_plots(*out.trajectory, *out.report, out.directory / "plots", po))
                outputs[std::filesystem::relative(p, out.directory).generic_string()] = sha256_file(p);
        }
        out.checks = evaluate_expectations(config.expect, *out.trajectory, *out.report);
        out.exit_status = 0;
        for (const auto& c : out.checks)
            if (!c.passed) out.exit_status = 1;
    } catch (const std::exception& e) {
        out.error = e.what();
        out.exit_status = 2;
        manifest["error"] = out.error;
    }
    out.wall_seconds = std::chrono::duration<double>(clock::now() - t0).count();
    manifest["outputs"] = outputs;
    manifest["checks"] = checks_to_json(out.checks);
    manifest["exit_status"] = out.exit_status;
    manifest["wall_clock"] = {{"run_seconds", run_seconds},
                              {"analysis_seconds", analysis_seconds},
                              {"total_seconds", out.wall_seconds}};
    write_json(manifest_path_for(traj_path), manifest);
    return out;
}

std::vector<std::string> verify_manifest(const std::filesystem::path& manifest) {
    const json m = read_json(manifest);
    std::vector<std::string> changed;
    if (!m.contains("outputs")) return changed;
    const auto dir = manifest.parent_path();
    for (const auto& [name, digest] : m.at("outputs").items()) {
        const auto p = dir / name;
        if (!std::filesystem::exists(p) || sha256_file(p) != digest.get<std::string>()) changed.push_back(name);
    }
    return changed;
}

}  // namespace lmcf
