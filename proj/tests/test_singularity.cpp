#include <doctest.h>

#include <cmath>

#include "lmcf/generators.hpp"
#include "lmcf/singularity.hpp"
#include "lmcf/solitons.hpp"

using namespace lmcf;

namespace {

// Shrinking circles about `center` with radius rho(tau), tau = T - t, sampled
// at geometrically spaced tau down to tau_last.
template <class Radius>
Trajectory circle_trajectory(double T, double tau_last, Radius rho, Vec2 center = {}) {
    Trajectory tr;
    for (double tau = T; tau >= tau_last; tau /= std::pow(2.0, 0.125)) {
        const auto c = circle(rho(tau), 128, center);
        tr.snapshots.push_back({T - tau, c, diagnostics(c, 1e-12)});
    }
    tr.termination.reason = StopReason::sup_velocity;
    tr.termination.time = tr.back().time;
    return tr;
}

std::vector<Vec2> hyperbola_branch(double c, double half_width, double h) {
    std::vector<Vec2> pts;
    for (double x = -half_width; x <= half_width + 1e-12; x += h) pts.push_back({x, std::sqrt(x * x + c)});
    return pts;
}

}  // namespace

TEST_SUITE("singularity") {

TEST_CASE("curvature proxy of a circle") {
    const auto p = curvature_proxy(circle(0.5, 64));
    CHECK(p.K == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(norm(p.location) == doctest::Approx(0.5));
    // Away from the origin the radial term can dominate.
    const auto q = curvature_proxy(circle(0.1, 64, {0.5, 0.0}));
    CHECK(q.K == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("shrinking circles: time, point and Type I") {
    const auto tr = circle_trajectory(0.25, 1e-7, [](double tau) { return 2.0 * std::sqrt(tau); });
    const auto est = estimate_singularity(tr);
    CHECK(est.T_hat == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(norm(est.w_hat) < 1e-9);
    CHECK_FALSE(est.disagreement);
    const auto cl = classify_type(tr, est.T_hat);
    CHECK(cl.verdict == TypeVerdict::type_I);
    // K^2 (T - t) = 1 / 4 for these circles.
    for (const auto& m : cl.monitor) CHECK(m.value == doctest::Approx(0.25).epsilon(1e-3));
    CHECK(std::abs(cl.drift_exponent) < 0.01);
}

TEST_CASE("rescaled shrinking circles give the radius-2 circle") {
    const auto tr = circle_trajectory(0.25, 1e-7, [](double tau) { return 2.0 * std::sqrt(tau); });
    for (double sigma : {10.0, 80.0, 640.0}) {
        const auto r = type1_rescale_one(tr, {}, 0.25, sigma);
        CHECK(r.sigma / sigma > 0.9);
        CHECK(r.sigma / sigma < 1.1);
        for (const Vec2 p : r.curve.points()) CHECK(norm(p) == doctest::Approx(2.0).epsilon(1e-9));
        MatchOptions mo;
        mo.models = shrinker_models();
        const auto fit = match_model(r.curve, mo);
        CHECK(fit.model == "circle_2");
        CHECK(fit.distance < 1e-3);
    }
    CHECK_THROWS_AS(type1_rescale_one(tr, {}, 0.25, 1e6), AnalysisError);
}

TEST_CASE("shrinking circles away from the origin") {
    const Vec2 w{1.0, 0.5};
    const auto tr = circle_trajectory(1.0, 1e-7, [](double tau) { return std::sqrt(2.0 * tau); }, w);
    const auto est = estimate_singularity(tr);
    CHECK(est.T_hat == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(distance(est.w_hat, w) < 1e-6);
    const auto r = type1_rescale_one(tr, est.w_hat, est.T_hat, 40.0);
    MatchOptions mo;
    mo.origin = r.origin;
    mo.models = shrinker_models();
    mo.with_mirror = false;
    const auto fit = match_model(r.curve, mo);
    CHECK(fit.model == "circle_sqrt2");
    CHECK(fit.distance < 1e-3);
}

TEST_CASE("faster than parabolic collapse is Type II") {
    // rho = tau^(9/10): K^2 tau grows like tau^(-4/5).
    const auto tr = circle_trajectory(0.5, 1e-8, [](double tau) { return std::pow(tau, 0.9); });
    const auto est = estimate_singularity(tr);
    CHECK(est.T_hat == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(est.power_exponent == doctest::Approx(0.9).epsilon(0.02));
    const auto cl = classify_type(tr, est.T_hat);
    CHECK(cl.verdict == TypeVerdict::type_II);
    CHECK(cl.final_growth > 5.0);
    const auto seq = type2_rescale(tr, cl.verdict, 4);
    REQUIRE(seq.curves.size() == 4);
    for (const auto& rc : seq.curves) {
        // Normalized to unit curvature at the recentred argmax.
        CHECK(curvature_proxy(rc.curve).K == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(norm(rc.origin) > 0.0);
    }
    CHECK_THROWS_AS(type2_rescale(tr, TypeVerdict::type_I), AnalysisError);
}

TEST_CASE("verdict strings") {
    for (auto v : {TypeVerdict::type_I, TypeVerdict::type_II, TypeVerdict::none, TypeVerdict::inconclusive})
        CHECK(type_verdict_from_string(to_string(v)) == v);
}

TEST_CASE("runs that stop on time get no verdict") {
    auto tr = circle_trajectory(0.25, 1e-3, [](double tau) { return 2.0 * std::sqrt(tau); });
    tr.termination.reason = StopReason::max_time;
    const auto rep = analyze(tr);
    CHECK(rep.verdict == TypeVerdict::none);
    CHECK_FALSE(rep.estimate);
}

TEST_CASE("line pair and its rotations") {
    // A thin hyperbola neck looks like the perpendicular pair at scale 3.
    const ProfileCurve neck(hyperbola_branch(1e-4, 5.0, 0.04), Topology::open);
    MatchOptions mo;
    mo.models = shrinker_models();
    const auto fit = match_model(neck, mo);
    CHECK(fit.model == "line_pair");
    CHECK(fit.distance < 0.02);
    for (double beta : {1.0, 2.5}) {
        const auto turned = match_model(neck.rotated(beta), mo);
        CHECK(turned.model == "line_pair");
        CHECK(turned.distance == doctest::Approx(fit.distance).epsilon(0.05));
        const double dtheta = std::remainder(turned.parameters.at("theta") - fit.parameters.at("theta") - beta, pi / 2);
        CHECK(std::abs(dtheta) < 0.01);
    }
    CHECK(line_pair_distance(neck, fit.parameters.at("theta"), mo) == doctest::Approx(fit.distance).epsilon(1e-6));
}

TEST_CASE("ancient models: grim reaper and lawlor") {
    MatchOptions mo;
    mo.models = ancient_models();
    mo.window_radius = 4.0;
    mo.with_mirror = false;
    // Unit tip curvature sits at the origin, as after a Type II normalization.
    // The sample reaches x = 4.6, past the window.
    const auto gr = grim_reaper(256, 0.01).curve.rotated(0.7);
    const auto g = match_model(gr, mo);
    CHECK(g.model == "grim_reaper");
    CHECK(g.distance < 0.02);

    const ProfileCurve lw(hyperbola_branch(0.5, 6.0, 0.04), Topology::open);
    MatchOptions lo = mo;
    lo.with_mirror = true;
    const auto l = match_model(lw, lo);
    CHECK(l.model == "lawlor");
    CHECK(l.parameters.at("c") == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("all fits are sorted and unmatched curves are flagged") {
    const auto fits = fit_all_models(circle(2.0, 256));
    REQUIRE(fits.size() >= 2);
    for (std::size_t i = 1; i < fits.size(); ++i) CHECK(fits[i - 1].distance <= fits[i].distance);
    CHECK(fits.front().model == "circle_2");
    // A long thin ellipse through nothing in the catalog.
    MatchOptions mo;
    mo.models = {"circle_2"};
    mo.unmatched_above = 0.1;
    CHECK(match_model(ellipse(2.9, 0.3, 256).translated({0.0, 2.0}), mo).model == "unmatched");
}

TEST_CASE("line multiplicity") {
    std::vector<Polyline> lines(2);
    for (int i = -100; i <= 100; ++i) {
        lines[0].push_back({0.03 * i, 0.01});
        lines[1].push_back({0.03 * i, -0.01});
    }
    CHECK(line_multiplicity(lines, {}, 0.0, 2.5, 0.05) == 2);
    CHECK(line_multiplicity({lines[0]}, {}, 0.0, 2.5, 0.05) == 1);
}

TEST_CASE("blow down scales towards the origin") {
    RescaledCurve rc;
    rc.curve = ProfileCurve(hyperbola_branch(1.0, 40.0, 0.05), Topology::open);
    rc.origin = {0.0, 0.0};
    const std::vector<RescaledCurve> one{rc};
    const std::vector<double> lambdas{4.0, 16.0};
    const auto downs = blow_down(one, lambdas, 1.0);
    REQUIRE(downs.size() == 2);
    // Vertex at distance 1 moves to 1/lambda.
    CHECK(downs[1].curve.points()[800].y == doctest::Approx(1.0 / 16.0).epsilon(1e-9));
    const std::vector<double> huge{1000.0};
    CHECK_THROWS_AS(blow_down(one, huge, 1.0), AnalysisError);
}

}  // TEST_SUITE
