#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/math/special_functions/ellint_2.hpp>

#include "lmcf/generators.hpp"
#include "lmcf/geometry.hpp"

using namespace lmcf;

namespace {

ProfileCurve polyline_curve(std::vector<Vec2> pts, Topology t = Topology::open) { return ProfileCurve(std::move(pts), t); }

// Parabola y = a x^2 through the origin, open, symmetric node set avoiding x = 0
// unless `through` is set.
ProfileCurve parabola(double a, double h, bool through) {
    std::vector<Vec2> pts;
    const double start = through ? -20 * h : -19.5 * h;
    for (int i = 0; i <= 40 - (through ? 0 : 1); ++i) {
        const double x = start + i * h;
        pts.push_back({x, a * x * x});
    }
    return polyline_curve(pts);
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("profile curve validation") {
    CHECK_THROWS_AS(polyline_curve({{0, 0}, {1, 0}, {2, 0}}), GeometryError);
    std::vector<Vec2> dup{{0, 0}, {1, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}, {6, 0}};
    CHECK_THROWS_AS(polyline_curve(dup), GeometryError);
    auto c = circle(1.0, 16).points();
    c.push_back(c.front());
    CHECK_THROWS_AS(ProfileCurve(c, Topology::closed), GeometryError);
    // Open curve whose ends are far from the declared rays.
    std::vector<Vec2> seg;
    for (int i = 0; i < 10; ++i) seg.push_back({1.0 + i, 1.0});
    CHECK_THROWS_AS(ProfileCurve(seg, Topology::open, AsymptoticData{pi / 2, pi / 2}), GeometryError);
    CHECK_THROWS_AS(ProfileCurve(seg, Topology::open, AsymptoticData{pi, pi / 2}), GeometryError);
}

TEST_CASE("orientation and negation") {
    const auto c = circle(1.0, 64);
    CHECK(c.orientation() == Orientation::positive);
    CHECK(c.reversed().orientation() == Orientation::negative);
    const auto n = c.negated();
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(n[i] == -c[i]);
}

TEST_CASE("resample irregular circle samples to uniform spacing") {
    std::vector<Vec2> pts;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> jitter(-0.15, 0.15);
    for (int i = 0; i < 17; ++i) {
        const double u = 2 * pi * (i + jitter(rng)) / 17;
        pts.push_back({std::cos(u), std::sin(u)});
    }
    const auto r = resample(ProfileCurve(pts, Topology::closed), 2 * pi / 64);
    CHECK(r.size() == 64);
    for (const Vec2 p : r.points()) CHECK(std::abs(norm(p) - 1.0) < 1e-3);
    const double h = length(r) / 64;
    CHECK(r.max_spacing() < 1.1 * h);
    CHECK(r.min_spacing() > 0.9 * h);
}

TEST_CASE("resample straight segment") {
    std::vector<Vec2> pts;
    for (int i = 0; i < 8; ++i) pts.push_back({i / 7.0, 0.0});
    const auto r = resample(polyline_curve(pts), 0.1);
    REQUIRE(r.size() == 11);
    for (std::size_t i = 0; i < r.size(); ++i) {
        CHECK(r[i].x == doctest::Approx(0.1 * i).epsilon(1e-12));
        CHECK(std::abs(r[i].y) < 1e-15);
    }
    CHECK_THROWS_AS(resample(polyline_curve(pts), 0.2), GeometryError);
}

TEST_CASE("resample ellipse preserves the perimeter") {
    // Oracle: complete elliptic integral of the second kind.
    const double k = std::sqrt(1.0 - 1.0 / 9.0);
    const double perimeter = 4.0 * 3.0 * boost::math::ellint_2(k);
    const auto e = ellipse(3, 1, 256);
    const auto r = resample(e, length(e) / 512);
    CHECK(r.size() == 512);
    CHECK(std::abs(length(r) - perimeter) / perimeter < 1e-4);
}

TEST_CASE("graded resampling keeps the spacing contract") {
    const auto e = ellipse(3, 1, 200);
    std::vector<double> spacing(e.size());
    const auto k = curvature(e);
    for (std::size_t i = 0; i < e.size(); ++i) spacing[i] = std::min(0.1, 0.05 / std::abs(k.signed_value[i]));
    const auto r = resample_graded(e, spacing);
    CHECK(r.size() % 2 == 0);
    const auto [lo, hi] = std::minmax_element(spacing.begin(), spacing.end());
    CHECK(r.spacing_ratio() <= 1.2 * (*hi / *lo));
    CHECK(r.min_spacing() >= 0.8 * *lo);
    CHECK(r.max_spacing() <= 1.2 * *hi);
    // The sample curve itself is a 200-gon, so its length is the reference.
    CHECK(std::abs(length(r) - length(e)) < 2e-3);
}

TEST_CASE("curvature of circles, lines and the ellipse vertex") {
    const auto c = circle(2.0, 256);
    const auto k = curvature(c);
    for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(std::abs(k.signed_value[i] - 0.5) < 1e-3);
        CHECK(dot(k.vector[i], c[i]) < 0.0);  // points inwards
    }
    std::vector<Vec2> line;
    for (int i = 0; i < 12; ++i) line.push_back({0.3 * i - 1.0, 0.2 * i});
    const auto kl = curvature(polyline_curve(line));
    for (std::size_t i = 1; i + 1 < line.size(); ++i) CHECK(std::abs(kl.signed_value[i]) < 1e-12);
    CHECK(kl.one_sided.front());
    CHECK(kl.one_sided.back());

    // Parametric curvature ab / (a^2 sin^2 + b^2 cos^2)^{3/2} at t = 0 is a / b^2 = 3.
    const auto e = ellipse(3, 1, 1024);
    const auto ke = curvature(e);
    CHECK(std::abs(ke.signed_value[0] - 3.0) < 1e-2);
}

TEST_CASE("curvature converges at second order on a graded ellipse") {
    // Nodes uniform in the ellipse parameter are graded in arclength, so the
    // three-point stencil sees unequal neighbours.
    const double a = 3.0, b = 1.0;
    double prev = 0.0;
    for (int n : {64, 128, 256}) {
        std::vector<Vec2> pts;
        std::vector<double> exact;
        for (int i = 0; i < n; ++i) {
            const double u = 2 * pi * i / n, s = std::sin(u), c = std::cos(u);
            pts.push_back({a * c, b * s});
            exact.push_back(a * b / std::pow(a * a * s * s + b * b * c * c, 1.5));
        }
        const auto k = curvature(ProfileCurve(pts, Topology::closed));
        double err = 0.0;
        for (int i = 0; i < n; ++i) err = std::max(err, std::abs(k.signed_value[i] - exact[i]));
        if (prev > 0.0) CHECK(prev / err > 3.0);
        prev = err;
    }
}

TEST_CASE("radial term") {
    // Vertical tangent at (2, 0): a circle of radius 2 about the origin.
    const auto c = circle(2.0, 256);
    const auto r = radial_term(c, 1e-6);
    CHECK(std::abs(r[0].x - 0.5) < 1e-12);
    CHECK(std::abs(r[0].y) < 1e-12);
    std::vector<Vec2> line;
    for (int i = 0; i < 12; ++i) line.push_back({(i - 5.5) * 0.3, (i - 5.5) * 0.6});
    for (const Vec2 v : radial_term(polyline_curve(line), 1e-6)) CHECK(norm(v) < 1e-12);
}

TEST_CASE("radial term is continuous across the origin regularization") {
    // y = x^2 has curvature 2 at the origin, so the limit is kappa / 2 = 1.
    const double a = 1.0;
    const auto through = parabola(a, 1e-3, true);
    const auto r = radial_term(through, 1e-6);
    const Vec2 at0 = r[20];
    CHECK(std::abs(at0.y - 1.0) < 1e-5);
    double prev_err = 1.0;
    for (double h : {1e-2, 1e-3, 1e-4}) {
        // Nodes at x = +-h/2 sit at |gamma| ~ h/2, outside the regularization.
        const auto off = parabola(a, h, false);
        const auto ro = radial_term(off, 1e-9 * h);
        const double err = std::abs(norm(ro[19]) - 1.0);
        CHECK(err < 2.0 * h);
        CHECK(err < prev_err);
        prev_err = err;
    }
}

TEST_CASE("flow velocity on the circle, a Lawlor profile and a line") {
    const double r0 = 1.5;
    const auto c = circle(r0, 512);
    const auto v = flow_velocity(c, 1e-8);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Vec2 er = c[i] / r0;
        CHECK(std::abs(dot(v[i], er) + 2.0 / r0) < 1e-4);
    }
    // y = sqrt(x^2 + 1/3) sampled symmetrically about the vertex.
    std::vector<Vec2> lw;
    for (int i = -200; i <= 200; ++i) {
        const double x = i * 5e-4;
        lw.push_back({x, std::sqrt(x * x + 1.0 / 3.0)});
    }
    const auto vl = flow_velocity(polyline_curve(lw), 1e-8);
    CHECK(norm(vl[200]) < 1e-6);
    std::vector<Vec2> line;
    for (int i = 0; i < 12; ++i) line.push_back({(i - 5.5) * 0.3, -(i - 5.5) * 0.1});
    const auto vline = flow_velocity(polyline_curve(line), 1e-8);
    for (std::size_t i = 1; i + 1 < line.size(); ++i) CHECK(norm(vline[i]) < 1e-12);
}

TEST_CASE("flow velocity is rotation equivariant and odd") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(0.0, 2 * pi);
    for (const auto& c : {ellipse(3, 1, 128), star(5, 0.3, 200), chekanov(128)}) {
        const auto v = flow_velocity(c, 1e-8);
        double scale = 0.0;
        for (const Vec2 w : v) scale = std::max(scale, norm(w));
        for (int trial = 0; trial < 4; ++trial) {
            const double beta = angle(rng);
            const auto vr = flow_velocity(c.rotated(beta), 1e-8);
            double err = 0.0;
            for (std::size_t i = 0; i < c.size(); ++i) err = std::max(err, norm(vr[i] - rotate(v[i], beta)));
            CHECK(err < 1e-12 * scale);
        }
        const auto vn = flow_velocity(c.negated(), 1e-8);
        double err = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) err = std::max(err, norm(vn[i] + v[i]));
        CHECK(err < 1e-12 * scale);
    }
}

TEST_CASE("winding and turning numbers") {
    auto wt = winding_and_turning(circle(1.0, 128), 1e-6);
    REQUIRE(wt.winding);
    CHECK(*wt.winding == 1);
    CHECK(wt.turning == 1);
    const auto ch = winding_and_turning(chekanov(256), 1e-6);
    REQUIRE(ch.winding);
    CHECK(*ch.winding == 0);
    const auto eight = figure_eight(3.0, 256);
    const auto we = winding_and_turning(eight, default_origin_epsilon(eight));
    CHECK(we.turning == 0);
    CHECK_FALSE(we.winding.has_value());
    // Invariance under rotation and scaling.
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(0.0, 2 * pi), scale(0.1, 10.0);
    for (const auto& c : {ellipse(3, 1, 128), star(3, 0.4, 256), chekanov(128)}) {
        const auto ref = winding_and_turning(c, 1e-9);
        for (int i = 0; i < 3; ++i) {
            const auto t = c.rotated(angle(rng)).scaled(scale(rng));
            const auto w = winding_and_turning(t, 1e-9);
            CHECK(w.winding == ref.winding);
            CHECK(w.turning == ref.turning);
        }
    }
}

TEST_CASE("lagrangian angle") {
    const double th = 0.4;
    std::vector<Vec2> line;
    for (int i = 0; i < 22; ++i) line.push_back((0.05 + 0.1 * i) * Vec2{std::cos(th), std::sin(th)});
    const auto a = lagrangian_angle(polyline_curve(line), 1e-9);
    for (double v : a) {
        const double d = std::remainder(v - 2 * th, 2 * pi);
        CHECK(std::abs(d) < 1e-12);
    }
    std::vector<Vec2> lw;
    for (int i = -400; i <= 400; ++i) {
        const double x = i * 0.01;
        lw.push_back({x, std::sqrt(x * x + 1.0 / 3.0)});
    }
    CHECK(angle_oscillation(lagrangian_angle(polyline_curve(lw), 1e-9)) < 1e-4);
    const auto c = circle(1.0, 256);
    const auto ca = lagrangian_angle(c, 1e-9);
    // theta = 2 phi + pi/2 at node i, phi = 2 pi i / n.
    for (std::size_t i = 0; i < c.size(); i += 17) {
        const double d = std::remainder(ca[i] - (4 * pi * i / 256.0 + pi / 2), 2 * pi);
        CHECK(std::abs(d) < 1e-3);
    }
    CHECK(angle_oscillation(ca) > 2 * pi - 0.1);
}

TEST_CASE("hausdorff distance examples") {
    const auto c1 = circle(1.0, 256), c2 = circle(2.0, 256);
    CHECK(hausdorff_distance(c1.points(), c1.points()) == 0.0);
    CHECK(hausdorff_distance(c1.points(), c2.points()) == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<Vec2> a, b;
    for (int i = 0; i <= 100; ++i) {
        a.push_back({i / 100.0, 0.0});
        b.push_back({i / 100.0, 0.3});
    }
    CHECK(hausdorff_distance(a, b) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK_THROWS_AS(hausdorff_distance(a, b, Window{{5, 5}, 1.0}), GeometryError);
}

TEST_CASE("hausdorff distance is a metric on random triples") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> count(1, 40);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Vec2> s[3];
        for (auto& set : s) {
            const int n = count(rng);
            for (int i = 0; i < n; ++i) set.push_back({u(rng), u(rng)});
        }
        const double ab = hausdorff_distance(s[0], s[1]), ba = hausdorff_distance(s[1], s[0]);
        const double bc = hausdorff_distance(s[1], s[2]), ac = hausdorff_distance(s[0], s[2]);
        CHECK(ab == ba);
        CHECK(ac <= ab + bc + 1e-12);
        CHECK(ab >= 0.0);
        CHECK(hausdorff_distance(s[0], s[0]) == 0.0);
    }
}

TEST_CASE("polyline hausdorff drops a mirror that coincides with the curve") {
    const auto eight = figure_eight(3.0, 256);
    CHECK(as_polylines(eight, true).size() == 1);
    CHECK(as_polylines(chekanov(64), true).size() == 2);
}

TEST_CASE("diagnostics") {
    const auto c = circle(2.0, 512);
    const auto d = diagnostics(c, 1e-8);
    CHECK(d.length == doctest::Approx(4 * pi).epsilon(1e-4));
    CHECK(d.min_radius == doctest::Approx(2.0));
    CHECK(d.sup_curvature == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(d.sup_velocity == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(d.winding_number == 1);
    CHECK(d.turning_number == 1);
}

}  // TEST_SUITE
