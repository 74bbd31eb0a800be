#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>

#include "lmcf/generators.hpp"
#include "lmcf/kernels.hpp"

using namespace lmcf;
using namespace lmcf::kernels;

namespace {

std::vector<Vec2> random_points(std::mt19937_64& rng, std::size_t n, double spread) {
    std::normal_distribution<double> g(0.0, spread);
    std::vector<Vec2> v(n);
    for (auto& p : v) p = {g(rng), g(rng)};
    return v;
}

// Brute-force oracle, no early exit.
double directed_brute(std::span<const Vec2> a, std::span<const Vec2> b) {
    double worst = 0.0;
    for (const Vec2 p : a) {
        double best = std::numeric_limits<double>::infinity();
        for (const Vec2 q : b) best = std::min(best, distance(p, q));
        worst = std::max(worst, best);
    }
    return worst;
}

bool same_bits(double x, double y) { return std::memcmp(&x, &y, sizeof x) == 0; }
bool same_bits(Vec2 x, Vec2 y) { return same_bits(x.x, y.x) && same_bits(x.y, y.y); }

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("field kernels agree bitwise between serial and OpenMP") {
    std::mt19937_64 rng(23);
    for (std::size_t n : {8u, 100u, 5000u, 20001u}) {
        for (bool closed : {true, false}) {
            // A noisy circle that passes near the origin exercises regularization.
            std::vector<Vec2> pts(n);
            std::uniform_real_distribution<double> jitter(-1e-3, 1e-3);
            for (std::size_t i = 0; i < n; ++i) {
                const double u = 2 * pi * i / n;
                pts[i] = Vec2{1.0 + std::cos(u), std::sin(u)} + Vec2{jitter(rng), jitter(rng)};
            }
            FieldBuffers s, p;
            compute_fields_serial(pts, closed, 1e-2, s);
            compute_fields_parallel(pts, closed, 1e-2, p);
            REQUIRE(s.size() == n);
            REQUIRE(p.size() == n);
            bool equal = true;
            for (std::size_t i = 0; i < n; ++i) {
                equal = equal && same_bits(s.kappa[i], p.kappa[i]) && same_bits(s.radial[i], p.radial[i]) &&
                        same_bits(s.tangent[i], p.tangent[i]) && same_bits(s.normal[i], p.normal[i]) &&
                        s.regularized[i] == p.regularized[i] && s.one_sided[i] == p.one_sided[i];
            }
            CHECK(equal);
            CHECK(s.one_sided.front() == !closed);
        }
    }
}

TEST_CASE("node geometry regularizes near the origin") {
    const auto g = node_geometry({-0.01, 1e-4}, {0.0, 0.0}, {0.01, 1e-4}, 1e-3);
    CHECK(g.regularized);
    CHECK(g.radial == doctest::Approx(0.5 * g.kappa));
    CHECK(g.kappa == doctest::Approx(2.0).epsilon(1e-3));
    const auto h = node_geometry({1.0, -0.01}, {1.0, 0.0}, {1.0, 0.01}, 1e-3);
    CHECK_FALSE(h.regularized);
    CHECK(h.kappa == 0.0);
    CHECK(h.radial == doctest::Approx(-1.0));  // left normal of an upward tangent is -e1
}

TEST_CASE("directed hausdorff matches brute force") {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<std::size_t> count(1, 300);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_points(rng, count(rng), 1.0);
        const auto b = random_points(rng, count(rng), 2.0);
        const double oracle = directed_brute(a, b);
        CHECK(directed_hausdorff_serial(a, b) == oracle);
        CHECK(directed_hausdorff_parallel(a, b) == oracle);
    }
}

TEST_CASE("early exit keeps the nearest-point hint correct on ordered curves") {
    // Consecutive query points move along the target, so the scan starts from
    // the previous nearest index; a stale hint must not cut the search short.
    const auto c = circle(1.0, 2000).points();
    std::vector<Vec2> q;
    for (int i = 0; i < 500; ++i) {
        const double u = 2 * pi * ((i * 37) % 500) / 500.0;
        q.push_back(1.3 * Vec2{std::cos(u), std::sin(u)});
    }
    q.push_back({0.0, 0.0});
    CHECK(directed_hausdorff_serial(q, c) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(directed_hausdorff_serial(q, c) == directed_brute(q, c));
}

TEST_CASE("segment distances") {
    CHECK(point_segment_distance({0.5, 1.0}, {0, 0}, {1, 0}) == 1.0);
    CHECK(point_segment_distance({2.0, 0.0}, {0, 0}, {1, 0}) == 1.0);
    CHECK(point_segment_distance({-3.0, 4.0}, {0, 0}, {1, 0}) == 5.0);
    CHECK(point_segment_distance({1.0, 1.0}, {0, 0}, {0, 0}) == doctest::Approx(std::sqrt(2.0)));

    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const auto pts = random_points(rng, 200, 1.5);
        const auto raw = random_points(rng, 2 * 150, 1.0);
        SegmentSet segs;
        for (std::size_t i = 0; i < raw.size(); i += 2) {
            segs.start.push_back(raw[i]);
            segs.end.push_back(raw[i] + 0.1 * raw[i + 1]);
        }
        double oracle = 0.0;
        for (const Vec2 p : pts) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < segs.size(); ++j)
                best = std::min(best, point_segment_distance(p, segs.start[j], segs.end[j]));
            oracle = std::max(oracle, best);
        }
        CHECK(directed_segment_distance_serial(pts, segs) == oracle);
        CHECK(directed_segment_distance_parallel(pts, segs) == oracle);
        CHECK(directed_segment_distance(pts, segs) == oracle);
    }
}

TEST_CASE("segment grid is exact") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> cell(0.01, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        SegmentSet segs;
        const auto c = star(5, 0.3, 400).points();
        for (std::size_t i = 0; i < c.size(); ++i) {
            segs.start.push_back(c[i]);
            segs.end.push_back(c[(i + 1) % c.size()]);
        }
        const SegmentSet copy = segs;
        const SegmentGrid grid(std::move(segs), cell(rng));
        // Queries both inside and far outside the bucketed box.
        for (const Vec2 p : random_points(rng, 300, trial % 2 ? 0.7 : 5.0)) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < copy.size(); ++j)
                best = std::min(best, point_segment_distance(p, copy.start[j], copy.end[j]));
            CHECK(grid.nearest(p) == best);
        }
    }
}

TEST_CASE("segment grid with tiny requested cells and empty sets") {
    SegmentSet segs;
    segs.start = {{0, 0}, {10, 10}};
    segs.end = {{1, 0}, {10, 11}};
    const SegmentGrid fine(segs, 1e-6);
    CHECK(fine.nearest({0.5, 2.0}) == 2.0);
    CHECK(fine.nearest({10.0, 12.0}) == 1.0);
    CHECK(std::isinf(SegmentGrid(SegmentSet{}, 1.0).nearest({0, 0})));
}

}  // TEST_SUITE
