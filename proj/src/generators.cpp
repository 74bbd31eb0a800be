#include "lmcf/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lmcf {

std::vector<Vec2> sample_uniform_arclength(const std::function<Vec2(double)>& curve, double u0, double u1,
                                           std::size_t count, bool closed) {
    constexpr std::size_t dense = 1 << 16;
    std::vector<double> us(dense + 1), ss(dense + 1);
    Vec2 prev = curve(u0);
    us[0] = u0;
    ss[0] = 0.0;
    for (std::size_t j = 1; j <= dense; ++j) {
        us[j] = u0 + (u1 - u0) * static_cast<double>(j) / dense;
        const Vec2 q = curve(us[j]);
        ss[j] = ss[j - 1] + distance(prev, q);
        prev = q;
    }
    const double total = ss.back();
    const std::size_t intervals = closed ? count : count - 1;
    std::vector<Vec2> out;
    out.reserve(count);
    std::size_t cursor = 1;
    for (std::size_t i = 0; i < count; ++i) {
        if (i == 0) {
            out.push_back(curve(u0));
            continue;
        }
        if (!closed && i + 1 == count) {
            out.push_back(curve(u1));
            continue;
        }
        const double target = total * static_cast<double>(i) / static_cast<double>(intervals);
        while (cursor < dense && ss[cursor] < target) ++cursor;
        const double w = (target - ss[cursor - 1]) / (ss[cursor] - ss[cursor - 1]);
        out.push_back(curve(us[cursor - 1] + w * (us[cursor] - us[cursor - 1])));
    }
    return out;
}

namespace {

void require_samples(std::size_t samples) {
    if (samples < ProfileCurve::min_points) throw ParameterError("samples", "at least 8 samples required");
}

}  // namespace

ProfileCurve ellipse(double a, double b, std::size_t samples) {
    if (!(a > 0.0)) throw ParameterError("a", "semi-axis must be positive");
    if (!(b > 0.0)) throw ParameterError("b", "semi-axis must be positive");
    require_samples(samples);
    auto f = [=](double u) { return Vec2{a * std::cos(u), b * std::sin(u)}; };
    return ProfileCurve(sample_uniform_arclength(f, 0.0, 2.0 * pi, samples, true), Topology::closed);
}

ProfileCurve chekanov(std::size_t samples) {
    require_samples(samples);
    auto f = [](double u) { return Vec2{std::exp(std::cos(u)), std::sin(u) * std::exp(-std::cos(u))}; };
    return ProfileCurve(sample_uniform_arclength(f, 0.0, 2.0 * pi, samples, true), Topology::closed);
}

ProfileCurve figure_eight(double scale, std::size_t samples) {
    if (!(scale > 0.0)) throw ParameterError("scale", "must be positive");
    require_samples(samples);
    if (samples % 4 != 0) throw ParameterError("samples", "figure-eight needs a multiple of 4 samples");
    auto f = [=](double u) {
        const double s = std::sin(u), c = std::cos(u);
        return Vec2{-scale * s / (1.0 + c * c), scale * s * c / (1.0 + c * c)};
    };
    // Sample each quarter separately so the symmetric nodes land exactly on
    // the reflected positions of one another.
    const std::size_t q = samples / 4;
    auto quarter = sample_uniform_arclength(f, 0.0, pi / 2, q + 1, false);
    std::vector<Vec2> pts(samples);
    for (std::size_t i = 0; i <= q; ++i) {
        const Vec2 p = quarter[i];
        pts[i] = p;                                        // u in [0, pi/2]
        pts[2 * q - i] = {p.x, -p.y};                      // u in [pi/2, pi]
        pts[(2 * q + i) % samples] = {-p.x, p.y};          // u in [pi, 3pi/2]
        pts[(4 * q - i) % samples] = {-p.x, -p.y};         // u in [3pi/2, 2pi]
    }
    pts[0] = {};
    pts[2 * q] = {};
    return ProfileCurve(std::move(pts), Topology::closed);
}

ProfileCurve arc(double alpha, double c, double window, double spacing, double bisector) {
    if (!(alpha > 0.0 && alpha < pi)) throw ParameterError("alpha", "must lie in (0, pi)");
    if (!(c > 0.0)) throw ParameterError("c", "must be positive");
    if (!(window > 2.0 * std::sqrt(c))) throw ParameterError("window", "must exceed 2 sqrt(c)");
    if (!(spacing > 0.0)) throw ParameterError("spacing", "must be positive");
    const double cot = 1.0 / std::tan(0.5 * alpha);
    const double turn = bisector - pi / 2;
    auto g = [=](double x) { return Vec2{x, std::sqrt(x * x * cot * cot + c)}; };
    double len = 0.0;
    Vec2 prev = g(-window);
    for (int j = 1; j <= 4096; ++j) {
        const Vec2 q = g(-window + 2.0 * window * j / 4096.0);
        len += distance(prev, q);
        prev = q;
    }
    const auto count = static_cast<std::size_t>(std::max(9.0, std::round(len / spacing) + 1));
    // Right half sampled once and mirrored, so the branch is exactly symmetric.
    const std::size_t half = count / 2;
    const auto right = sample_uniform_arclength(g, 0.0, window, half + 1, false);
    std::vector<Vec2> pts;
    pts.reserve(2 * half + 1);
    for (std::size_t i = half; i >= 1; --i) pts.push_back({-right[i].x, right[i].y});
    for (std::size_t i = 0; i <= half; ++i) pts.push_back(right[i]);
    if (turn != 0.0)
        for (Vec2& p : pts) p = rotate(p, turn);
    return ProfileCurve(std::move(pts), Topology::open, AsymptoticData{alpha, bisector});
}

ProfileCurve lawlor_sandwich(double c, double amplitude, double window, double spacing, std::uint64_t seed) {
    if (!(c > 0.0)) throw ParameterError("c", "must be positive");
    if (!(amplitude >= 0.0 && amplitude <= 1.0)) throw ParameterError("amplitude", "must lie in [0, 1]");
    if (!(window > 2.0 * std::sqrt(c))) throw ParameterError("window", "must exceed 2 sqrt(c)");
    if (!(spacing > 0.0)) throw ParameterError("spacing", "must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> freq(0.5, 3.0), phase(0.0, 2.0 * pi), shift(-0.5, 0.5);
    const double b = freq(rng), ph = phase(rng), m = shift(rng);
    // bump in [0, 1], so c_eff stays between c and (1 + amplitude) c
    auto bump = [=](double x) { return std::exp(-(x - m) * (x - m)) * (1.0 + 0.5 * std::sin(b * x + ph)) / 1.5; };
    auto g = [=](double x) { return Vec2{x, std::sqrt(x * x + c * (1.0 + amplitude * bump(x)))}; };
    double len = 0.0;
    Vec2 prev = g(-window);
    for (int j = 1; j <= 4096; ++j) {
        const Vec2 q = g(-window + 2.0 * window * j / 4096.0);
        len += distance(prev, q);
        prev = q;
    }
    const auto count = static_cast<std::size_t>(std::max(9.0, std::round(len / spacing) + 1));
    return ProfileCurve(sample_uniform_arclength(g, -window, window, count, false), Topology::open,
                        AsymptoticData{pi / 2, pi / 2});
}

ProfileCurve star(int k, double eps, std::size_t samples) {
    if (k < 1) throw ParameterError("k", "must be a positive integer");
    if (!(eps >= 0.0 && eps < 1.0)) throw ParameterError("eps", "must lie in [0, 1)");
    require_samples(samples);
    auto f = [=](double u) { return (1.0 + eps * std::cos(k * u)) * Vec2{std::cos(u), std::sin(u)}; };
    return ProfileCurve(sample_uniform_arclength(f, 0.0, 2.0 * pi, samples, true), Topology::closed);
}

ProfileCurve circle(double radius, std::size_t samples, Vec2 center) {
    if (!(radius > 0.0)) throw ParameterError("radius", "must be positive");
    require_samples(samples);
    std::vector<Vec2> pts(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double u = 2.0 * pi * static_cast<double>(i) / static_cast<double>(samples);
        pts[i] = center + radius * Vec2{std::cos(u), std::sin(u)};
    }
    return ProfileCurve(std::move(pts), Topology::closed);
}

}  // namespace lmcf
