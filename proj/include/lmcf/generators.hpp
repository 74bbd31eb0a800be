#pragma once

// Initial profile curves for the standard experiments. Every generator
// returns points lying exactly on the analytic curve, spaced uniformly in
// arclength (to the accuracy of a dense arclength table).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include "lmcf/geometry.hpp"

namespace lmcf {

class ParameterError : public std::invalid_argument {
public:
    ParameterError(const std::string& field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(field) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Samples u -> curve(u) on [u0, u1] at `count` arclength-uniform nodes.
/// For closed curves u1 is identified with u0 and not repeated.
std::vector<Vec2> sample_uniform_arclength(const std::function<Vec2(double)>& curve, double u0, double u1,
                                           std::size_t count, bool closed);

/// Ellipse (a cos u, b sin u).
ProfileCurve ellipse(double a, double b, std::size_t samples = 256);

/// Chekanov-type loop (e^{cos u}, sin u e^{-cos u}), the branch in the right half-plane.
ProfileCurve chekanov(std::size_t samples = 256);

/// Lemniscate scale (-sin u, sin u cos u) / (1 + cos^2 u); node 0 sits at the
/// origin and node samples/2 at the self-crossing. samples must be a multiple of 4.
ProfileCurve figure_eight(double scale, std::size_t samples = 256);

/// One branch {(x, sqrt(x^2 cot^2(alpha/2) + c)) : |x| <= window}, rotated so
/// the symmetry axis points along `bisector`; asymptotic opening angle alpha.
ProfileCurve arc(double alpha, double c, double window, double spacing = 0.02, double bisector = pi / 2);

/// Right-angle branch {(x, sqrt(x^2 + c (1 + amplitude phi(x))))} with a
/// seeded bump 0 <= phi <= 1 near the vertex, so it lies between the Lawlor
/// profiles of parameters c and (1 + amplitude) c.
ProfileCurve lawlor_sandwich(double c, double amplitude, double window, double spacing = 0.02,
                             std::uint64_t seed = 1);

/// Star-shaped curve (1 + eps cos(k u)) e^{iu}.
ProfileCurve star(int k, double eps, std::size_t samples = 256);

/// Circle of the given radius about `center`, node 0 at angle 0.
ProfileCurve circle(double radius, std::size_t samples = 256, Vec2 center = {});

}  // namespace lmcf
