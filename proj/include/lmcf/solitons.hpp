#pragma once

// Exact and shot special solutions of the profile-curve flow: circle
// shrinkers, the Grim Reaper translator, Lawlor minimal necks and
// self-similar profiles obtained by shooting from a symmetric vertex.
//
// A profile is a lambda-soliton when kappa - <gamma,N>/|gamma|^2 = lambda <gamma,N>.
// lambda = -1/2 shrinkers and lambda = +1/2 expanders are the fixed points of
// the shrinker and expander gauges of the flow.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lmcf/geometry.hpp"

namespace lmcf {

class SolitonError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SolitonKind { minimal, shrinker, expander, translator };

std::string to_string(SolitonKind k);
SolitonKind soliton_kind_from_string(const std::string& s);

struct SolitonSpec {
    SolitonKind kind = SolitonKind::minimal;
    double lambda = 0.0;
    std::optional<double> alpha;  // asymptotic opening angle, open profiles
    double scale = 1.0;
    double translator_speed = 1.0;

    /// minimal -> 0, shrinker -> -1/2, expander -> +1/2, translator -> 0.
    static SolitonSpec standard(SolitonKind kind);
    void validate() const;
};

struct SolitonProfile {
    SolitonSpec spec;
    ProfileCurve curve;
    double residual = 0.0;
};

/// Circle of radius sqrt(-2/lambda) about the origin.
SolitonProfile circle_shrinker(double lambda, std::size_t samples = 256);

/// {(-log cos y, y) : |y| <= pi/2 - y_margin}, translating with unit speed
/// along e1 under curve shortening. Residual is |kappa - <e1,N>| evaluated
/// in closed form at the samples.
SolitonProfile grim_reaper(std::size_t samples = 256, double y_margin = 0.2);

/// {(x, sqrt(x^2 + c)) : |x| <= window}; residual in closed form.
SolitonProfile lawlor_profile(double c, double window, double spacing = 0.02);

struct ShootOptions {
    double spacing = 0.02;    // output sample spacing in arclength, capped at d/64
    double tolerance = 1e-12;  // ODE absolute/relative tolerance
};

struct ShotProfile {
    SolitonProfile profile;
    double vertex_distance = 0.0;
    /// Open profiles: opening angle between the asymptotic rays.
    std::optional<double> opening_angle;
    /// Closed candidates: |psi - pi| at the first return to the symmetry axis.
    std::optional<double> closure_defect;
};

/// Integrates x' = cos psi, y' = sin psi, psi' = <gamma,N>(1/|gamma|^2 + lambda)
/// from the vertex (0, d) with horizontal tangent, and mirrors the right half
/// across the y-axis. Stops at max_arclength or, for shrinkers, at the first
/// return to the y-axis (which closes the curve by symmetry).
ShotProfile shoot_profile(SolitonKind kind, double vertex_distance, double max_arclength,
                          const ShootOptions& options = {});

struct ExpanderSearch {
    double d_min = 0.02;
    double d_max = 20.0;
    double angle_tolerance = 1e-4;
    /// Arclength per branch is max(min_arclength, arclength_factor * d).
    double min_arclength = 12.0;
    double arclength_factor = 4.0;
    ShootOptions shoot;
};

/// Bisection over the vertex distance until the expander's opening angle
/// equals alpha within angle_tolerance. alpha must lie in (0, pi/2).
ShotProfile expander_for_angle(double alpha, const ExpanderSearch& search = {});

/// Closed shrinker whose first return to the symmetry axis is horizontal:
/// minimizes the closure defect over vertex distances in [d_lo, d_hi].
ShotProfile closed_shrinker_search(double d_lo, double d_hi, double max_arclength = 40.0,
                                   const ShootOptions& options = {});

/// sup over refined interior samples of |kappa - <gamma,N>/|gamma|^2 - lambda <gamma,N>|,
/// or |kappa - speed <e1,N>| for translators.
double soliton_residual(const ProfileCurve& curve, const SolitonSpec& spec);

}  // namespace lmcf
