#pragma once

// Time evolution of profile curves under d(gamma)/dt = kappa - gamma_perp/|gamma|^2
// and its gauge variants.

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lmcf/geometry.hpp"
#include "lmcf/kernels.hpp"

namespace lmcf {

class FlowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// physical: kappa - gamma_perp/|gamma|^2
/// csf_only: kappa
/// shrinker_gauge: physical + gamma_perp/2 (fixed points are lambda = -1/2 shrinkers)
/// expander_gauge: physical - gamma_perp/2 (fixed points are lambda = +1/2 expanders)
enum class Gauge { physical, csf_only, shrinker_gauge, expander_gauge };

std::string to_string(Gauge g);
Gauge gauge_from_string(const std::string& s);

struct StopConditions {
    double max_time = 1.0;
    std::optional<double> sup_velocity_threshold;
    std::optional<double> min_radius_threshold;
    std::optional<double> steady_state_residual;
};

enum class BoundaryMode { pinned_to_asymptote };

struct BoundaryPolicy {
    BoundaryMode mode = BoundaryMode::pinned_to_asymptote;
    /// Radius at which open curves are truncated; 0 means "wherever the
    /// initial curve ends". Informational beyond the validity check.
    double window_radius = 0.0;
};

/// uniform: one spacing for the whole curve, fine enough for its sharpest
/// point. curvature_graded: spacing follows the local length scale
/// 1 / max(|kappa|, |gamma_perp|/|gamma|^2), changing by at most `grading`
/// per unit arclength.
enum class SpacingPolicy { uniform, curvature_graded };

std::string to_string(SpacingPolicy p);
SpacingPolicy spacing_policy_from_string(const std::string& s);

struct FlowConfig {
    Gauge gauge = Gauge::physical;
    double cfl_factor = 0.2;
    /// Remeshing target spacing as a fraction of the current length.
    double spacing_fraction = 1.0 / 256.0;
    /// Remesh when some spacing exceeds its target by this ratio (or falls
    /// below it by the square of the ratio).
    double remesh_trigger = 2.0;
    SpacingPolicy spacing_policy = SpacingPolicy::curvature_graded;
    double grading = 0.25;
    /// Regularization radius about the origin, relative to the curve extent.
    double origin_epsilon = 1e-4;
    /// Target spacing is also capped at curvature_resolution times the local length scale.
    double curvature_resolution = 0.1;
    std::size_t max_points = 12000;
    /// Strength of the spacing-equalizing tangential motion.
    double tangential_strength = 1.0;
    /// Snapshot every snapshot_interval of time, and whenever the sup
    /// velocity or the curvature proxy has grown by snapshot_growth since
    /// the last snapshot.
    double snapshot_interval = std::numeric_limits<double>::infinity();
    double snapshot_growth = 1.0905077326652577;  // 2^(1/8)
    StopConditions stop;
    BoundaryPolicy boundary;

    void validate() const;
};

enum class StopReason { max_time, sup_velocity, min_radius, steady_state, point_budget };

std::string to_string(StopReason r);
StopReason stop_reason_from_string(const std::string& s);

struct Snapshot {
    double time = 0.0;
    ProfileCurve curve;
    CurveDiagnostics diagnostics;
};

struct Termination {
    StopReason reason = StopReason::max_time;
    double time = 0.0;
    std::size_t steps = 0;
    std::size_t rejected_steps = 0;
    std::size_t remeshes = 0;
    /// Gauge velocity residual at termination (steady-state measure).
    double residual = 0.0;
};

struct Trajectory {
    std::vector<Snapshot> snapshots;
    Termination termination;

    const Snapshot& front() const { return snapshots.front(); }
    const Snapshot& back() const { return snapshots.back(); }
};

/// Explicit integrator for a single curve. Holds the working state between
/// steps; all arithmetic is deterministic.
class FlowIntegrator {
public:
    FlowIntegrator(const ProfileCurve& initial, FlowConfig config, double start_time = 0.0);

    double time() const { return time_; }
    const std::vector<Vec2>& points() const { return points_; }
    ProfileCurve curve() const;
    Snapshot snapshot() const;

    /// Gauge normal velocity at the current state (zero at pinned ends).
    const std::vector<double>& normal_velocity() const { return velocity_; }
    /// sup |kappa - gamma_perp/|gamma|^2| over non-endpoint nodes.
    double sup_physical_velocity() const { return sup_physical_; }
    /// sup |gauge normal velocity| over non-endpoint nodes.
    double residual() const { return sup_gauge_; }
    /// Current per-node target spacing.
    const std::vector<double>& target_spacing() const { return targets_; }
    double sup_curvature() const { return sup_kappa_; }
    /// max(sup|kappa|, sup|gamma_perp|/|gamma|^2) over non-endpoint, unregularized nodes.
    double curvature_proxy() const { return sup_proxy_; }
    double min_radius() const { return min_radius_; }

    /// One accepted forward step; dt is capped by dt_cap. Returns the dt used.
    double advance(double dt_cap = std::numeric_limits<double>::infinity());

    std::size_t steps() const { return steps_; }
    std::size_t rejected_steps() const { return rejected_; }
    std::size_t remeshes() const { return remeshes_; }
    /// True when the last remesh request exceeded max_points.
    bool point_budget_exhausted() const { return budget_exhausted_; }

private:
    void evaluate();
    void maybe_remesh();

    FlowConfig config_;
    Topology topology_;
    std::optional<AsymptoticData> asymptotics_;
    std::vector<Vec2> points_;
    std::vector<Vec2> scratch_;
    kernels::FieldBuffers fields_;
    std::vector<double> velocity_;
    std::vector<double> tangential_;
    std::vector<double> targets_;
    std::vector<double> ratio_;  // segment spacing / segment target
    double time_ = 0.0;
    double time_carry_ = 0.0;  // compensated summation of the step sizes
    double epsilon_ = 0.0;
    double sup_physical_ = 0.0;
    double sup_gauge_ = 0.0;
    double sup_kappa_ = 0.0;
    double sup_proxy_ = 0.0;
    double min_radius_ = 0.0;
    double min_spacing_ = 0.0;
    double length_ = 0.0;
    std::size_t steps_ = 0;
    std::size_t rejected_ = 0;
    std::size_t remeshes_ = 0;
    bool budget_exhausted_ = false;
};

/// One accepted step from a snapshot (convenience wrapper over FlowIntegrator).
Snapshot step(const Snapshot& current, const FlowConfig& config);

/// Integrates until exactly one stop condition fires.
Trajectory run(const ProfileCurve& initial, const FlowConfig& config);

struct FlowJob {
    ProfileCurve initial;
    FlowConfig config;
};

struct EnsembleResult {
    std::optional<Trajectory> trajectory;
    std::string error;
};

/// Independent runs, possibly in parallel; results match sequential runs
/// exactly and keep input order.
std::vector<EnsembleResult> run_ensemble(const std::vector<FlowJob>& jobs);

}  // namespace lmcf
