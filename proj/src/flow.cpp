#include "lmcf/flow.hpp"

#include <algorithm>
#include <cmath>

namespace lmcf {

std::string to_string(Gauge g) {
    switch (g) {
        case Gauge::physical: return "physical";
        case Gauge::csf_only: return "csf_only";
        case Gauge::shrinker_gauge: return "shrinker_gauge";
        case Gauge::expander_gauge: return "expander_gauge";
    }
    return "physical";
}

Gauge gauge_from_string(const std::string& s) {
    if (s == "physical") return Gauge::physical;
    if (s == "csf_only") return Gauge::csf_only;
    if (s == "shrinker_gauge") return Gauge::shrinker_gauge;
    if (s == "expander_gauge") return Gauge::expander_gauge;
    throw FlowError("unknown gauge '" + s + "'");
}

std::string to_string(StopReason r) {
    switch (r) {
        case StopReason::max_time: return "max_time";
        case StopReason::sup_velocity: return "sup_velocity_threshold";
        case StopReason::min_radius: return "min_radius_threshold";
        case StopReason::steady_state: return "steady_state_residual";
        case StopReason::point_budget: return "point_budget";
    }
    return "max_time";
}

StopReason stop_reason_from_string(const std::string& s) {
    for (auto r : {StopReason::max_time, StopReason::sup_velocity, StopReason::min_radius, StopReason::steady_state,
                   StopReason::point_budget})
        if (to_string(r) == s) return r;
    throw FlowError("unknown stop reason '" + s + "'");
}

std::string to_string(SpacingPolicy p) { return p == SpacingPolicy::uniform ? "uniform" : "curvature_graded"; }

SpacingPolicy spacing_policy_from_string(const std::string& s) {
    if (s == "uniform") return SpacingPolicy::uniform;
    if (s == "curvature_graded") return SpacingPolicy::curvature_graded;
    throw FlowError("unknown spacing policy '" + s + "'");
}

void FlowConfig::validate() const {
    if (!(cfl_factor > 0.0 && cfl_factor <= 0.5)) throw FlowError("cfl_factor must lie in (0, 0.5]");
    if (!(spacing_fraction > 0.0 && spacing_fraction <= 1.0 / 8.0)) throw FlowError("spacing_fraction must lie in (0, 1/8]");
    if (!(remesh_trigger > 1.0 && remesh_trigger <= 4.0)) throw FlowError("remesh_trigger must lie in (1, 4]");
    if (!(origin_epsilon > 0.0)) throw FlowError("origin_epsilon must be positive");
    if (!(grading > 0.0 && grading <= 1.0)) throw FlowError("grading must lie in (0, 1]");
    if (!(curvature_resolution > 0.0)) throw FlowError("curvature_resolution must be positive");
    if (!(tangential_strength >= 0.0)) throw FlowError("tangential_strength must be non-negative");
    if (!(snapshot_growth > 1.0)) throw FlowError("snapshot_growth must exceed 1");
    if (!(snapshot_interval > 0.0)) throw FlowError("snapshot_interval must be positive");
    if (!(stop.max_time > 0.0)) throw FlowError("max_time must be positive");
    for (const auto& v : {stop.sup_velocity_threshold, stop.min_radius_threshold, stop.steady_state_residual})
        if (v && !(*v > 0.0)) throw FlowError("stop thresholds must be positive");
    if (max_points < ProfileCurve::min_points) throw FlowError("max_points below 8");
}

namespace {

double gauge_coefficient(Gauge g) {
    switch (g) {
        case Gauge::shrinker_gauge: return 0.5;
        case Gauge::expander_gauge: return -0.5;
        default: return 0.0;
    }
}

double bbox_extent(const std::vector<Vec2>& pts) {
    Vec2 lo = pts.front(), hi = pts.front();
    for (const Vec2 p : pts) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    return norm(hi - lo);
}

}  // namespace

FlowIntegrator::FlowIntegrator(const ProfileCurve& initial, FlowConfig config, double start_time)
    : config_(std::move(config)),
      topology_(initial.topology()),
      asymptotics_(initial.asymptotics()),
      points_(initial.points()),
      time_(start_time) {
    config_.validate();
    if (!initial.closed() && initial.asymptotics() && config_.boundary.window_radius > 0.0) {
        double near = std::numeric_limits<double>::infinity();
        for (const Vec2 p : initial.points()) near = std::min(near, norm(p));
        if (config_.boundary.window_radius <= 2.0 * near)
            throw FlowError("boundary window radius must exceed twice the curve's distance to the origin");
    }
    evaluate();
    maybe_remesh();
}

ProfileCurve FlowIntegrator::curve() const { return ProfileCurve(points_, topology_, asymptotics_); }

Snapshot FlowIntegrator::snapshot() const {
    ProfileCurve c = curve();
    CurveDiagnostics d = diagnostics(c, epsilon_);
    return Snapshot{time_, std::move(c), d};
}

void FlowIntegrator::evaluate() {
    const std::size_t n = points_.size();
    const bool closed = topology_ == Topology::closed;
    const std::size_t segs = closed ? n : n - 1;
    std::vector<double> h(segs);
    length_ = 0.0;
    min_spacing_ = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < segs; ++i) {
        h[i] = distance(points_[i], points_[(i + 1) % n]);
        length_ += h[i];
        min_spacing_ = std::min(min_spacing_, h[i]);
    }
    // A neck closing in on the origin must never be regularized; only nodes
    // sitting on the origin to well within one spacing are.
    epsilon_ = std::min(config_.origin_epsilon * bbox_extent(points_), 1e-2 * min_spacing_);
    kernels::compute_fields(points_, closed, epsilon_, fields_);
    velocity_.assign(n, 0.0);
    tangential_.assign(n, 0.0);

    // Target spacing per node.
    const double coarse = length_ * config_.spacing_fraction;
    targets_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Curve shortening alone never sees the radial term.
        const double radial = config_.gauge == Gauge::csf_only ? 0.0 : std::abs(fields_.radial[i]);
        const double scale = std::max(std::abs(fields_.kappa[i]), radial);
        targets_[i] = scale > 0.0 ? std::min(coarse, config_.curvature_resolution / scale) : coarse;
    }
    if (config_.spacing_policy == SpacingPolicy::uniform) {
        const double t = *std::min_element(targets_.begin(), targets_.end());
        std::fill(targets_.begin(), targets_.end(), t);
    } else {
        // Limit growth to `grading` per unit length, sweeping both ways
        // (twice around for closed curves).
        const double g = config_.grading;
        const std::size_t rounds = closed ? 2 : 1;
        for (std::size_t r = 0; r < rounds; ++r) {
            for (std::size_t i = 0; i < segs; ++i) {
                const std::size_t j = (i + 1) % n;
                targets_[j] = std::min(targets_[j], targets_[i] + g * h[i]);
            }
            for (std::size_t k = segs; k-- > 0;) {
                const std::size_t j = (k + 1) % n;
                targets_[k] = std::min(targets_[k], targets_[j] + g * h[k]);
            }
        }
    }
    ratio_.resize(segs);
    for (std::size_t i = 0; i < segs; ++i) ratio_[i] = 2.0 * h[i] / (targets_[i] + targets_[(i + 1) % n]);

    const double lambda = gauge_coefficient(config_.gauge);
    sup_physical_ = sup_gauge_ = sup_kappa_ = sup_proxy_ = 0.0;
    min_radius_ = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        min_radius_ = std::min(min_radius_, norm(points_[i]));
        if (fields_.one_sided[i]) continue;
        const double k = fields_.kappa[i];
        const double physical = k - fields_.radial[i];
        double v = physical;
        if (config_.gauge == Gauge::csf_only)
            v = k;
        else if (lambda != 0.0)
            v += lambda * dot(points_[i], fields_.normal[i]);
        velocity_[i] = v;
        // Tangential motion pulls the spacing/target ratios of the two
        // adjacent segments together.
        const double before = ratio_[(i + segs - 1) % segs], after = ratio_[i];
        tangential_[i] = config_.tangential_strength * (after - before) / targets_[i];
        sup_physical_ = std::max(sup_physical_, std::abs(physical));
        sup_gauge_ = std::max(sup_gauge_, std::abs(v));
        sup_kappa_ = std::max(sup_kappa_, std::abs(k));
        sup_proxy_ = std::max(sup_proxy_, std::abs(k));
        if (!fields_.regularized[i]) sup_proxy_ = std::max(sup_proxy_, std::abs(fields_.radial[i]));
    }
}

void FlowIntegrator::maybe_remesh() {
    const auto [lo, hi] = std::minmax_element(ratio_.begin(), ratio_.end());
    const double trigger = config_.remesh_trigger;
    if (*hi <= trigger && *lo >= 1.0 / (trigger * trigger)) return;
    double count = 0.0;
    for (double q : ratio_) count += q;
    if (count > static_cast<double>(config_.max_points)) {
        budget_exhausted_ = true;
        return;
    }
    points_ = resample_graded(curve(), targets_).points();
    ++remeshes_;
    evaluate();
}

double FlowIntegrator::advance(double dt_cap) {
    const std::size_t n = points_.size();
    double dt = std::min(config_.cfl_factor * min_spacing_ * min_spacing_, dt_cap);
    // The spacing-equalizing motion diffuses node positions with coefficient
    // strength / target^2; keep explicit Euler inside its stability limit.
    if (config_.tangential_strength > 0.0) {
        const double t_min = *std::min_element(targets_.begin(), targets_.end());
        dt = std::min(dt, 2.0 * config_.cfl_factor * t_min * t_min / config_.tangential_strength);
    }
    double sup_speed = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        sup_speed = std::max(sup_speed, velocity_[i] * velocity_[i] + tangential_[i] * tangential_[i]);
    sup_speed = std::sqrt(sup_speed);
    while (dt * sup_speed > 0.5 * min_spacing_) {
        dt *= 0.5;
        ++rejected_;
        if (dt < 1e-14 * config_.stop.max_time)
            throw FlowError("time step underflow at t = " + std::to_string(time_));
    }
    scratch_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (fields_.one_sided[i]) {
            scratch_[i] = points_[i];  // pinned
            continue;
        }
        scratch_[i] = points_[i] + dt * (velocity_[i] * fields_.normal[i] + tangential_[i] * fields_.tangent[i]);
        if (!std::isfinite(scratch_[i].x) || !std::isfinite(scratch_[i].y))
            throw FlowError("non-finite position at t = " + std::to_string(time_));
    }
    points_.swap(scratch_);
    // Steps near a singularity fall below the rounding unit of t; Kahan
    // summation keeps their sum exact enough for T - t estimates.
    const double y = dt - time_carry_;
    const double sum = time_ + y;
    time_carry_ = (sum - time_) - y;
    time_ = sum;
    ++steps_;
    evaluate();
    maybe_remesh();
    return dt;
}

Snapshot step(const Snapshot& current, const FlowConfig& config) {
    FlowIntegrator integ(current.curve, config, current.time);
    integ.advance();
    return integ.snapshot();
}

Trajectory run(const ProfileCurve& initial, const FlowConfig& config) {
    FlowIntegrator integ(initial, config);
    Trajectory traj;
    traj.snapshots.push_back(integ.snapshot());
    double reference_velocity = integ.sup_physical_velocity();
    double reference_proxy = integ.curvature_proxy();
    double next_time_snapshot = config.snapshot_interval;
    const double max_time = config.stop.max_time;

    for (;;) {
        std::optional<StopReason> reason;
        const auto& s = config.stop;
        if (s.sup_velocity_threshold && integ.sup_physical_velocity() >= *s.sup_velocity_threshold)
            reason = StopReason::sup_velocity;
        else if (s.min_radius_threshold && integ.min_radius() <= *s.min_radius_threshold)
            reason = StopReason::min_radius;
        else if (s.steady_state_residual && integ.residual() < *s.steady_state_residual)
            reason = StopReason::steady_state;
        else if (integ.point_budget_exhausted())
            reason = StopReason::point_budget;
        else if (integ.time() >= max_time * (1.0 - 1e-12))
            reason = StopReason::max_time;

        if (reason) {
            if (integ.time() > traj.back().time) traj.snapshots.push_back(integ.snapshot());
            traj.termination = Termination{*reason, integ.time(), integ.steps(), integ.rejected_steps(),
                                           integ.remeshes(), integ.residual()};
            return traj;
        }

        double cap = max_time - integ.time();
        if (std::isfinite(next_time_snapshot)) cap = std::min(cap, next_time_snapshot - integ.time());
        integ.advance(cap);

        bool record = false;
        if (integ.time() >= next_time_snapshot * (1.0 - 1e-12)) {
            record = true;
            while (next_time_snapshot <= integ.time() * (1.0 + 1e-12)) next_time_snapshot += config.snapshot_interval;
        }
        if (integ.sup_physical_velocity() >= reference_velocity * config.snapshot_growth) record = true;
        if (integ.curvature_proxy() >= reference_proxy * config.snapshot_growth) record = true;
        if (record) {
            traj.snapshots.push_back(integ.snapshot());
            reference_velocity = integ.sup_physical_velocity();
            reference_proxy = integ.curvature_proxy();
        }
    }
}

std::vector<EnsembleResult> run_ensemble(const std::vector<FlowJob>& jobs) {
    std::vector<EnsembleResult> results(jobs.size());
    const auto n = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        auto& out = results[static_cast<std::size_t>(i)];
        try {
            out.trajectory = run(jobs[static_cast<std::size_t>(i)].initial, jobs[static_cast<std::size_t>(i)].config);
        } catch (const std::exception& e) {
            out.error = e.what();
        }
    }
    return results;
}

}  // namespace lmcf
