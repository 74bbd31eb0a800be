#pragma once

// Singular time and point estimation, Type I/II classification, parabolic
// and curvature rescalings, blow-downs and model matching for trajectories.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lmcf/flow.hpp"
#include "lmcf/geometry.hpp"

namespace lmcf {

class AnalysisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Curve-level stand-in for |A|: K = max(sup|kappa|, sup|<gamma,N>|/|gamma|^2)
/// over nodes that are neither open-curve ends nor regularized at the origin.
struct ProxySample {
    double time = 0.0;
    double K = 0.0;
    Vec2 location;  // node where the max is attained
    double spacing_at_location = 0.0;
};

struct ProxyValue {
    double K = 0.0;
    Vec2 location;
    double spacing = 0.0;
};

ProxyValue curvature_proxy(const ProfileCurve& curve);
std::vector<ProxySample> proxy_history(const Trajectory& traj);

struct SingularityEstimate {
    double T_hat = 0.0;
    Vec2 w_hat;
    /// T from a fit of log K against log(T - t), which does not assume the Type I rate.
    double T_power = 0.0;
    double power_exponent = 0.0;  // K ~ (T - t)^(-q)
    /// |T_power - T_linear| relative to the time span of the final decade > 5%.
    bool disagreement = false;
    double T_linear = 0.0;
    std::size_t frames_in_final_decade = 0;
    /// Final-decade frames whose argmax jumped more than 10 node spacings
    /// (motion towards w_hat and the gamma -> -gamma symmetry discounted).
    std::size_t argmax_jumps = 0;
};

/// T_hat from a linear fit of 1/K^2 against t over the final decade of K^2
/// (snapshots with K >= K_last / sqrt(10)); re-estimated by the power-law fit
/// when the two disagree. w_hat is the argmax location at the last snapshot.
SingularityEstimate estimate_singularity(const Trajectory& traj);

enum class TypeVerdict { type_I, type_II, none, inconclusive };

std::string to_string(TypeVerdict v);
TypeVerdict type_verdict_from_string(const std::string& s);

struct MonitorPoint {
    double time = 0.0;
    double tau = 0.0;  // T_hat - t
    double value = 0.0;  // K^2 tau
};

struct Classification {
    TypeVerdict verdict = TypeVerdict::inconclusive;
    std::vector<MonitorPoint> monitor;
    /// last / median of the monitor over the final decade of tau.
    double final_ratio = 0.0;
    /// last / first of the monitor over the final decade of tau.
    double final_growth = 0.0;
    /// Slope of log(monitor) against log(1/tau) over 10 tau_last <= tau <= 1000 tau_last,
    /// the decades before the final one, where errors in T_hat barely matter.
    double drift_exponent = 0.0;
};

struct ClassifyOptions {
    double bounded_ratio = 3.0;
    double growth_factor = 5.0;
    /// Type I also requires the long-range drift exponent below this.
    double max_type1_drift = 0.1;
};

Classification classify_type(const Trajectory& traj, double T_hat, const ClassifyOptions& options = {});

struct RescaledCurve {
    double sigma_requested = 0.0;
    double sigma = 0.0;  // 1/sqrt(T_hat - t) of the snapshot used
    double time = 0.0;
    ProfileCurve curve;
    /// Image of the plane's origin in rescaled coordinates.
    Vec2 origin;
};

/// sigma (gamma(t) - w) at gauge time s = -1: the snapshot whose
/// T_hat - t is closest (in ratio) to sigma^-2, scaled by 1/sqrt(T_hat - t).
RescaledCurve type1_rescale_one(const Trajectory& traj, Vec2 w, double T_hat, double sigma);
std::vector<RescaledCurve> type1_rescale(const Trajectory& traj, Vec2 w, double T_hat, std::span<const double> sigmas);

struct Type2Sequence {
    std::vector<RescaledCurve> curves;
    /// Some argmax jumped by more than 10 spacings between consecutive frames.
    bool unstable = false;
};

/// Snapshots of the final decade, recentred at the argmax of K and scaled
/// by K, so the proxy equals 1 at the new origin. At most max_frames, the
/// latest ones. Refuses Type I and none verdicts.
Type2Sequence type2_rescale(const Trajectory& traj, TypeVerdict verdict, std::size_t max_frames = 6);

/// Scales each curve down by each lambda about the rescaled origin. Throws
/// when a scaled curve no longer reaches the boundary of the window.
std::vector<RescaledCurve> blow_down(std::span<const RescaledCurve> curves, std::span<const double> lambdas,
                                     double window_radius = 1.0);

struct ModelFit {
    std::string model;  // line_pair, line, circle_2, circle_sqrt2, grim_reaper, lawlor, unmatched
    double distance = 0.0;
    std::map<std::string, double> parameters;
    std::string runner_up;
    double runner_up_distance = 0.0;
};

struct MatchOptions {
    double window_radius = 3.0;
    /// Image of the plane's origin: centre of the line models, the circles'
    /// starting guess and the Lawlor hyperbola, and the mirror point for -gamma.
    Vec2 origin;
    /// Add the -gamma branch (reflected through `origin`) before matching.
    bool with_mirror = true;
    /// Restrict to a subset of models; empty means the whole catalog.
    std::vector<std::string> models;
    double unmatched_above = 0.5;
};

/// Best windowed-Hausdorff fit over the model catalog.
ModelFit match_model(const ProfileCurve& curve, const MatchOptions& options = {});
/// All catalog fits, best first.
std::vector<ModelFit> fit_all_models(const ProfileCurve& curve, const MatchOptions& options = {});

/// Samples a fitted model (origin as passed to the fit) for plotting.
std::vector<Polyline> model_polylines(const ModelFit& fit, Vec2 origin, double window_radius);

/// Distance from a rescaled curve to a fixed line pair at angles theta, theta + pi/2.
double line_pair_distance(const ProfileCurve& curve, double theta, const MatchOptions& options);

/// Number of curve branches crossing each perpendicular station of the line
/// through `origin` at angle theta, when more than 80% of the stations agree
/// (0 otherwise).
int line_multiplicity(const std::vector<Polyline>& lines, Vec2 origin, double theta, double window_radius,
                      double tolerance);

/// Type I blow-ups are self-shrinkers, and so are blow-downs of ancient flows.
std::vector<std::string> shrinker_models();
/// Type II blow-ups: translators, minimal necks and multiplicity planes.
std::vector<std::string> ancient_models();

struct AnalysisOptions {
    /// Empty: 10 * 2^k for every k the trajectory resolves.
    std::vector<double> sigmas;
    double type1_window = 3.0;
    double type2_window = 5.0;
    std::vector<double> blowdown_lambdas{4.0, 16.0, 64.0};
    double blowdown_window = 1.0;
    std::size_t type2_frames = 6;
    ClassifyOptions classify;
};

struct SingularityReport {
    TypeVerdict verdict = TypeVerdict::none;
    std::optional<SingularityEstimate> estimate;
    std::optional<Classification> classification;
    /// Type I rescale at the largest resolvable requested sigma.
    std::optional<RescaledCurve> type1_curve;
    std::optional<ModelFit> blowup_match;
    /// Fits at every resolvable sigma, in the order requested.
    std::vector<std::pair<double, ModelFit>> type1_fits;
    std::optional<ModelFit> type2_match;
    std::optional<ModelFit> blowdown_match;
    /// Blow-down distance to the Type I line pair (theta from the blow-up match).
    std::optional<double> blowdown_to_type1;
    bool type2_unstable = false;
    std::vector<std::string> notes;
};

/// Full pipeline. Trajectories that did not stop on a blow-up threshold get
/// verdict none.
SingularityReport analyze(const Trajectory& traj, const AnalysisOptions& options = {});

}  // namespace lmcf
