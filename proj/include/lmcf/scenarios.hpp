#pragma once

// Declarative experiments: an initial-curve generator, flow settings,
// analysis toggles and the qualitative outcome the run is expected to show.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lmcf/flow.hpp"
#include "lmcf/io.hpp"
#include "lmcf/singularity.hpp"

namespace lmcf {

/// Environment variable that overrides the output root ("runs" otherwise).
inline constexpr const char* output_root_variable = "LMCF_OUTPUT_ROOT";
std::filesystem::path output_root();

struct GeneratorSpec {
    /// circle, ellipse, chekanov, figure_eight, arc, lawlor_sandwich, star, grim_reaper, lawlor
    std::string id;
    std::map<std::string, double> params;
};

/// Parameter names and defaults of every generator.
const std::map<std::string, std::map<std::string, double>>& generator_defaults();

/// Validates against the documented ranges; errors name the offending field.
ProfileCurve generate(const GeneratorSpec& spec, std::uint64_t seed = 1);

/// Comparison of the final curve with a known stationary or moving profile.
struct FinalProfileCheck {
    /// lawlor: best Lawlor fit; expander: expander_for_angle(alpha);
    /// translated_grim_reaper: the Grim Reaper moved by `offset` along e1,
    /// compared on |y| <= band.
    std::string kind;
    double window = 3.0;
    double max_distance = 0.01;
    double alpha = 0.0;
    double offset = 0.0;
    double band = 0.0;
};

struct Expectation {
    std::optional<StopReason> stop_reason;
    std::optional<TypeVerdict> verdict;
    std::optional<double> singular_time;
    double singular_time_rel_tol = 0.02;
    std::optional<double> w_hat_max_norm;
    std::optional<double> w_hat_min_norm;
    std::optional<std::string> blowup_model;
    std::optional<std::string> type2_model;
    std::optional<double> max_final_residual;
    std::optional<FinalProfileCheck> final_profile;
};

struct ScenarioConfig {
    std::string name;
    std::string description;
    GeneratorSpec generator;
    FlowConfig flow;
    bool analyze = true;
    bool plots = true;
    AnalysisOptions analysis;
    /// Relative paths resolve against the output root; empty means the name.
    std::string output_dir;
    std::uint64_t seed = 1;
    Expectation expect;

    void validate() const;
};

json scenario_to_json(const ScenarioConfig& c);
ScenarioConfig scenario_from_json(const json& j);
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// The experiments reproducing the examples of the theory (clifford, ellipse,
/// chekanov, star, figure-eight, grim-reaper, lawlor-stability, obtuse-arc,
/// acute-arc).
const std::vector<ScenarioConfig>& builtin_scenarios();
const ScenarioConfig& builtin_scenario(const std::string& name);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Depends only on the trajectory and the report, so re-analysing saved
/// files reproduces it.
std::vector<CheckResult> evaluate_expectations(const Expectation& expect, const Trajectory& traj,
                                               const SingularityReport& report);

/// Hausdorff distance between the curve and the Grim Reaper translated by
/// `offset` along e1, both restricted to |y| <= band.
double grim_reaper_band_distance(const ProfileCurve& curve, double offset, double band);

struct ScenarioOutcome {
    std::filesystem::path directory;
    std::optional<Trajectory> trajectory;
    std::optional<SingularityReport> report;
    std::vector<CheckResult> checks;
    std::string error;
    double wall_seconds = 0.0;
    /// 0 when every expectation held, 1 when some failed, 2 on errors.
    int exit_status = 0;
};

/// Generates, runs, analyses and writes trajectory.jsonl, its manifest,
/// report.json and plots under the output directory.
ScenarioOutcome run_scenario(const ScenarioConfig& config, const std::filesystem::path& root = output_root());

/// Re-hashes the files listed in a manifest; returns the names that changed.
std::vector<std::string> verify_manifest(const std::filesystem::path& manifest);

}  // namespace lmcf
