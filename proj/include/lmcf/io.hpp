#pragma once

// JSON persistence: curve snapshots, trajectories as JSON lines with a
// sidecar manifest, flow configurations and singularity reports.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "lmcf/flow.hpp"
#include "lmcf/geometry.hpp"
#include "lmcf/singularity.hpp"
#include "lmcf/solitons.hpp"

namespace lmcf {

using json = nlohmann::json;

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* artifact_version = "1.0.0";

/// {points: [[x,y],...], topology, asymptotics: {alpha, bisector} | null, time?}
json curve_to_json(const ProfileCurve& curve, std::optional<double> time = std::nullopt);
ProfileCurve curve_from_json(const json& j);

json diagnostics_to_json(const CurveDiagnostics& d);
CurveDiagnostics diagnostics_from_json(const json& j);

/// Curve format plus time and diagnostics.
json snapshot_to_json(const Snapshot& s);
Snapshot snapshot_from_json(const json& j);

json flow_config_to_json(const FlowConfig& c);
/// Missing fields keep their defaults; unknown fields are rejected.
FlowConfig flow_config_from_json(const json& j, FlowConfig base = {});

json termination_to_json(const Termination& t);
Termination termination_from_json(const json& j);

json model_fit_to_json(const ModelFit& f);
json report_to_json(const SingularityReport& r);

json soliton_to_json(const SolitonProfile& p);

/// Sidecar of trajectory.jsonl: trajectory.manifest.json.
std::filesystem::path manifest_path_for(const std::filesystem::path& trajectory);

/// One snapshot per line. The termination record goes to the manifest.
void write_trajectory_lines(const std::filesystem::path& path, const Trajectory& traj);
/// Reads the snapshots and, from the sidecar manifest, the termination record.
Trajectory read_trajectory(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
json read_json(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const json& j);

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

}  // namespace lmcf
