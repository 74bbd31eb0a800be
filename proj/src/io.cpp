#include "lmcf/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <openssl/evp.h>

namespace lmcf {

namespace {

const json& need(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
    return j.at(key);
}

double number(const json& j, const char* key) {
    const json& v = need(j, key);
    if (!v.is_number()) throw FormatError(std::string("field '") + key + "' is not a number");
    return v.get<double>();
}

// null stands for +infinity (JSON has no such number).
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
}

json vec_to_json(Vec2 v) { return json::array({v.x, v.y}); }

}  // namespace

json curve_to_json(const ProfileCurve& curve, std::optional<double> time) {
    json pts = json::array();
    for (const Vec2 p : curve.points()) pts.push_back(vec_to_json(p));
    json j;
    j["points"] = std::move(pts);
    j["topology"] = to_string(curve.topology());
    if (curve.asymptotics())
        j["asymptotics"] = {{"alpha", curve.asymptotics()->alpha}, {"bisector", curve.asymptotics()->bisector}};
    else
        j["asymptotics"] = nullptr;
    if (time) j["time"] = *time;
    return j;
}

ProfileCurve curve_from_json(const json& j) {
    const json& pts = need(j, "points");
    if (!pts.is_array()) throw FormatError("field 'points' is not an array");
    std::vector<Vec2> points;
    points.reserve(pts.size());
    for (const auto& p : pts) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw FormatError("each point must be [x, y]");
        points.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    const Topology topo = topology_from_string(need(j, "topology").get<std::string>());
    std::optional<AsymptoticData> asym;
    if (j.contains("asymptotics") && !j.at("asymptotics").is_null()) {
        const json& a = j.at("asymptotics");
        asym = AsymptoticData{number(a, "alpha"), number(a, "bisector")};
    }
    return ProfileCurve(std::move(points), topo, asym);
}

json diagnostics_to_json(const CurveDiagnostics& d) {
    return {{"length", d.length},
            {"min_radius", d.min_radius},
            {"sup_curvature", d.sup_curvature},
            {"sup_velocity", d.sup_velocity},
            {"winding_number", d.winding_number ? json(*d.winding_number) : json(nullptr)},
            {"turning_number", d.turning_number ? json(*d.turning_number) : json(nullptr)},
            {"lagrangian_angle_oscillation", d.lagrangian_angle_oscillation}};
}

CurveDiagnostics diagnostics_from_json(const json& j) {
    CurveDiagnostics d;
    d.length = number(j, "length");
    d.min_radius = number(j, "min_radius");
    d.sup_curvature = number(j, "sup_curvature");
    d.sup_velocity = number(j, "sup_velocity");
    if (j.contains("winding_number") && !j["winding_number"].is_null()) d.winding_number = j["winding_number"].get<int>();
    if (j.contains("turning_number") && !j["turning_number"].is_null()) d.turning_number = j["turning_number"].get<int>();
    d.lagrangian_angle_oscillation = number(j, "lagrangian_angle_oscillation");
    return d;
}

json snapshot_to_json(const Snapshot& s) {
    json j = curve_to_json(s.curve, s.time);
    j["diagnostics"] = diagnostics_to_json(s.diagnostics);
    return j;
}

Snapshot snapshot_from_json(const json& j) {
    Snapshot s;
    s.curve = curve_from_json(j);
    s.time = number(j, "time");
    if (j.contains("diagnostics")) s.diagnostics = diagnostics_from_json(j.at("diagnostics"));
    return s;
}

json flow_config_to_json(const FlowConfig& c) {
    return {{"gauge", to_string(c.gauge)},
            {"cfl_factor", c.cfl_factor},
            {"spacing_fraction", c.spacing_fraction},
            {"remesh_trigger", c.remesh_trigger},
            {"spacing_policy", to_string(c.spacing_policy)},
            {"grading", c.grading},
            {"origin_epsilon", c.origin_epsilon},
            {"curvature_resolution", c.curvature_resolution},
            {"max_points", c.max_points},
            {"tangential_strength", c.tangential_strength},
            {"snapshot_interval", finite_or_null(c.snapshot_interval)},
            {"snapshot_growth", c.snapshot_growth},
            {"stop",
             {{"max_time", c.stop.max_time},
              {"sup_velocity_threshold", optional_number(c.stop.sup_velocity_threshold)},
              {"min_radius_threshold", optional_number(c.stop.min_radius_threshold)},
              {"steady_state_residual", optional_number(c.stop.steady_state_residual)}}},
            {"boundary", {{"mode", "pinned_to_asymptote"}, {"window_radius", c.boundary.window_radius}}}};
}

FlowConfig flow_config_from_json(const json& j, FlowConfig c) {
    if (!j.is_object()) throw FormatError("flow config must be an object");
    for (const auto& [key, v] : j.items()) {
        if (key == "gauge")
            c.gauge = gauge_from_string(v.get<std::string>());
        else if (key == "cfl_factor")
            c.cfl_factor = v.get<double>();
        else if (key == "spacing_fraction")
            c.spacing_fraction = v.get<double>();
        else if (key == "remesh_trigger")
            c.remesh_trigger = v.get<double>();
        else if (key == "spacing_policy")
            c.spacing_policy = spacing_policy_from_string(v.get<std::string>());
        else if (key == "grading")
            c.grading = v.get<double>();
        else if (key == "origin_epsilon")
            c.origin_epsilon = v.get<double>();
        else if (key == "curvature_resolution")
            c.curvature_resolution = v.get<double>();
        else if (key == "max_points")
            c.max_points = v.get<std::size_t>();
        else if (key == "tangential_strength")
            c.tangential_strength = v.get<double>();
        else if (key == "snapshot_interval")
            c.snapshot_interval = v.is_null() ? std::numeric_limits<double>::infinity() : v.get<double>();
        else if (key == "snapshot_growth")
            c.snapshot_growth = v.get<double>();
        else if (key == "stop") {
            for (const auto& [k, s] : v.items()) {
                if (k == "max_time")
                    c.stop.max_time = s.get<double>();
                else if (k == "sup_velocity_threshold")
                    c.stop.sup_velocity_threshold = read_optional(v, "sup_velocity_threshold");
                else if (k == "min_radius_threshold")
                    c.stop.min_radius_threshold = read_optional(v, "min_radius_threshold");
                else if (k == "steady_state_residual")
                    c.stop.steady_state_residual = read_optional(v, "steady_state_residual");
                else
                    throw FormatError("unknown stop field '" + k + "'");
            }
        } else if (key == "boundary") {
            if (v.contains("mode") && v["mode"] != "pinned_to_asymptote")
                throw FormatError("boundary.mode: only pinned_to_asymptote is supported");
            if (v.contains("window_radius")) c.boundary.window_radius = v["window_radius"].get<double>();
        } else
            throw FormatError("unknown flow field '" + key + "'");
    }
    return c;
}

json termination_to_json(const Termination& t) {
    return {{"reason", to_string(t.reason)},   {"time", t.time},         {"steps", t.steps},
            {"rejected_steps", t.rejected_steps}, {"remeshes", t.remeshes}, {"residual", t.residual}};
}

Termination termination_from_json(const json& j) {
    Termination t;
    t.reason = stop_reason_from_string(need(j, "reason").get<std::string>());
    t.time = number(j, "time");
    t.steps = need(j, "steps").get<std::size_t>();
    t.rejected_steps = need(j, "rejected_steps").get<std::size_t>();
    t.remeshes = need(j, "remeshes").get<std::size_t>();
    t.residual = number(j, "residual");
    return t;
}

json model_fit_to_json(const ModelFit& f) {
    json j{{"model", f.model}, {"distance", f.distance}, {"parameters", f.parameters}};
    if (!f.runner_up.empty()) {
        j["runner_up"] = f.runner_up;
        j["runner_up_distance"] = f.runner_up_distance;
    }
    return j;
}

json report_to_json(const SingularityReport& r) {
    json j;
    j["verdict"] = to_string(r.verdict);
    if (r.estimate) {
        const auto& e = *r.estimate;
        j["estimate"] = {{"T_hat", e.T_hat},
                         {"w_hat", vec_to_json(e.w_hat)},
                         {"T_linear", e.T_linear},
                         {"T_power", e.T_power},
                         {"power_exponent", e.power_exponent},
                         {"disagreement", e.disagreement},
                         {"frames_in_final_decade", e.frames_in_final_decade},
                         {"argmax_jumps", e.argmax_jumps}};
    } else
        j["estimate"] = nullptr;
    if (r.classification) {
        const auto& c = *r.classification;
        json mon = json::array();
        for (const auto& m : c.monitor) mon.push_back({{"time", m.time}, {"tau", m.tau}, {"value", m.value}});
        j["classification"] = {{"verdict", to_string(c.verdict)},
                               {"final_ratio", c.final_ratio},
                               {"final_growth", c.final_growth},
                               {"drift_exponent", c.drift_exponent},
                               {"monitor", std::move(mon)}};
    } else
        j["classification"] = nullptr;
    if (r.type1_curve)
        j["type1_curve"] = {{"sigma", r.type1_curve->sigma},
                            {"sigma_requested", r.type1_curve->sigma_requested},
                            {"time", r.type1_curve->time},
                            {"origin", vec_to_json(r.type1_curve->origin)}};
    else
        j["type1_curve"] = nullptr;
    j["blowup_match"] = r.blowup_match ? model_fit_to_json(*r.blowup_match) : json(nullptr);
    json fits = json::array();
    for (const auto& [sigma, f] : r.type1_fits) {
        json fj = model_fit_to_json(f);
        fj["sigma"] = sigma;
        fits.push_back(std::move(fj));
    }
    j["type1_fits"] = std::move(fits);
    j["type2_match"] = r.type2_match ? model_fit_to_json(*r.type2_match) : json(nullptr);
    j["blowdown_match"] = r.blowdown_match ? model_fit_to_json(*r.blowdown_match) : json(nullptr);
    j["blowdown_to_type1"] = optional_number(r.blowdown_to_type1);
    j["type2_unstable"] = r.type2_unstable;
    j["notes"] = r.notes;
    return j;
}

json soliton_to_json(const SolitonProfile& p) {
    json j = curve_to_json(p.curve);
    j["soliton"] = {{"kind", to_string(p.spec.kind)},
                    {"lambda", p.spec.lambda},
                    {"alpha", optional_number(p.spec.alpha)},
                    {"residual", p.residual}};
    return j;
}

std::filesystem::path manifest_path_for(const std::filesystem::path& trajectory) {
    auto p = trajectory;
    p.replace_extension(".manifest.json");
    return p;
}

void write_trajectory_lines(const std::filesystem::path& path, const Trajectory& traj) {
    std::ostringstream out;
    for (const auto& s : traj.snapshots) out << snapshot_to_json(s).dump() << '\n';
    write_text(path, out.str());
}

Trajectory read_trajectory(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());
    Trajectory traj;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            traj.snapshots.push_back(snapshot_from_json(json::parse(line)));
        } catch (const std::exception& e) {
            throw FormatError(path.string() + ":" + std::to_string(n) + ": " + e.what());
        }
    }
    if (traj.snapshots.empty()) throw FormatError(path.string() + " holds no snapshots");
    const auto mpath = manifest_path_for(path);
    if (!std::filesystem::exists(mpath))
        throw FormatError("missing manifest " + mpath.string() + " (it carries the termination record)");
    traj.termination = termination_from_json(need(read_json(mpath), "termination"));
    return traj;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path.string());
    out << text;
    if (!out) throw FormatError("write failed: " + path.string());
}

json read_json(const std::filesystem::path& path) {
    try {
        return json::parse(read_text(path));
    } catch (const json::exception& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 failed");
    std::ostringstream s;
    for (unsigned int i = 0; i < len; ++i) s << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return s.str();
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(read_text(path)); }

}  // namespace lmcf
