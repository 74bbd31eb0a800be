// Command-line front end: run scenario configs, shoot solitons, analyse
// saved trajectories.

#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lmcf/io.hpp"
#include "lmcf/plots.hpp"
#include "lmcf/scenarios.hpp"
#include "lmcf/solitons.hpp"

using namespace lmcf;

namespace {

int report_outcome(const ScenarioOutcome& out) {
    std::printf("output: %s\n", out.directory.string().c_str());
    if (out.trajectory) {
        const auto& t = out.trajectory->termination;
        std::printf("stopped: %s at t = %.10g after %zu steps (%zu snapshots)\n", to_string(t.reason).c_str(), t.time,
                    t.steps, out.trajectory->snapshots.size());
    }
    if (out.report) {
        std::printf("verdict: %s\n", to_string(out.report->verdict).c_str());
        if (out.report->estimate)
            std::printf("T_hat = %.10g, w_hat = (%.4g, %.4g)\n", out.report->estimate->T_hat,
                        out.report->estimate->w_hat.x, out.report->estimate->w_hat.y);
    }
    for (const auto& c : out.checks)
        std::printf("[%s] %s: %s\n", c.passed ? "ok" : "FAILED", c.name.c_str(), c.detail.c_str());
    if (!out.error.empty()) std::fprintf(stderr, "error: %s\n", out.error.c_str());
    std::printf("wall clock %.2f s, exit status %d\n", out.wall_seconds, out.exit_status);
    return out.exit_status;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> v;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) v.push_back(std::stod(item));
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equivariant Lagrangian mean curvature flow: simulation and singularity analysis"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "Run a scenario config (JSON)");
    std::string config_path;
    run_cmd->add_option("config", config_path, "scenario config file")->required()->check(CLI::ExistingFile);

    auto* sol_cmd = app.add_subcommand("soliton", "Construct a soliton profile");
    std::string kind;
    std::optional<double> alpha, lambda;
    double c_param = 1.0 / 3.0, window = 4.0;
    std::string out_path, alphas;
    bool table = false;
    sol_cmd->add_option("kind", kind, "minimal, shrinker, expander or translator")->required();
    sol_cmd->add_option("--alpha", alpha, "asymptotic opening angle (expanders)");
    sol_cmd->add_option("--lambda", lambda, "soliton constant (shrinkers: circle of radius sqrt(-2/lambda))");
    sol_cmd->add_option("--c", c_param, "Lawlor parameter (minimal)");
    sol_cmd->add_option("--window", window, "half-width of the Lawlor profile (minimal)");
    sol_cmd->add_option("--out", out_path, "profile JSON path; the residual report goes next to it");
    sol_cmd->add_flag("--table", table, "print alpha, vertex_distance, residual as CSV (expanders)");
    sol_cmd->add_option("--alphas", alphas, "comma-separated angles for --table");

    auto* an_cmd = app.add_subcommand("analyze", "Analyse a trajectory (JSON lines + manifest)");
    std::string traj_path, report_path, plots_dir;
    an_cmd->add_option("trajectory", traj_path, "trajectory.jsonl")->required()->check(CLI::ExistingFile);
    an_cmd->add_option("--report", report_path, "report JSON path (default: report.json next to the trajectory)");
    an_cmd->add_option("--plots", plots_dir, "directory for SVG plots");

    auto* sc_cmd = app.add_subcommand("scenario", "Built-in scenarios");
    sc_cmd->require_subcommand(1);
    auto* sc_list = sc_cmd->add_subcommand("list", "List built-in scenarios");
    auto* sc_show = sc_cmd->add_subcommand("show", "Print a built-in scenario as a config file");
    auto* sc_run = sc_cmd->add_subcommand("run", "Run a built-in scenario");
    std::string scenario_name;
    sc_show->add_option("name", scenario_name)->required();
    sc_run->add_option("name", scenario_name)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return report_outcome(run_scenario(load_scenario(config_path)));

        if (sc_list->parsed()) {
            for (const auto& s : builtin_scenarios()) std::printf("%-18s %s\n", s.name.c_str(), s.description.c_str());
            std::printf("output root: %s (override with %s)\n", output_root().string().c_str(), output_root_variable);
            return 0;
        }
        if (sc_show->parsed()) {
            std::cout << scenario_to_json(builtin_scenario(scenario_name)).dump(2) << '\n';
            return 0;
        }
        if (sc_run->parsed()) return report_outcome(run_scenario(builtin_scenario(scenario_name)));

        if (an_cmd->parsed()) {
            const Trajectory traj = read_trajectory(traj_path);
            const SingularityReport rep = analyze(traj);
            const std::filesystem::path rp =
                report_path.empty() ? std::filesystem::path(traj_path).parent_path() / "report.json" : std::filesystem::path(report_path);
            write_json(rp, report_to_json(rep));
            std::printf("verdict %s, report %s\n", to_string(rep.verdict).c_str(), rp.string().c_str());
            if (!plots_dir.empty())
                for (const auto& p : emit_plots(traj, rep, plots_dir)) std::printf("plot %s\n", p.string().c_str());
            return 0;
        }

        if (sol_cmd->parsed()) {
            const SolitonKind k = soliton_kind_from_string(kind);
            if (table) {
                if (k != SolitonKind::expander) throw SolitonError("--table applies to expanders");
                std::vector<double> list = alphas.empty() ? std::vector<double>{} : parse_list(alphas);
                if (list.empty())
                    for (int i = 1; i <= 15; ++i) list.push_back(0.1 * i);
                std::printf("alpha,vertex_distance,residual\n");
                for (double a : list) {
                    const auto shot = expander_for_angle(a);
                    std::printf("%.10g,%.12g,%.3e\n", a, shot.vertex_distance, shot.profile.residual);
                }
                return 0;
            }
            SolitonProfile prof;
            json extra = json::object();
            switch (k) {
                case SolitonKind::minimal: prof = lawlor_profile(c_param, window); break;
                case SolitonKind::shrinker: prof = circle_shrinker(lambda.value_or(-0.5)); break;
                case SolitonKind::translator: prof = grim_reaper(); break;
                case SolitonKind::expander: {
                    if (!alpha) throw SolitonError("expanders need --alpha");
                    const auto shot = expander_for_angle(*alpha);
                    prof = shot.profile;
                    extra["vertex_distance"] = shot.vertex_distance;
                    if (shot.opening_angle) extra["opening_angle"] = *shot.opening_angle;
                    break;
                }
            }
            json residual{{"kind", to_string(prof.spec.kind)}, {"lambda", prof.spec.lambda}, {"residual", prof.residual},
                          {"points", prof.curve.size()}};
            residual.update(extra);
            const std::filesystem::path op =
                out_path.empty() ? output_root() / "solitons" / (to_string(k) + ".json") : std::filesystem::path(out_path);
            write_json(op, soliton_to_json(prof));
            auto rp = op;
            rp.replace_extension(".residual.json");
            write_json(rp, residual);
            std::printf("profile %s\nresidual %s (%.3e)\n", op.string().c_str(), rp.string().c_str(), prof.residual);
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
