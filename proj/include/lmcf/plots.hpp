#pragma once

// Static SVG figures: curve montages, the Type I monitor and rescaled
// curves against their fitted model.

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "lmcf/flow.hpp"
#include "lmcf/singularity.hpp"

namespace lmcf {

struct MontageOptions {
    std::size_t frames = 8;
    /// Also draw the -gamma branch, dashed.
    bool mirror = true;
    /// Print height/width next to each frame's time in the legend.
    bool annotate_aspect = true;
    /// Rescale every frame to unit extent about its own centroid (for collapsing curves).
    bool normalize = false;
};

/// Evenly spaced frames (by snapshot index, first and last always included).
std::string montage_svg(const Trajectory& traj, const MontageOptions& options = {});

/// log10 K^2 (T_hat - t) against log10 (T_hat - t).
std::string monitor_svg(const Classification& classification);

/// A rescaled curve (and its -gamma mirror) in the comparison window, with the fitted model.
std::string overlay_svg(const RescaledCurve& curve, const ModelFit& fit, double window_radius,
                        const std::string& title);

struct PlotOptions {
    MontageOptions montage;
    double type1_window = 3.0;
};

/// Writes montage.svg, monitor.svg and type1_overlay.svg (the last two when
/// the report has them) into `directory`; returns the paths written.
std::vector<std::filesystem::path> emit_plots(const Trajectory& traj, const SingularityReport& report,
                                              const std::filesystem::path& directory,
                                              const PlotOptions& options = {});

}  // namespace lmcf
