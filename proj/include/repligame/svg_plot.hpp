#pragma once

#include <string>

namespace repligame {

struct Trajectory;

enum class PlotKind { kStrategies, kPayoffDifferences, kLyapunov };

PlotKind plot_kind_from_string(const std::string& name);
std::string to_string(PlotKind kind);

/// Renders a self-contained SVG line chart of the trajectory.
std::string plot_svg(const Trajectory& trajectory, PlotKind kind, const std::string& title);

/// Writes the SVG to disk and returns its content digest.
std::string emit_plot(const Trajectory& trajectory, PlotKind kind, const std::string& title,
                      const std::string& path);

}  // namespace repligame
