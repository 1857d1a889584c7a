#pragma once

// Static SVG output: overlaid curve projections and log-scale diagnostic
// time series. Plain polylines, no external renderer.

#include <string>
#include <vector>

#include "flow3d.hpp"
#include "intrinsic.hpp"

namespace legflow {

struct SeriesPlot {
    std::string label;
    std::vector<double> t;
    std::vector<double> value;
};

// One polyline per trajectory state (xy-projections), equal-aspect viewBox.
void write_projection_svg(const FlowTrajectory& traj, const std::string& path, bool timestamp);

// Time on the x-axis, log10 of |value| on the y-axis.
void write_series_svg(const std::vector<SeriesPlot>& series, const std::string& path,
                      bool timestamp);

// phi(t) extremes on a log-scale axis for an intrinsic run.
void write_intrinsic_svg(const IntrinsicRun& run, const std::string& path, bool timestamp);

}  // namespace legflow
