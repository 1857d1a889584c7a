#pragma once

// Versioned text formats:
//   legflow-curve v1    header `n=<int> holonomy=<float> [planar=true]`,
//                       then n rows `u x y z` (17 significant digits)
//   legflow-support v1  rows `n a_n b_n`
//   legflow-field v1    header `n=<int> W=<float> t=<float>`, rows `u m0 phi`
// Trajectory directories hold one curve file per output time plus
// diagnostics.csv; intrinsic runs hold field files plus diagnostics.csv.

#include <string>
#include <vector>

#include "curves.hpp"
#include "diagnostics.hpp"
#include "flow3d.hpp"
#include "geodesics.hpp"
#include "intrinsic.hpp"
#include "planar.hpp"

namespace legflow {

void save_curve(const ClosedCurve& c, const std::string& path);
void save_planar_curve(const PlanarCurve& c, const std::string& path);

struct LoadedCurve {
    bool planar = false;
    ClosedCurve curve;         // set when !planar
    PlanarCurve planar_curve;  // set when planar
};
LoadedCurve load_curve(const std::string& path);

void save_support(const SupportFunction& h, const std::string& path);
SupportFunction load_support(const std::string& path);

void save_field(const CurvatureField& f, double W, const std::string& path);
struct LoadedField {
    CurvatureField field;
    double W = 0.0;
};
LoadedField load_field(const std::string& path);

// Directory layouts. `timestamp` controls the `# generated ...` comment in
// CSV and SVG outputs (off = byte-reproducible).
void write_trajectory(const FlowTrajectory& traj, const std::string& dir, bool timestamp);
void write_intrinsic_run(const IntrinsicRun& run, const std::string& dir, bool timestamp);
void write_reports_csv(const std::vector<IdentityReport>& reports, const std::string& path,
                       bool timestamp);
void write_line_samples(const OpenCurve& line, const std::string& path);

std::string format_double(double v);  // %.17g

}  // namespace legflow
