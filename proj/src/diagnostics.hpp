#pragma once

// Integral identities and conservation laws as assertable checks: the
// Minkowski-type identity, total curvature, and the per-flow conservation
// suites evaluated along trajectories.

#include <string>
#include <vector>

#include "curves.hpp"
#include "flow3d.hpp"

namespace legflow {

struct IdentityReport {
    std::string name;
    double value = 0.0;      // measured deviation (absolute)
    double tolerance = 0.0;
    bool pass = false;
    double t = 0.0;          // time of the worst deviation, when applicable
};

// int (1 + k g(gamma, J gamma_dot)) ds over one fundamental period. Vanishes
// for closed-projection Legendrian curves; depends only on the projection.
double minkowski_residual(const ClosedCurve& c);

// int k ds over one period; equals 2*pi * turning number of the projection.
double total_curvature(const ClosedCurve& c);

// Winding of the projection tangent, counted independently of curvature
// quadrature (angle unwrapping).
int turning_number(const ClosedCurve& c);

// Identity checks for a single curve (used by the `verify` command).
std::vector<IdentityReport> identity_suite(const ClosedCurve& c);

enum class FlowKind { Expanding, Rescaled };

// Conservation laws along a trajectory. For the rescaled suite, passing the
// matching raw (expanding) trajectory enables the curvature dilation check.
std::vector<IdentityReport> conservation_suite(const FlowTrajectory& traj, FlowKind kind,
                                               const FlowTrajectory* raw = nullptr);

std::string format_report(const IdentityReport& r);

}  // namespace legflow
