#pragma once

// The Legendrian expanding flow in the Heisenberg group, realized the way
// its structure dictates: the projection evolves by planar inverse-curvature
// flow and the vertical component is recovered by the horizontal lift, with
// the basepoint z(u=0) advanced by its own material rate. The dilation with
// factor exp(-t) turns a run into the length-preserving flow. A direct 3D
// stepper for the rescaled equation is provided for cross-checking.

#include <array>
#include <vector>

#include "curves.hpp"
#include "heis.hpp"
#include "planar.hpp"

namespace legflow {

struct DiagnosticsRow {
    double t = 0.0;
    double length = 0.0;
    double k_min = 0.0;
    double k_max = 0.0;
    double leg_residual = 0.0;     // horizontality max_abs
    double minkowski = 0.0;        // int (1 + k g(gamma, J gamma_dot)) ds
    double total_curvature = 0.0;  // int k ds
    double holonomy = 0.0;
};

struct FlowTrajectory {
    std::vector<double> times;
    std::vector<ClosedCurve> states;
    std::vector<DiagnosticsRow> diagnostics;
};

// Vertical gauge of the lift: z at the u = 0 sample.
struct BasepointState {
    double z_base = 0.0;
};

DiagnosticsRow compute_diagnostics(const ClosedCurve& c, double t);

// Expanding flow. Requires Legendrian input within the lift tolerance and a
// projection with nonvanishing curvature. Throws SingularityError with the
// reached time if 1/k blows up.
FlowTrajectory evolve_expanding(const ClosedCurve& curve, const SolverConfig& cfg);

// Dilation by exp(-t) per state; diagnostics recomputed on rescaled states.
FlowTrajectory rescale_trajectory(const FlowTrajectory& traj);

// Coordinate velocity of the expanding flow on the fundamental domain
// (arc-length integral taken from the u = 0 sample).
std::vector<std::array<double, 3>> expanding_velocity(const ClosedCurve& c);

// One explicit RK4 step of the rescaled equation keeping only the J- and
// T-components (the tangential part only reparameterizes). The vertical
// holonomy is advanced alongside at the rate -2 * (int 1/k ds + holonomy).
ClosedCurve step_rescaled_direct(const ClosedCurve& c, double dt, const SolverConfig& cfg = {},
                                 double t_now = 0.0);

FlowTrajectory evolve_rescaled_direct(const ClosedCurve& c, const SolverConfig& cfg);

struct VelocityDecomposition {
    std::vector<double> tangential;  // g(v, gamma_dot)
    std::vector<double> j_normal;    // g(v, J gamma_dot)
    std::vector<double> vertical;    // g(v, T)
};

VelocityDecomposition normal_speed_decompose(
    const ClosedCurve& c, const std::vector<std::array<double, 3>>& velocity);

}  // namespace legflow
