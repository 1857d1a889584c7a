#pragma once

// Planar inverse-curvature flow dgamma/dt = -(1/k) n (outward speed 1/k),
// the projected dynamics of the Legendrian expanding flow. Two backends:
// an explicit RK4 parametric solver for general immersed curves with
// nonvanishing curvature, and an exact spectral evolution of the support
// function for strictly convex data, used to cross-validate the solver.

#include <vector>

#include "curves.hpp"

namespace legflow {

// h(theta) = sum_m cos_c[m] cos(m theta) + sin_c[m] sin(m theta).
// Strict convexity means rho = h + h'' > 0 everywhere.
struct SupportFunction {
    std::vector<double> cos_c{0.0};
    std::vector<double> sin_c{0.0};

    int max_mode() const { return static_cast<int>(cos_c.size()) - 1; }
    double eval(double theta) const;
    double eval_derivative(double theta) const;
    double curvature_radius(double theta) const;  // rho = h + h''
    double min_curvature_radius(int grid = 4096) const;
};

struct SolverConfig {
    double dt = 1e-3;         // step cap; the effective step also obeys the CFL bound
    double t_end = 1.0;
    int outputs = 10;         // snapshots at i * t_end / outputs, i = 0..outputs
    double k_floor = 1e-4;    // minimal admissible |k|; below it the flow is singular
    double cfl_safety = 0.25; // dt <= cfl_safety * (min k)^2 * (min ds)^2
    bool shape_mode = false;  // redistribute samples to uniform arc length per step
    DerivScheme scheme = DerivScheme::Spectral;
};

struct PlanarSnapshot {
    double t = 0.0;
    PlanarCurve curve;
    double length = 0.0;
    double k_min = 0.0;
    double k_max = 0.0;
};

struct PlanarTrajectory {
    std::vector<PlanarSnapshot> snapshots;
};

std::vector<double> planar_speed(const PlanarCurve& c);
std::vector<double> planar_curvature(const PlanarCurve& c);

// The flow's velocity field on given positions, plus the vertical basepoint
// rate (1/k) <gamma, gamma_s> at sample 0 needed by the horizontal lift.
struct ImcfField {
    std::vector<double> vx, vy;
    double basepoint_rate = 0.0;
};
ImcfField imcf_field(const std::vector<double>& x, const std::vector<double>& y,
                     DerivScheme scheme, double k_floor, double t_now);

// Largest stable explicit step for the current curve.
double cfl_bound(const PlanarCurve& c, const SolverConfig& cfg);

// One explicit RK4 step. Pure normal motion; in shape mode the samples are
// redistributed to uniform arc length afterwards (sample 0 stays put).
PlanarCurve step_parametric(const PlanarCurve& c, double dt, const SolverConfig& cfg = {},
                            double t_now = 0.0);

PlanarTrajectory evolve_parametric(const PlanarCurve& c, const SolverConfig& cfg);

// Support function of a strictly convex counterclockwise curve, recovered
// through the normal-angle parameterization (spectrally accurate).
SupportFunction support_transform(const PlanarCurve& c, int n_max = 64);

// gamma(theta) = h nu + h' nu_perp on a uniform normal-angle grid.
PlanarCurve support_to_curve(const SupportFunction& h, int n_samples,
                             DerivScheme scheme = DerivScheme::Spectral);

// Exact flow of the support equation dh/dt = h + h_theta_theta: mode m is
// multiplied by exp((1 - m^2) t). Checks convexity on [0, t] a posteriori.
SupportFunction evolve_support_exact(const SupportFunction& h0, double t);

// Oracle-backed trajectory (states reconstructed on n_samples points).
PlanarTrajectory evolve_support(const SupportFunction& h0, int n_samples,
                                const SolverConfig& cfg);

PlanarCurve resample_uniform_arclength(const PlanarCurve& c);

// Symmetric polyline Hausdorff distance; parameterization-free shape metric.
double hausdorff_distance(const PlanarCurve& a, const PlanarCurve& b);

}  // namespace legflow
