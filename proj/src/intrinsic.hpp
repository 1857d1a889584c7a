#pragma once

// Intrinsic evolution of phi = k^2 on a fixed parameter circle whose metric
// factor stretches exponentially: |gamma'(u, t)| = m0(u) * exp(t). Valid for
// any constant Webster curvature W; phi > 0 is required while the flow runs,
// and reaching the floor is a genuine breakdown (flow speed 1/k blows up),
// reported as a singularity rather than an error of the solver.

#include <string>
#include <vector>

#include "fourier.hpp"

namespace legflow {

struct WebsterParam {
    double W = 0.0;  // constant in space and time
};

struct CurvatureField {
    std::vector<double> phi;  // k^2 per sample
    std::vector<double> m0;   // initial metric factor per sample
    double t = 0.0;

    int size() const { return static_cast<int>(phi.size()); }
};

CurvatureField make_curvature_field(std::vector<double> phi, std::vector<double> m0,
                                    double t = 0.0);

struct IntrinsicConfig {
    double dt = 1e-3;          // step cap; effective step obeys the diffusion CFL
    double t_end = 1.0;
    int outputs = 10;
    double phi_floor = 1e-6;
    double cfl_safety = 0.25;  // dt <= cfl_safety * min(phi) * min(ds)^2
    DerivScheme scheme = DerivScheme::Spectral;
};

struct SingularityInfo {
    bool singular = false;
    double time = 0.0;
    int sample = -1;
    std::string message;
};

struct IntrinsicSnapshot {
    double t = 0.0;
    CurvatureField field;
    double phi_min = 0.0;
    double phi_max = 0.0;
    double dsphi_max = 0.0;  // sup |d phi / ds|
};

struct IntrinsicRun {
    std::vector<IntrinsicSnapshot> snapshots;
    SingularityInfo singularity;
    WebsterParam webster;
};

// One explicit RK4 step of
//   d phi/dt = phi^-1 phi_ss - (3/2) phi^-2 (phi_s)^2 - 2 phi - 4 W,
// with d/ds = (m0 exp(t))^-1 d/du evaluated spectrally at the stage times.
CurvatureField step_k2(const CurvatureField& f, WebsterParam W, double dt,
                       const IntrinsicConfig& cfg = {});

// Time stepping with adaptive CFL; snapshots at the requested output times.
// On breakdown the run is truncated and the singularity recorded.
IntrinsicRun evolve_k2(const CurvatureField& f0, WebsterParam W, const IntrinsicConfig& cfg);

// Exact solution of the spatially constant reduction:
// phi(t) = (phi0 + 2W) exp(-2t) - 2W.
double homogeneous_oracle(double phi0, double W, double t);

// Residuals of the stored trajectory against the evolution equations for
// k^2 and for k^-2 (centered time differences at interior snapshots).
struct ResidualSeries {
    std::vector<double> times;
    std::vector<double> eq_k2;      // sup-norm residual of the phi equation
    std::vector<double> eq_inv_k2;  // sup-norm residual of the 1/phi equation
};
ResidualSeries residual_eq43(const IntrinsicRun& run);

struct BoundViolation {
    double t = 0.0;
    std::string quantity;
    double value = 0.0;
};

struct BoundMonitor {
    double c0 = 0.0;    // bound on max phi: max(2|W|, max phi0)
    double C0 = 0.0;    // bound on max 1/phi when W < 0
    std::vector<BoundViolation> violations;
    double phi_limit_deviation = 0.0;  // |phi(end) - (-2W)| for W<0, sup phi(end) otherwise
    double dsphi_max_final = 0.0;
};

// Evaluates the decay/limit monitors over a finished run; never mutates it.
BoundMonitor bound_monitor_eval(const IntrinsicRun& run);

}  // namespace legflow
