#pragma once

// Geodesics of the model space: Euclidean helices with vertical axis
// (nonzero constant curvature) and horizontal straight lines (zero
// curvature), the vertical component of geodesic variation fields, and
// least-squares helix fitting used to measure flow limits.

#include <array>
#include <vector>

#include "curves.hpp"

namespace legflow {

struct HelixParams {
    double center_x = 0.0, center_y = 0.0;
    double radius = 0.0;       // 1/|k|
    int curvature_sign = +1;
    double pitch_rate = 0.0;   // dz/ds; -1/k for an axis through the origin
    double z0 = 0.0;           // z at the s = 0 sample
};

// Geodesic of curvature k != 0: projection is the circle of radius 1/|k|
// centered at the origin, z(s) = z0 - s/k. Closed in projection after
// n_turns turns; the vertical holonomy is recorded.
ClosedCurve make_helix(double k, double z0, int n_turns, int n_samples);

// Horizontal straight line through `basepoint` with unit planar direction
// (cos angle, sin angle); samples over s in [0, s_max].
struct OpenCurve {
    std::vector<double> x, y, z;
    double s_max = 0.0;

    int size() const { return static_cast<int>(x.size()); }
};
OpenCurve make_horizontal_line(double angle, const std::array<double, 3>& basepoint,
                               double s_max = 1.0, int n_samples = 129);

// Horizontality residual of an open sampled curve (central differences).
double open_horizontality_max(const OpenCurve& c);
// Signed curvature of the open curve's projection (central differences).
std::vector<double> open_curvature(const OpenCurve& c);

// Vertical component g(V, T)(s) of the geodesic variation field, with
// alpha = k^2 + 2W. C0 across alpha = 0 (all branches limit to s^2/2).
double variation_vertical(double alpha, double s);

// Integrates g''' + alpha g' = 0 from (g, g', g'') = (0, 0, 1) with RK4 and
// returns the sup deviation from the closed form over [0, s_max].
double variation_ode_deviation(double alpha, double s_max, double step = 1e-3);

struct HelixFit {
    HelixParams params;
    double rms = 0.0;              // root-mean-square 3D deviation
    double rms_over_length = 0.0;
};

// Algebraic circle fit refined by Gauss-Newton, plus a linear fit of z
// against swept arc length. Throws on degenerate (collinear) projections.
HelixFit fit_helix(const ClosedCurve& c);

// sup |nabla_{gamma_dot} gamma_dot - k J gamma_dot| over the samples;
// zero for geodesics up to discretization.
double geodesic_residual(const ClosedCurve& c);

}  // namespace legflow
