#pragma once

// Geometry of the first Heisenberg group: the left-invariant frame
// {X1 = d_x + y d_z, X2 = d_y - x d_z, T = d_z}, the contact metric that
// declares it orthonormal, horizontality, curvature, the anisotropic
// dilation, and the horizontal (Legendrian) lift of planar curves.

#include <array>
#include <vector>

#include "curves.hpp"

namespace legflow {

// Tangent vector in frame components (a1, a2, aT).
struct FrameVector {
    double a1 = 0.0, a2 = 0.0, aT = 0.0;
};

// Frame components of a coordinate velocity at a point:
// a1 = vx, a2 = vy, aT = vz + x*vy - y*vx.
FrameVector frame_decompose(const std::array<double, 3>& point,
                            const std::array<double, 3>& velocity);

// Coordinate velocity of a frame vector at a point (inverse of the above).
std::array<double, 3> frame_compose(const std::array<double, 3>& point, const FrameVector& v);

// The complex structure: J X1 = X2, J X2 = -X1, J T = 0.
FrameVector apply_j(const FrameVector& v);

// g_theta inner product (the frame is orthonormal).
double frame_inner(const FrameVector& a, const FrameVector& b);
double frame_norm(const FrameVector& v);

struct HorizontalityReport {
    std::vector<double> residuals;  // z_u + x*y_u - y*x_u, per unit parameter
    double max_abs = 0.0;
    double tolerance = 0.0;  // absolute threshold: rel_tol * length
    bool legendrian = false;
};

// Default classification threshold, relative to curve length so that the
// flow rescaling does not reclassify curves.
inline constexpr double kLegendrianRelTol = 1e-8;

// Per-sample horizontality residual. Throws PreconditionError when the z
// samples contradict the declared holonomy (non-periodic z declared periodic).
HorizontalityReport horizontality_residual(const ClosedCurve& c,
                                           double rel_tol = kLegendrianRelTol);

// Signed curvature k = x_s y_ss - y_s x_ss of the xy-projection, by
// arc-length derivatives. A counterclockwise unit circle has k = +1.
std::vector<double> curvature_of(const ClosedCurve& c);

struct MetricAndLength {
    std::vector<double> weights;
    double length = 0.0;
};

// Recomputes |gamma'(u)| from the samples and the total length.
MetricAndLength metric_and_length(const ClosedCurve& c);
double curve_length(const ClosedCurve& c);
double curve_length(const PlanarCurve& c);

// Horizontal lift: z(u) = z0 + int_0^u (y x_w - x y_w) dw. The resulting
// holonomy equals -2 * signed area of the projection.
ClosedCurve legendrian_lift(const PlanarCurve& planar, double z0);

// Heisenberg dilation (x, y, z) -> (lambda x, lambda y, lambda^2 z).
// Lengths scale by lambda, curvature by 1/lambda, holonomy by lambda^2.
ClosedCurve dilate(const ClosedCurve& c, double lambda);

PlanarCurve projection(const ClosedCurve& c);

}  // namespace legflow
