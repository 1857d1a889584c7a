#pragma once

// Discrete curve containers shared by the geometry and solver modules.
// All curves are sampled on the uniform periodic grid u_j = j/n, u in [0,1).

#include <vector>

#include "fourier.hpp"

namespace legflow {

// Closed curve in model coordinates (x, y, z). The z samples cover one
// fundamental period; z(u+1) - z(u) = holonomy, so z - holonomy*u is the
// periodic part. Nonzero holonomy is ordinary data, not an error: a closed
// positive-area projection forces holonomy = -2*area on any horizontal lift.
struct ClosedCurve {
    std::vector<double> x, y, z;
    std::vector<double> metric_weights;  // |gamma'(u)| in g_theta, per unit u
    double holonomy = 0.0;
    DerivScheme scheme = DerivScheme::Spectral;

    int size() const { return static_cast<int>(x.size()); }
    double u(int j) const { return static_cast<double>(j) / size(); }
};

// xy-projection. orientation = +1 for counterclockwise traversal.
struct PlanarCurve {
    std::vector<double> x, y;
    int orientation = +1;
    DerivScheme scheme = DerivScheme::Spectral;

    int size() const { return static_cast<int>(x.size()); }
    double u(int j) const { return static_cast<double>(j) / size(); }
};

// Builds a curve from coordinate samples: validates the grid (even n >= 16),
// computes metric weights, checks the immersion condition.
ClosedCurve make_closed_curve(std::vector<double> x, std::vector<double> y,
                              std::vector<double> z, double holonomy,
                              DerivScheme scheme = DerivScheme::Spectral);

PlanarCurve make_planar_curve(std::vector<double> x, std::vector<double> y,
                              DerivScheme scheme = DerivScheme::Spectral);

// Periodic derivative of the z samples under the declared holonomy.
std::vector<double> z_derivative(const ClosedCurve& c);

// 1/2 * integral (x y_u - y x_u) du of the projection.
double signed_area(const std::vector<double>& x, const std::vector<double>& y,
                   DerivScheme scheme = DerivScheme::Spectral);
double signed_area(const PlanarCurve& c);
double signed_area(const ClosedCurve& c);

// Mismatch between z extrapolated across the wrap and z(0) + holonomy.
// Large values mean the declared holonomy contradicts the samples.
double wrap_mismatch(const ClosedCurve& c);

namespace detail {
// Signed curvature of (x, y) by arc-length derivatives; throws on a
// degenerate sample, naming its index.
std::vector<double> curvature_xy(const std::vector<double>& x, const std::vector<double>& y,
                                 DerivScheme scheme);
std::vector<double> speed_xy(const std::vector<double>& x, const std::vector<double>& y,
                             DerivScheme scheme);
}  // namespace detail

}  // namespace legflow
