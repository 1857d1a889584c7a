#pragma once

// Built-in synthetic curves so runs and tests need no external data.

#include <cstdint>

#include "curves.hpp"
#include "planar.hpp"

namespace legflow {

// Circle of given radius and center, counterclockwise.
PlanarCurve circle_curve(int n, double radius, double cx = 0.0, double cy = 0.0);

// Closed positive-curvature curve of turning number two (non-convex):
// tangent angle 4*pi*u, speed 2*pi*(1 + amplitude*cos(2*pi*u)); its
// curvature is 2 / (1 + amplitude*cos(2*pi*u)). Requires |amplitude| < 1.
PlanarCurve limacon_curve(int n, double amplitude);

// Zero-area figure eight (x, y) = (sin(4*pi*u)/2, sin(2*pi*u)).
PlanarCurve figure_eight_curve(int n);

// Smooth random loop from seeded Fourier coefficients (modes decay as m^-2).
PlanarCurve random_loop(int n, int max_mode, std::uint32_t seed);

// Doubly traversed circle (turning number two, total curvature 4*pi).
PlanarCurve double_circle_curve(int n, double radius);

// Lift helpers.
ClosedCurve circle_lift(int n, double radius, double cx = 0.0, double cy = 0.0, double z0 = 0.0);
ClosedCurve support_lift(const SupportFunction& h, int n, double z0 = 0.0);

}  // namespace legflow
