#include "synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "errors.hpp"
#include "heis.hpp"

namespace legflow {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

PlanarCurve circle_curve(int n, double radius, double cx, double cy) {
    if (!(radius > 0.0)) throw InvalidArgument("radius must be positive");
    std::vector<double> x(n), y(n);
    for (int j = 0; j < n; ++j) {
        const double a = kTwoPi * j / n;
        x[j] = cx + radius * std::cos(a);
        y[j] = cy + radius * std::sin(a);
    }
    return make_planar_curve(std::move(x), std::move(y));
}

PlanarCurve limacon_curve(int n, double a) {
    if (!(std::abs(a) < 1.0)) throw InvalidArgument("|amplitude| must be < 1");
    // Closed forms of int 2*pi*(1 + a cos(2*pi*w)) * {cos, sin}(4*pi*w) dw.
    std::vector<double> x(n), y(n);
    for (int j = 0; j < n; ++j) {
        const double p = kTwoPi * j / n;  // 2*pi*u
        x[j] = 0.5 * std::sin(2.0 * p) + a * (std::sin(3.0 * p) / 6.0 + 0.5 * std::sin(p));
        y[j] = 0.5 * (1.0 - std::cos(2.0 * p)) + a * ((1.0 - std::cos(3.0 * p)) / 6.0 +
                                                      0.5 * (1.0 - std::cos(p)));
    }
    return make_planar_curve(std::move(x), std::move(y));
}

PlanarCurve figure_eight_curve(int n) {
    std::vector<double> x(n), y(n);
    for (int j = 0; j < n; ++j) {
        const double p = kTwoPi * j / n;
        x[j] = 0.5 * std::sin(2.0 * p);
        y[j] = std::sin(p);
    }
    return make_planar_curve(std::move(x), std::move(y));
}

PlanarCurve random_loop(int n, int max_mode, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> x(n, 0.0), y(n, 0.0);
    for (int attempt = 0; attempt < 64; ++attempt) {
        for (int j = 0; j < n; ++j) {
            const double p = kTwoPi * j / n;
            x[j] = std::cos(p);
            y[j] = std::sin(p);
        }
        for (int m = 2; m <= max_mode; ++m) {
            const double ax = unit(rng) / (m * m), bx = unit(rng) / (m * m);
            const double ay = unit(rng) / (m * m), by = unit(rng) / (m * m);
            for (int j = 0; j < n; ++j) {
                const double p = kTwoPi * j / n;
                x[j] += ax * std::cos(m * p) + bx * std::sin(m * p);
                y[j] += ay * std::cos(m * p) + by * std::sin(m * p);
            }
        }
        try {
            return make_planar_curve(x, y);
        } catch (const PreconditionError&) {
            // not an immersion for this draw; try again
        }
    }
    throw InvalidArgument("failed to draw an immersed random loop");
}

PlanarCurve double_circle_curve(int n, double radius) {
    if (!(radius > 0.0)) throw InvalidArgument("radius must be positive");
    std::vector<double> x(n), y(n);
    for (int j = 0; j < n; ++j) {
        const double a = 2.0 * kTwoPi * j / n;
        x[j] = radius * std::cos(a);
        y[j] = radius * std::sin(a);
    }
    return make_planar_curve(std::move(x), std::move(y));
}

ClosedCurve circle_lift(int n, double radius, double cx, double cy, double z0) {
    return legendrian_lift(circle_curve(n, radius, cx, cy), z0);
}

ClosedCurve support_lift(const SupportFunction& h, int n, double z0) {
    return legendrian_lift(support_to_curve(h, n), z0);
}

}  // namespace legflow
