#include "diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "errors.hpp"
#include "heis.hpp"

namespace legflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

IdentityReport make_report(std::string name, double value, double tol, double t) {
    IdentityReport r;
    r.name = std::move(name);
    r.value = value;
    r.tolerance = tol;
    r.pass = std::abs(value) <= tol;
    r.t = t;
    return r;
}

}  // namespace

double minkowski_residual(const ClosedCurve& c) {
    const auto xu = periodic_derivative(c.x, 1, c.scheme);
    const auto yu = periodic_derivative(c.y, 1, c.scheme);
    const auto k = curvature_of(c);
    std::vector<double> integrand(c.size());
    for (int j = 0; j < c.size(); ++j) {
        const double sigma = std::hypot(xu[j], yu[j]);
        // g(gamma, J gamma_dot) = y x_s - x y_s, horizontal pairing.
        const double g = (c.y[j] * xu[j] - c.x[j] * yu[j]) / sigma;
        integrand[j] = (1.0 + k[j] * g) * sigma;
    }
    return periodic_integral(integrand);
}

double total_curvature(const ClosedCurve& c) {
    const auto k = curvature_of(c);
    const auto sigma = detail::speed_xy(c.x, c.y, c.scheme);
    std::vector<double> integrand(c.size());
    for (int j = 0; j < c.size(); ++j) integrand[j] = k[j] * sigma[j];
    return periodic_integral(integrand);
}

int turning_number(const ClosedCurve& c) {
    const auto xu = periodic_derivative(c.x, 1, c.scheme);
    const auto yu = periodic_derivative(c.y, 1, c.scheme);
    const auto principal = [](double d) {
        while (d <= -std::numbers::pi) d += kTwoPi;
        while (d > std::numbers::pi) d -= kTwoPi;
        return d;
    };
    double total = 0.0;
    double prev = std::atan2(yu[0], xu[0]);
    for (int j = 1; j <= c.size(); ++j) {
        const double ang = std::atan2(yu[j % c.size()], xu[j % c.size()]);
        total += principal(ang - prev);
        prev = ang;
    }
    return static_cast<int>(std::lround(total / kTwoPi));
}

std::vector<IdentityReport> identity_suite(const ClosedCurve& c) {
    std::vector<IdentityReport> out;
    const double length = curve_length(c);

    const auto horiz = horizontality_residual(c);
    out.push_back(make_report("horizontality", horiz.max_abs, horiz.tolerance, 0.0));

    out.push_back(make_report("minkowski", minkowski_residual(c), 1e-6 * length, 0.0));

    const int m = turning_number(c);
    out.push_back(make_report("total_curvature", total_curvature(c) - kTwoPi * m,
                              1e-8 * std::max(1, std::abs(m)), 0.0));

    const double area = signed_area(c);
    out.push_back(make_report("holonomy_area",
                              (c.holonomy + 2.0 * area) / (length + std::abs(c.holonomy)), 1e-8,
                              0.0));
    return out;
}

std::vector<IdentityReport> conservation_suite(const FlowTrajectory& traj, FlowKind kind,
                                               const FlowTrajectory* raw) {
    if (traj.states.size() < 2) throw InvalidArgument("trajectory needs at least two states");
    std::vector<IdentityReport> out;
    const std::size_t n = traj.states.size();

    // Worst horizontality residual relative to length, any time.
    {
        double worst = 0.0, at = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = traj.diagnostics[i].leg_residual / traj.diagnostics[i].length;
            if (v > worst) {
                worst = v;
                at = traj.times[i];
            }
        }
        out.push_back(make_report("legendrian", worst, kLegendrianRelTol, at));
    }

    // Holonomy = -2 * enclosed area, any time.
    {
        double worst = 0.0, at = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double hol = traj.states[i].holonomy;
            const double v = std::abs(hol + 2.0 * signed_area(traj.states[i])) /
                             (traj.diagnostics[i].length + std::abs(hol));
            if (v > worst) {
                worst = v;
                at = traj.times[i];
            }
        }
        out.push_back(make_report("holonomy_area", worst, 1e-8, at));
    }

    if (kind == FlowKind::Expanding) {
        // d(log L)/dt = 1, centered differences at interior outputs.
        double worst = 0.0, at = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double dt = traj.times[i + 1] - traj.times[i - 1];
            const double rate =
                (std::log(traj.diagnostics[i + 1].length) -
                 std::log(traj.diagnostics[i - 1].length)) / dt;
            if (std::abs(rate - 1.0) > worst) {
                worst = std::abs(rate - 1.0);
                at = traj.times[i];
            }
        }
        out.push_back(make_report("length_law", worst, 1e-3, at));
        return out;
    }

    // Rescaled suite.
    {
        double worst = 0.0, at = 0.0;
        const double L0 = traj.diagnostics[0].length;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = std::abs(traj.diagnostics[i].length / L0 - 1.0);
            if (v > worst) {
                worst = v;
                at = traj.times[i];
            }
        }
        out.push_back(make_report("length_constancy", worst, 1e-6, at));
    }
    {
        double worst = 0.0, at = 0.0;
        const double tc0 = traj.diagnostics[0].total_curvature;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = std::abs(traj.diagnostics[i].total_curvature - tc0);
            if (v > worst) {
                worst = v;
                at = traj.times[i];
            }
        }
        out.push_back(make_report("total_curvature_constancy", worst, 1e-6, at));
    }
    {
        double worst = 0.0, at = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = std::abs(traj.diagnostics[i].minkowski) / traj.diagnostics[i].length;
            if (v > worst) {
                worst = v;
                at = traj.times[i];
            }
        }
        out.push_back(make_report("minkowski_zero", worst, 1e-6, at));
    }
    {
        // d/ds g(gamma, T) = g(gamma, J gamma_dot): horizontality by another
        // route, normalized by length.
        double worst = 0.0, at = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const ClosedCurve& c = traj.states[i];
            const auto xu = periodic_derivative(c.x, 1, c.scheme);
            const auto yu = periodic_derivative(c.y, 1, c.scheme);
            const auto zu = z_derivative(c);
            double sup = 0.0;
            for (int j = 0; j < c.size(); ++j) {
                const double sigma = std::hypot(xu[j], yu[j]);
                const double lhs = zu[j] / sigma;
                const double rhs = (c.y[j] * xu[j] - c.x[j] * yu[j]) / sigma;
                sup = std::max(sup, std::abs(lhs - rhs));
            }
            const double v = sup / traj.diagnostics[i].length;
            if (v > worst) {
                worst = v;
                at = traj.times[i];
            }
        }
        out.push_back(make_report("vertical_identity", worst, 1e-8, at));
    }
    {
        // dL/dt equals the Minkowski integral (both near zero here).
        double worst = 0.0, at = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double dt = traj.times[i + 1] - traj.times[i - 1];
            const double rate =
                (traj.diagnostics[i + 1].length - traj.diagnostics[i - 1].length) / dt;
            const double v =
                std::abs(rate - traj.diagnostics[i].minkowski) / traj.diagnostics[i].length;
            if (v > worst) {
                worst = v;
                at = traj.times[i];
            }
        }
        out.push_back(make_report("length_derivative_identity", worst, 1e-6, at));
    }
    if (raw) {
        if (raw->states.size() != n)
            throw InvalidArgument("raw and rescaled trajectories differ in output count");
        double worst = 0.0, at = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto k_raw = curvature_of(raw->states[i]);
            const auto k_scaled = curvature_of(traj.states[i]);
            const double factor = std::exp(traj.times[i]);
            double sup = 0.0, scale = 0.0;
            for (int j = 0; j < traj.states[i].size(); ++j) {
                sup = std::max(sup, std::abs(k_scaled[j] - factor * k_raw[j]));
                scale = std::max(scale, std::abs(k_scaled[j]));
            }
            const double v = sup / scale;
            if (v > worst) {
                worst = v;
                at = traj.times[i];
            }
        }
        out.push_back(make_report("curvature_dilation", worst, 1e-8, at));
    }
    return out;
}

std::string format_report(const IdentityReport& r) {
    std::ostringstream ss;
    ss.precision(3);
    ss << (r.pass ? "[pass] " : "[FAIL] ") << r.name << ": |value| = " << std::scientific
       << std::abs(r.value) << ", tol = " << r.tolerance;
    if (r.t != 0.0) ss << ", worst at t = " << std::defaultfloat << r.t;
    return ss.str();
}

}  // namespace legflow
