#include "geodesics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"
#include "heis.hpp"

namespace legflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

ClosedCurve make_helix(double k, double z0, int n_turns, int n_samples) {
    if (k == 0.0)
        throw InvalidArgument("k = 0 is a horizontal line, use make_horizontal_line");
    if (n_turns < 1) throw InvalidArgument("n_turns must be >= 1");
    const double r = 1.0 / std::abs(k);
    const double sign = k > 0.0 ? 1.0 : -1.0;

    std::vector<double> x(n_samples), y(n_samples), z(n_samples);
    const double arc_per_period = kTwoPi * r * n_turns;
    for (int j = 0; j < n_samples; ++j) {
        const double u = static_cast<double>(j) / n_samples;
        const double angle = sign * kTwoPi * n_turns * u;
        x[j] = r * std::cos(angle);
        y[j] = r * std::sin(angle);
        z[j] = z0 - (1.0 / k) * arc_per_period * u;
    }
    const double holonomy = -(1.0 / k) * arc_per_period;
    return make_closed_curve(std::move(x), std::move(y), std::move(z), holonomy);
}

OpenCurve make_horizontal_line(double angle, const std::array<double, 3>& basepoint,
                               double s_max, int n_samples) {
    if (n_samples < 5) throw InvalidArgument("need at least 5 samples");
    const double dx = std::cos(angle), dy = std::sin(angle);
    OpenCurve c;
    c.s_max = s_max;
    c.x.resize(n_samples);
    c.y.resize(n_samples);
    c.z.resize(n_samples);
    // Horizontality z' + x y' - y x' = 0 along a straight projection gives a
    // constant z-slope y0*dx - x0*dy (the s-linear parts cancel).
    const double z_slope = basepoint[1] * dx - basepoint[0] * dy;
    for (int j = 0; j < n_samples; ++j) {
        const double s = s_max * j / (n_samples - 1);
        c.x[j] = basepoint[0] + s * dx;
        c.y[j] = basepoint[1] + s * dy;
        c.z[j] = basepoint[2] + s * z_slope;
    }
    return c;
}

double open_horizontality_max(const OpenCurve& c) {
    const int n = c.size();
    const double h = c.s_max / (n - 1);
    double worst = 0.0;
    for (int j = 1; j + 1 < n; ++j) {
        const double xd = (c.x[j + 1] - c.x[j - 1]) / (2.0 * h);
        const double yd = (c.y[j + 1] - c.y[j - 1]) / (2.0 * h);
        const double zd = (c.z[j + 1] - c.z[j - 1]) / (2.0 * h);
        worst = std::max(worst, std::abs(zd + c.x[j] * yd - c.y[j] * xd));
    }
    return worst;
}

std::vector<double> open_curvature(const OpenCurve& c) {
    const int n = c.size();
    const double h = c.s_max / (n - 1);
    std::vector<double> k(n, 0.0);
    for (int j = 1; j + 1 < n; ++j) {
        const double xd = (c.x[j + 1] - c.x[j - 1]) / (2.0 * h);
        const double yd = (c.y[j + 1] - c.y[j - 1]) / (2.0 * h);
        const double xdd = (c.x[j + 1] - 2.0 * c.x[j] + c.x[j - 1]) / (h * h);
        const double ydd = (c.y[j + 1] - 2.0 * c.y[j] + c.y[j - 1]) / (h * h);
        const double s2 = xd * xd + yd * yd;
        k[j] = (xd * ydd - yd * xdd) / (s2 * std::sqrt(s2));
    }
    k[0] = k[1];
    k[n - 1] = k[n - 2];
    return k;
}

double variation_vertical(double alpha, double s) {
    // Stable forms: 1 - cos x = 2 sin^2(x/2), cosh x - 1 = 2 sinh^2(x/2).
    if (alpha > 0.0) {
        const double half = 0.5 * std::sqrt(alpha) * s;
        const double sn = std::sin(half);
        return 2.0 * sn * sn / alpha;
    }
    if (alpha < 0.0) {
        const double half = 0.5 * std::sqrt(-alpha) * s;
        const double sh = std::sinh(half);
        return 2.0 * sh * sh / (-alpha);
    }
    return 0.5 * s * s;
}

double variation_ode_deviation(double alpha, double s_max, double step) {
    if (step <= 0.0 || s_max < 0.0) throw InvalidArgument("bad integration parameters");
    // y = (g, g', g''), y' = (g', g'', -alpha g'), from (0, 0, 1).
    double g = 0.0, gp = 0.0, gpp = 1.0;
    double s = 0.0;
    double worst = 0.0;
    auto rhs = [alpha](double, double b, double c, double& db, double& dc, double& dd) {
        db = b;
        dc = c;
        dd = -alpha * b;
    };
    while (s < s_max) {
        const double h = std::min(step, s_max - s);
        double k1g, k1p, k1q, k2g, k2p, k2q, k3g, k3p, k3q, k4g, k4p, k4q;
        rhs(s, gp, gpp, k1g, k1p, k1q);
        rhs(s + 0.5 * h, gp + 0.5 * h * k1p, gpp + 0.5 * h * k1q, k2g, k2p, k2q);
        rhs(s + 0.5 * h, gp + 0.5 * h * k2p, gpp + 0.5 * h * k2q, k3g, k3p, k3q);
        rhs(s + h, gp + h * k3p, gpp + h * k3q, k4g, k4p, k4q);
        g += h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
        gp += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        gpp += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
        s += h;
        worst = std::max(worst, std::abs(g - variation_vertical(alpha, s)));
    }
    return worst;
}

HelixFit fit_helix(const ClosedCurve& c) {
    const int n = c.size();

    // Algebraic (Kasa) circle fit: x^2 + y^2 = 2 a x + 2 b y + d.
    Eigen::MatrixXd A(n, 3);
    Eigen::VectorXd rhs(n);
    for (int j = 0; j < n; ++j) {
        A(j, 0) = 2.0 * c.x[j];
        A(j, 1) = 2.0 * c.y[j];
        A(j, 2) = 1.0;
        rhs(j) = c.x[j] * c.x[j] + c.y[j] * c.y[j];
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.singularValues()(2) < 1e-10 * svd.singularValues()(0))
        throw PreconditionError("degenerate projection: samples are collinear");
    Eigen::Vector3d sol = svd.solve(rhs);
    double cx = sol(0), cy = sol(1);
    double r = std::sqrt(std::max(0.0, sol(2) + cx * cx + cy * cy));

    // Gauss-Newton refinement of (cx, cy, r) on the geometric distances.
    for (int it = 0; it < 20; ++it) {
        Eigen::MatrixXd J(n, 3);
        Eigen::VectorXd res(n);
        for (int j = 0; j < n; ++j) {
            const double dx = c.x[j] - cx, dy = c.y[j] - cy;
            const double d = std::hypot(dx, dy);
            res(j) = d - r;
            J(j, 0) = -dx / d;
            J(j, 1) = -dy / d;
            J(j, 2) = -1.0;
        }
        const Eigen::Vector3d delta = J.colPivHouseholderQr().solve(-res);
        cx += delta(0);
        cy += delta(1);
        r += delta(2);
        if (delta.norm() < 1e-14 * (1.0 + r)) break;
    }
    if (!(r > 0.0)) throw PreconditionError("circle fit collapsed to a point");

    // Swept arc length from sample 0, then z = z0 + pitch * s by least squares.
    const auto sigma = detail::speed_xy(c.x, c.y, c.scheme);
    const Antiderivative arc = periodic_antiderivative(sigma);
    double s_mean = 0.0, z_mean = 0.0;
    for (int j = 0; j < n; ++j) {
        s_mean += arc.values[j];
        z_mean += c.z[j];
    }
    s_mean /= n;
    z_mean /= n;
    double num = 0.0, den = 0.0;
    for (int j = 0; j < n; ++j) {
        num += (arc.values[j] - s_mean) * (c.z[j] - z_mean);
        den += (arc.values[j] - s_mean) * (arc.values[j] - s_mean);
    }
    const double pitch = num / den;
    const double z0 = z_mean - pitch * s_mean;

    HelixFit fit;
    fit.params.center_x = cx;
    fit.params.center_y = cy;
    fit.params.radius = r;
    fit.params.curvature_sign = signed_area(c) >= 0.0 ? +1 : -1;
    fit.params.pitch_rate = pitch;
    fit.params.z0 = z0;

    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        const double radial = std::hypot(c.x[j] - cx, c.y[j] - cy) - r;
        const double vertical = c.z[j] - (z0 + pitch * arc.values[j]);
        acc += radial * radial + vertical * vertical;
    }
    fit.rms = std::sqrt(acc / n);
    fit.rms_over_length = fit.rms / curve_length(c);
    return fit;
}

double geodesic_residual(const ClosedCurve& c) {
    const int n = c.size();
    const auto xu = periodic_derivative(c.x, 1, c.scheme);
    const auto yu = periodic_derivative(c.y, 1, c.scheme);
    const auto zu = z_derivative(c);
    const auto k = curvature_of(c);

    // Frame components of the unit tangent; the left-invariant frame is
    // parallel, so the covariant derivative acts componentwise.
    std::vector<double> t1(n), t2(n), tT(n);
    for (int j = 0; j < n; ++j) {
        const double aT = zu[j] + c.x[j] * yu[j] - c.y[j] * xu[j];
        const double w = std::sqrt(xu[j] * xu[j] + yu[j] * yu[j] + aT * aT);
        t1[j] = xu[j] / w;
        t2[j] = yu[j] / w;
        tT[j] = aT / w;
    }
    // For z in the tangent frame the holonomy already cancelled; components
    // are periodic and can be differentiated directly.
    const auto d1 = periodic_derivative(t1, 1, c.scheme);
    const auto d2 = periodic_derivative(t2, 1, c.scheme);
    const auto dT = periodic_derivative(tT, 1, c.scheme);

    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
        const double w = c.metric_weights[j];
        const double r1 = d1[j] / w - k[j] * (-t2[j]);
        const double r2 = d2[j] / w - k[j] * t1[j];
        const double rT = dT[j] / w;
        worst = std::max(worst, std::sqrt(r1 * r1 + r2 * r2 + rT * rT));
    }
    return worst;
}

}  // namespace legflow
