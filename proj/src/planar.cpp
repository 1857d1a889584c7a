#include "planar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "errors.hpp"
#include "heis.hpp"

namespace legflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct XY {
    std::vector<double> x, y;
};

XY rk4(const XY& p, double dt, DerivScheme scheme, double k_floor, double t_now,
       double* basepoint_delta) {
    const auto stage = [&](const XY& q) { return imcf_field(q.x, q.y, scheme, k_floor, t_now); };
    const int n = static_cast<int>(p.x.size());
    const ImcfField f1 = stage(p);

    XY q2;
    q2.x.resize(n);
    q2.y.resize(n);
    for (int j = 0; j < n; ++j) {
        q2.x[j] = p.x[j] + 0.5 * dt * f1.vx[j];
        q2.y[j] = p.y[j] + 0.5 * dt * f1.vy[j];
    }
    const ImcfField f2 = stage(q2);

    XY q3;
    q3.x.resize(n);
    q3.y.resize(n);
    for (int j = 0; j < n; ++j) {
        q3.x[j] = p.x[j] + 0.5 * dt * f2.vx[j];
        q3.y[j] = p.y[j] + 0.5 * dt * f2.vy[j];
    }
    const ImcfField f3 = stage(q3);

    XY q4;
    q4.x.resize(n);
    q4.y.resize(n);
    for (int j = 0; j < n; ++j) {
        q4.x[j] = p.x[j] + dt * f3.vx[j];
        q4.y[j] = p.y[j] + dt * f3.vy[j];
    }
    const ImcfField f4 = stage(q4);

    XY out;
    out.x.resize(n);
    out.y.resize(n);
    for (int j = 0; j < n; ++j) {
        out.x[j] = p.x[j] + dt / 6.0 * (f1.vx[j] + 2.0 * f2.vx[j] + 2.0 * f3.vx[j] + f4.vx[j]);
        out.y[j] = p.y[j] + dt / 6.0 * (f1.vy[j] + 2.0 * f2.vy[j] + 2.0 * f3.vy[j] + f4.vy[j]);
    }
    if (basepoint_delta)
        *basepoint_delta = dt / 6.0 *
                           (f1.basepoint_rate + 2.0 * f2.basepoint_rate +
                            2.0 * f3.basepoint_rate + f4.basepoint_rate);
    return out;
}

double segment_distance(double px, double py, double ax, double ay, double bx, double by) {
    const double dx = bx - ax, dy = by - ay;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((px - ax) * dx + (py - ay) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(px - (ax + t * dx), py - (ay + t * dy));
}

double directed_hausdorff(const PlanarCurve& a, const PlanarCurve& b) {
    const int na = a.size(), nb = b.size();
    double worst = 0.0;
    for (int i = 0; i < na; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (int j = 0; j < nb; ++j) {
            const int j1 = (j + 1) % nb;
            best = std::min(best, segment_distance(a.x[i], a.y[i], b.x[j], b.y[j], b.x[j1],
                                                   b.y[j1]));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

double SupportFunction::eval(double theta) const {
    double h = 0.0;
    for (int m = 0; m <= max_mode(); ++m)
        h += cos_c[m] * std::cos(m * theta) + sin_c[m] * std::sin(m * theta);
    return h;
}

double SupportFunction::eval_derivative(double theta) const {
    double d = 0.0;
    for (int m = 1; m <= max_mode(); ++m)
        d += m * (-cos_c[m] * std::sin(m * theta) + sin_c[m] * std::cos(m * theta));
    return d;
}

double SupportFunction::curvature_radius(double theta) const {
    double rho = 0.0;
    for (int m = 0; m <= max_mode(); ++m)
        rho += (1.0 - m * m) *
               (cos_c[m] * std::cos(m * theta) + sin_c[m] * std::sin(m * theta));
    return rho;
}

double SupportFunction::min_curvature_radius(int grid) const {
    double lo = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) lo = std::min(lo, curvature_radius(kTwoPi * i / grid));
    return lo;
}

std::vector<double> planar_speed(const PlanarCurve& c) {
    return detail::speed_xy(c.x, c.y, c.scheme);
}

std::vector<double> planar_curvature(const PlanarCurve& c) {
    return detail::curvature_xy(c.x, c.y, c.scheme);
}

ImcfField imcf_field(const std::vector<double>& x, const std::vector<double>& y,
                     DerivScheme scheme, double k_floor, double t_now) {
    const int n = static_cast<int>(x.size());
    const auto xu = periodic_derivative(x, 1, scheme);
    const auto yu = periodic_derivative(y, 1, scheme);
    const auto xuu = periodic_derivative(x, 2, scheme);
    const auto yuu = periodic_derivative(y, 2, scheme);

    ImcfField f;
    f.vx.resize(n);
    f.vy.resize(n);
    for (int j = 0; j < n; ++j) {
        const double s2 = xu[j] * xu[j] + yu[j] * yu[j];
        const double s = std::sqrt(s2);
        const double k = (xu[j] * yuu[j] - yu[j] * xuu[j]) / (s2 * s);
        if (std::abs(k) < k_floor)
            throw SingularityError("curvature " + std::to_string(k) + " below floor at sample " +
                                       std::to_string(j) + ", t = " + std::to_string(t_now),
                                   t_now, j);
        // v = -(1/k) n with n = (-y_u, x_u)/|gamma'|.
        f.vx[j] = yu[j] / (s * k);
        f.vy[j] = -xu[j] / (s * k);
    }
    const double s0 = std::hypot(xu[0], yu[0]);
    const double k0 = (xu[0] * yuu[0] - yu[0] * xuu[0]) / (s0 * s0 * s0);
    f.basepoint_rate = (x[0] * xu[0] + y[0] * yu[0]) / (s0 * k0);
    return f;
}

double cfl_bound(const PlanarCurve& c, const SolverConfig& cfg) {
    const auto k = planar_curvature(c);
    const auto s = planar_speed(c);
    double k_min = std::numeric_limits<double>::infinity();
    double ds_min = std::numeric_limits<double>::infinity();
    for (int j = 0; j < c.size(); ++j) {
        k_min = std::min(k_min, std::abs(k[j]));
        ds_min = std::min(ds_min, s[j] / c.size());
    }
    return cfg.cfl_safety * k_min * k_min * ds_min * ds_min;
}

PlanarCurve step_parametric(const PlanarCurve& c, double dt, const SolverConfig& cfg,
                            double t_now) {
    const XY next = rk4({c.x, c.y}, dt, cfg.scheme, cfg.k_floor, t_now, nullptr);
    PlanarCurve out = make_planar_curve(next.x, next.y, cfg.scheme);
    if (cfg.shape_mode) out = resample_uniform_arclength(out);
    return out;
}

PlanarTrajectory evolve_parametric(const PlanarCurve& c, const SolverConfig& cfg) {
    if (cfg.t_end < 0.0 || cfg.outputs < 1 || cfg.dt <= 0.0)
        throw InvalidArgument("bad solver config (t_end >= 0, outputs >= 1, dt > 0)");

    PlanarTrajectory traj;
    PlanarCurve cur = c;
    double t = 0.0;

    auto record = [&](double tt) {
        const auto k = planar_curvature(cur);
        PlanarSnapshot snap;
        snap.t = tt;
        snap.curve = cur;
        snap.length = curve_length(cur);
        snap.k_min = *std::min_element(k.begin(), k.end());
        snap.k_max = *std::max_element(k.begin(), k.end());
        traj.snapshots.push_back(std::move(snap));
    };

    record(0.0);
    for (int i = 1; i <= cfg.outputs; ++i) {
        const double target = cfg.t_end * i / cfg.outputs;
        while (t < target) {
            const double dt = std::min({cfg.dt, cfl_bound(cur, cfg), target - t});
            cur = step_parametric(cur, dt, cfg, t);
            t += dt;
        }
        record(target);
    }
    return traj;
}

SupportFunction support_transform(const PlanarCurve& c, int n_max) {
    const int n = c.size();
    n_max = std::min(n_max, n / 2 - 1);
    const auto k = planar_curvature(c);
    const auto sigma = planar_speed(c);
    for (int j = 0; j < n; ++j)
        if (k[j] <= 0.0)
            throw ConvexityError("not strictly convex: k = " + std::to_string(k[j]) +
                                     " at sample " + std::to_string(j),
                                 c.u(j));

    const auto xu = periodic_derivative(c.x, 1, c.scheme);
    const auto yu = periodic_derivative(c.y, 1, c.scheme);

    // Unwrapped outward normal angle and the support value per sample.
    const auto principal = [](double d) {
        while (d <= -std::numbers::pi) d += kTwoPi;
        while (d > std::numbers::pi) d -= kTwoPi;
        return d;
    };
    std::vector<double> raw(n), theta(n), h(n);
    for (int j = 0; j < n; ++j) {
        raw[j] = std::atan2(-xu[j], yu[j]);
        theta[j] = j == 0 ? raw[0] : theta[j - 1] + principal(raw[j] - raw[j - 1]);
        const double nx = yu[j] / sigma[j], ny = -xu[j] / sigma[j];
        h[j] = c.x[j] * nx + c.y[j] * ny;
    }
    const double turning =
        (theta[n - 1] + principal(raw[0] - raw[n - 1]) - theta[0]) / kTwoPi;
    if (std::abs(turning - 1.0) > 0.1)
        throw ConvexityError("normal turning number " + std::to_string(turning) +
                                 ", expected 1 for a convex curve",
                             0.0);

    // Fourier coefficients of h(theta) by change of variables to u:
    // d theta = k * sigma du, so each integral is a periodic trapezoid in u.
    SupportFunction out;
    out.cos_c.assign(n_max + 1, 0.0);
    out.sin_c.assign(n_max + 1, 0.0);
    std::vector<double> work(n);
    for (int m = 0; m <= n_max; ++m) {
        for (int j = 0; j < n; ++j) work[j] = h[j] * std::cos(m * theta[j]) * k[j] * sigma[j];
        out.cos_c[m] = periodic_integral(work) / (m == 0 ? kTwoPi : std::numbers::pi);
        if (m > 0) {
            for (int j = 0; j < n; ++j) work[j] = h[j] * std::sin(m * theta[j]) * k[j] * sigma[j];
            out.sin_c[m] = periodic_integral(work) / std::numbers::pi;
        }
    }
    return out;
}

PlanarCurve support_to_curve(const SupportFunction& h, int n_samples, DerivScheme scheme) {
    const double rho_min = h.min_curvature_radius();
    if (rho_min <= 0.0)
        throw ConvexityError("support function is not strictly convex (min rho = " +
                                 std::to_string(rho_min) + ")",
                             0.0);
    std::vector<double> x(n_samples), y(n_samples);
    for (int j = 0; j < n_samples; ++j) {
        const double theta = kTwoPi * j / n_samples;
        const double hv = h.eval(theta), hd = h.eval_derivative(theta);
        x[j] = hv * std::cos(theta) - hd * std::sin(theta);
        y[j] = hv * std::sin(theta) + hd * std::cos(theta);
    }
    return make_planar_curve(std::move(x), std::move(y), scheme);
}

SupportFunction evolve_support_exact(const SupportFunction& h0, double t) {
    auto at_time = [&h0](double tau) {
        SupportFunction g = h0;
        for (int m = 0; m <= g.max_mode(); ++m) {
            const double f = std::exp((1.0 - m * m) * tau);
            g.cos_c[m] *= f;
            g.sin_c[m] *= f;
        }
        return g;
    };
    // A-posteriori convexity scan over [0, t]; on failure, bisect for the
    // critical time.
    const int scan = 256;
    for (int i = 0; i <= scan; ++i) {
        const double tau = t * i / scan;
        if (at_time(tau).min_curvature_radius() <= 0.0) {
            if (i == 0) throw ConvexityError("initial support function is not convex", 0.0);
            double lo = t * (i - 1) / scan, hi = tau;
            for (int it = 0; it < 50; ++it) {
                const double mid = 0.5 * (lo + hi);
                (at_time(mid).min_curvature_radius() <= 0.0 ? hi : lo) = mid;
            }
            throw ConvexityError("convexity lost near t = " + std::to_string(hi), hi);
        }
    }
    return at_time(t);
}

PlanarTrajectory evolve_support(const SupportFunction& h0, int n_samples,
                                const SolverConfig& cfg) {
    PlanarTrajectory traj;
    for (int i = 0; i <= cfg.outputs; ++i) {
        const double t = cfg.t_end * i / cfg.outputs;
        PlanarSnapshot snap;
        snap.t = t;
        snap.curve = support_to_curve(evolve_support_exact(h0, t), n_samples, cfg.scheme);
        snap.length = curve_length(snap.curve);
        const auto k = planar_curvature(snap.curve);
        snap.k_min = *std::min_element(k.begin(), k.end());
        snap.k_max = *std::max_element(k.begin(), k.end());
        traj.snapshots.push_back(std::move(snap));
    }
    return traj;
}

PlanarCurve resample_uniform_arclength(const PlanarCurve& c) {
    const int n = c.size();
    const auto sigma = planar_speed(c);
    const Antiderivative s = periodic_antiderivative(sigma);
    const double length = s.mean;

    std::vector<double> periodic_part(n);
    for (int j = 0; j < n; ++j) periodic_part[j] = s.values[j] - length * c.u(j);
    const TrigInterp p(periodic_part), fx(c.x), fy(c.y), fs(sigma);

    std::vector<double> x(n), y(n);
    x[0] = c.x[0];
    y[0] = c.y[0];
    for (int i = 1; i < n; ++i) {
        const double target = length * i / n;
        double u = static_cast<double>(i) / n;
        for (int it = 0; it < 6; ++it) {
            const double f = length * u + p(u) - target;
            u -= f / fs(u);
        }
        x[i] = fx(u);
        y[i] = fy(u);
    }
    return make_planar_curve(std::move(x), std::move(y), c.scheme);
}

double hausdorff_distance(const PlanarCurve& a, const PlanarCurve& b) {
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

}  // namespace legflow
