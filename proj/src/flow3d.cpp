#include "flow3d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "diagnostics.hpp"
#include "errors.hpp"

namespace legflow {

namespace {

// State of the rescaled direct stepper: coordinates plus holonomy.
struct Xyzh {
    std::vector<double> x, y, z;
    double hol = 0.0;
};

struct XyzhRate {
    std::vector<double> dx, dy, dz;
    double dhol = 0.0;
};

XyzhRate rescaled_field(const Xyzh& s, DerivScheme scheme, double k_floor, double t_now) {
    const int n = static_cast<int>(s.x.size());
    const auto xu = periodic_derivative(s.x, 1, scheme);
    const auto yu = periodic_derivative(s.y, 1, scheme);
    const auto xuu = periodic_derivative(s.x, 2, scheme);
    const auto yuu = periodic_derivative(s.y, 2, scheme);

    std::vector<double> k(n), sigma(n), inv_k_ds(n);
    for (int j = 0; j < n; ++j) {
        const double s2 = xu[j] * xu[j] + yu[j] * yu[j];
        sigma[j] = std::sqrt(s2);
        k[j] = (xu[j] * yuu[j] - yu[j] * xuu[j]) / (s2 * sigma[j]);
        if (std::abs(k[j]) < k_floor)
            throw SingularityError("curvature below floor at sample " + std::to_string(j) +
                                       ", t = " + std::to_string(t_now),
                                   t_now, j);
        inv_k_ds[j] = sigma[j] / k[j];
    }
    const Antiderivative arc_int = periodic_antiderivative(inv_k_ds);

    XyzhRate r;
    r.dx.resize(n);
    r.dy.resize(n);
    r.dz.resize(n);
    for (int j = 0; j < n; ++j) {
        const double ts1 = xu[j] / sigma[j], ts2 = yu[j] / sigma[j];
        const double g_j = s.y[j] * ts1 - s.x[j] * ts2;  // g(gamma, J gamma_dot)
        const double vJ = -(1.0 / k[j] + g_j);
        const double vT = -2.0 * (arc_int.values[j] + s.z[j]);
        // frame (vJ * J gamma_dot + vT * T) back to coordinates
        const double a1 = -vJ * ts2, a2 = vJ * ts1;
        r.dx[j] = a1;
        r.dy[j] = a2;
        r.dz[j] = vT - s.x[j] * a2 + s.y[j] * a1;
    }
    r.dhol = -2.0 * (arc_int.mean + s.hol);
    return r;
}

Xyzh axpy(const Xyzh& base, double c, const XyzhRate& r) {
    Xyzh out = base;
    for (std::size_t j = 0; j < out.x.size(); ++j) {
        out.x[j] += c * r.dx[j];
        out.y[j] += c * r.dy[j];
        out.z[j] += c * r.dz[j];
    }
    out.hol += c * r.dhol;
    return out;
}

}  // namespace

DiagnosticsRow compute_diagnostics(const ClosedCurve& c, double t) {
    DiagnosticsRow row;
    row.t = t;
    row.length = curve_length(c);
    const auto k = curvature_of(c);
    row.k_min = *std::min_element(k.begin(), k.end());
    row.k_max = *std::max_element(k.begin(), k.end());
    row.leg_residual = horizontality_residual(c).max_abs;
    row.minkowski = minkowski_residual(c);
    row.total_curvature = total_curvature(c);
    row.holonomy = c.holonomy;
    return row;
}

FlowTrajectory evolve_expanding(const ClosedCurve& curve, const SolverConfig& cfg) {
    const auto report = horizontality_residual(curve);
    if (!report.legendrian)
        throw PreconditionError("initial curve is not Legendrian (residual " +
                                std::to_string(report.max_abs) + " > " +
                                std::to_string(report.tolerance) + ")");

    PlanarCurve planar = projection(curve);
    BasepointState base{curve.z[0]};
    double t = 0.0;

    FlowTrajectory traj;
    auto record = [&](double tt) {
        ClosedCurve lifted = legendrian_lift(planar, base.z_base);
        traj.times.push_back(tt);
        traj.diagnostics.push_back(compute_diagnostics(lifted, tt));
        traj.states.push_back(std::move(lifted));
    };

    record(0.0);
    for (int i = 1; i <= cfg.outputs; ++i) {
        const double target = cfg.t_end * i / cfg.outputs;
        while (t < target) {
            const double dt = std::min({cfg.dt, cfl_bound(planar, cfg), target - t});
            // Joint RK4 of the planar positions and the basepoint height,
            // so the lift stays consistent to the scheme's order.
            const auto f1 = imcf_field(planar.x, planar.y, cfg.scheme, cfg.k_floor, t);
            std::vector<double> x2(planar.size()), y2(planar.size());
            for (int j = 0; j < planar.size(); ++j) {
                x2[j] = planar.x[j] + 0.5 * dt * f1.vx[j];
                y2[j] = planar.y[j] + 0.5 * dt * f1.vy[j];
            }
            const auto f2 = imcf_field(x2, y2, cfg.scheme, cfg.k_floor, t);
            std::vector<double> x3(planar.size()), y3(planar.size());
            for (int j = 0; j < planar.size(); ++j) {
                x3[j] = planar.x[j] + 0.5 * dt * f2.vx[j];
                y3[j] = planar.y[j] + 0.5 * dt * f2.vy[j];
            }
            const auto f3 = imcf_field(x3, y3, cfg.scheme, cfg.k_floor, t);
            std::vector<double> x4(planar.size()), y4(planar.size());
            for (int j = 0; j < planar.size(); ++j) {
                x4[j] = planar.x[j] + dt * f3.vx[j];
                y4[j] = planar.y[j] + dt * f3.vy[j];
            }
            const auto f4 = imcf_field(x4, y4, cfg.scheme, cfg.k_floor, t);

            std::vector<double> xn(planar.size()), yn(planar.size());
            for (int j = 0; j < planar.size(); ++j) {
                xn[j] = planar.x[j] +
                        dt / 6.0 * (f1.vx[j] + 2.0 * f2.vx[j] + 2.0 * f3.vx[j] + f4.vx[j]);
                yn[j] = planar.y[j] +
                        dt / 6.0 * (f1.vy[j] + 2.0 * f2.vy[j] + 2.0 * f3.vy[j] + f4.vy[j]);
            }
            base.z_base += dt / 6.0 *
                           (f1.basepoint_rate + 2.0 * f2.basepoint_rate +
                            2.0 * f3.basepoint_rate + f4.basepoint_rate);
            planar = make_planar_curve(std::move(xn), std::move(yn), cfg.scheme);
            if (cfg.shape_mode) planar = resample_uniform_arclength(planar);
            t += dt;
        }
        record(target);
    }
    return traj;
}

FlowTrajectory rescale_trajectory(const FlowTrajectory& traj) {
    FlowTrajectory out;
    out.times = traj.times;
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const double t = traj.times[i];
        ClosedCurve scaled = dilate(traj.states[i], std::exp(-t));
        out.diagnostics.push_back(compute_diagnostics(scaled, t));
        out.states.push_back(std::move(scaled));
    }
    return out;
}

std::vector<std::array<double, 3>> expanding_velocity(const ClosedCurve& c) {
    const int n = c.size();
    const auto k = curvature_of(c);
    const auto sigma = detail::speed_xy(c.x, c.y, c.scheme);
    std::vector<double> inv_k_ds(n);
    for (int j = 0; j < n; ++j) inv_k_ds[j] = sigma[j] / k[j];
    const Antiderivative arc_int = periodic_antiderivative(inv_k_ds);

    const auto xu = periodic_derivative(c.x, 1, c.scheme);
    const auto yu = periodic_derivative(c.y, 1, c.scheme);
    std::vector<std::array<double, 3>> v(n);
    for (int j = 0; j < n; ++j) {
        const double ts1 = xu[j] / sigma[j], ts2 = yu[j] / sigma[j];
        const double vJ = -1.0 / k[j];
        const double vT = -2.0 * arc_int.values[j];
        const double a1 = -vJ * ts2, a2 = vJ * ts1;
        v[j] = {a1, a2, vT - c.x[j] * a2 + c.y[j] * a1};
    }
    return v;
}

ClosedCurve step_rescaled_direct(const ClosedCurve& c, double dt, const SolverConfig& cfg,
                                 double t_now) {
    const auto report = horizontality_residual(c);
    if (!report.legendrian)
        throw PreconditionError("direct stepping requires a Legendrian curve");
    if (dt == 0.0) return c;

    const Xyzh s0{c.x, c.y, c.z, c.holonomy};
    const XyzhRate f1 = rescaled_field(s0, c.scheme, cfg.k_floor, t_now);
    const XyzhRate f2 = rescaled_field(axpy(s0, 0.5 * dt, f1), c.scheme, cfg.k_floor, t_now);
    const XyzhRate f3 = rescaled_field(axpy(s0, 0.5 * dt, f2), c.scheme, cfg.k_floor, t_now);
    const XyzhRate f4 = rescaled_field(axpy(s0, dt, f3), c.scheme, cfg.k_floor, t_now);

    Xyzh next = s0;
    for (int j = 0; j < c.size(); ++j) {
        next.x[j] += dt / 6.0 * (f1.dx[j] + 2.0 * f2.dx[j] + 2.0 * f3.dx[j] + f4.dx[j]);
        next.y[j] += dt / 6.0 * (f1.dy[j] + 2.0 * f2.dy[j] + 2.0 * f3.dy[j] + f4.dy[j]);
        next.z[j] += dt / 6.0 * (f1.dz[j] + 2.0 * f2.dz[j] + 2.0 * f3.dz[j] + f4.dz[j]);
    }
    next.hol += dt / 6.0 * (f1.dhol + 2.0 * f2.dhol + 2.0 * f3.dhol + f4.dhol);
    return make_closed_curve(std::move(next.x), std::move(next.y), std::move(next.z), next.hol,
                             c.scheme);
}

FlowTrajectory evolve_rescaled_direct(const ClosedCurve& c, const SolverConfig& cfg) {
    FlowTrajectory traj;
    ClosedCurve cur = c;
    double t = 0.0;

    auto record = [&](double tt) {
        traj.times.push_back(tt);
        traj.diagnostics.push_back(compute_diagnostics(cur, tt));
        traj.states.push_back(cur);
    };

    record(0.0);
    for (int i = 1; i <= cfg.outputs; ++i) {
        const double target = cfg.t_end * i / cfg.outputs;
        while (t < target) {
            const double dt = std::min({cfg.dt, cfl_bound(projection(cur), cfg), target - t});
            cur = step_rescaled_direct(cur, dt, cfg, t);
            t += dt;
        }
        record(target);
    }
    return traj;
}

VelocityDecomposition normal_speed_decompose(
    const ClosedCurve& c, const std::vector<std::array<double, 3>>& velocity) {
    if (static_cast<int>(velocity.size()) != c.size())
        throw InvalidArgument("velocity field size does not match the curve grid");

    const auto xu = periodic_derivative(c.x, 1, c.scheme);
    const auto yu = periodic_derivative(c.y, 1, c.scheme);
    const auto zu = z_derivative(c);

    VelocityDecomposition out;
    out.tangential.resize(c.size());
    out.j_normal.resize(c.size());
    out.vertical.resize(c.size());
    for (int j = 0; j < c.size(); ++j) {
        const std::array<double, 3> p{c.x[j], c.y[j], c.z[j]};
        const FrameVector tangent =
            frame_decompose(p, {xu[j], yu[j], zu[j]});
        const double w = frame_norm(tangent);
        const FrameVector unit{tangent.a1 / w, tangent.a2 / w, tangent.aT / w};
        const FrameVector v = frame_decompose(p, velocity[j]);
        out.tangential[j] = frame_inner(v, unit);
        out.j_normal[j] = frame_inner(v, apply_j(unit));
        out.vertical[j] = v.aT;
    }
    return out;
}

}  // namespace legflow
