#include "intrinsic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "errors.hpp"

namespace legflow {

namespace {

// d phi/ds and d2 phi/ds2 with the stretched metric at time t.
struct SDerivs {
    std::vector<double> first, second;
};

SDerivs s_derivatives(const std::vector<double>& phi, const std::vector<double>& m0, double t,
                      DerivScheme scheme) {
    const double stretch = std::exp(t);
    const auto pu = periodic_derivative(phi, 1, scheme);
    SDerivs d;
    d.first.resize(phi.size());
    for (std::size_t j = 0; j < phi.size(); ++j) d.first[j] = pu[j] / (m0[j] * stretch);
    const auto qu = periodic_derivative(d.first, 1, scheme);
    d.second.resize(phi.size());
    for (std::size_t j = 0; j < phi.size(); ++j) d.second[j] = qu[j] / (m0[j] * stretch);
    return d;
}

std::vector<double> rhs_k2(const std::vector<double>& phi, const std::vector<double>& m0,
                           double t, double W, double floor, const IntrinsicConfig& cfg) {
    for (std::size_t j = 0; j < phi.size(); ++j)
        if (phi[j] < floor)
            throw SingularityError("curvature k^2 reached the floor at sample " +
                                       std::to_string(j) + ", t = " + std::to_string(t) +
                                       " (flow speed 1/k blow-up)",
                                   t, static_cast<int>(j));
    const SDerivs d = s_derivatives(phi, m0, t, cfg.scheme);
    std::vector<double> out(phi.size());
    for (std::size_t j = 0; j < phi.size(); ++j) {
        const double inv = 1.0 / phi[j];
        out[j] = inv * d.second[j] - 1.5 * inv * inv * d.first[j] * d.first[j] - 2.0 * phi[j] -
                 4.0 * W;
    }
    return out;
}

}  // namespace

CurvatureField make_curvature_field(std::vector<double> phi, std::vector<double> m0, double t) {
    if (phi.size() < 16 || phi.size() % 2 != 0)
        throw InvalidArgument("field needs an even sample count >= 16");
    if (m0.size() != phi.size()) throw InvalidArgument("phi and m0 differ in length");
    for (std::size_t j = 0; j < phi.size(); ++j) {
        if (!(phi[j] > 0.0))
            throw InvalidArgument("phi must be positive (sample " + std::to_string(j) + ")");
        if (!(m0[j] > 0.0))
            throw InvalidArgument("m0 must be positive (sample " + std::to_string(j) + ")");
    }
    CurvatureField f;
    f.phi = std::move(phi);
    f.m0 = std::move(m0);
    f.t = t;
    return f;
}

CurvatureField step_k2(const CurvatureField& f, WebsterParam W, double dt,
                       const IntrinsicConfig& cfg) {
    const int n = f.size();
    const auto k1 = rhs_k2(f.phi, f.m0, f.t, W.W, cfg.phi_floor, cfg);
    std::vector<double> tmp(n);
    for (int j = 0; j < n; ++j) tmp[j] = f.phi[j] + 0.5 * dt * k1[j];
    const auto k2 = rhs_k2(tmp, f.m0, f.t + 0.5 * dt, W.W, cfg.phi_floor, cfg);
    for (int j = 0; j < n; ++j) tmp[j] = f.phi[j] + 0.5 * dt * k2[j];
    const auto k3 = rhs_k2(tmp, f.m0, f.t + 0.5 * dt, W.W, cfg.phi_floor, cfg);
    for (int j = 0; j < n; ++j) tmp[j] = f.phi[j] + dt * k3[j];
    const auto k4 = rhs_k2(tmp, f.m0, f.t + dt, W.W, cfg.phi_floor, cfg);

    CurvatureField out = f;
    for (int j = 0; j < n; ++j)
        out.phi[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    out.t = f.t + dt;
    for (int j = 0; j < n; ++j)
        if (out.phi[j] < cfg.phi_floor)
            throw SingularityError("curvature k^2 reached the floor at sample " +
                                       std::to_string(j) + ", t = " + std::to_string(out.t) +
                                       " (flow speed 1/k blow-up)",
                                   out.t, j);
    return out;
}

IntrinsicRun evolve_k2(const CurvatureField& f0, WebsterParam W, const IntrinsicConfig& cfg) {
    if (cfg.t_end < 0.0 || cfg.outputs < 1 || cfg.dt <= 0.0)
        throw InvalidArgument("bad intrinsic config (t_end >= 0, outputs >= 1, dt > 0)");

    IntrinsicRun run;
    run.webster = W;
    CurvatureField cur = f0;

    auto snapshot = [&](double tt) {
        IntrinsicSnapshot s;
        s.t = tt;
        s.field = cur;
        s.phi_min = *std::min_element(cur.phi.begin(), cur.phi.end());
        s.phi_max = *std::max_element(cur.phi.begin(), cur.phi.end());
        const double stretch = std::exp(cur.t);
        const auto pu = periodic_derivative(cur.phi, 1, cfg.scheme);
        double sup = 0.0;
        for (int j = 0; j < cur.size(); ++j)
            sup = std::max(sup, std::abs(pu[j] / (cur.m0[j] * stretch)));
        s.dsphi_max = sup;
        run.snapshots.push_back(std::move(s));
    };

    snapshot(0.0);
    const double du = 1.0 / f0.size();
    double m0_min = *std::min_element(f0.m0.begin(), f0.m0.end());
    try {
        for (int i = 1; i <= cfg.outputs; ++i) {
            const double target = cfg.t_end * i / cfg.outputs;
            while (cur.t < target) {
                const double phi_min = *std::min_element(cur.phi.begin(), cur.phi.end());
                const double ds_min = m0_min * std::exp(cur.t) * du;
                const double cfl = cfg.cfl_safety * phi_min * ds_min * ds_min;
                const double dt = std::min({cfg.dt, cfl, target - cur.t});
                cur = step_k2(cur, W, dt, cfg);
            }
            snapshot(target);
        }
    } catch (const SingularityError& e) {
        run.singularity.singular = true;
        run.singularity.time = e.time();
        run.singularity.sample = e.sample();
        run.singularity.message = e.what();
        snapshot(cur.t);  // last admissible state, for inspection
    }
    return run;
}

double homogeneous_oracle(double phi0, double W, double t) {
    return (phi0 + 2.0 * W) * std::exp(-2.0 * t) - 2.0 * W;
}

ResidualSeries residual_eq43(const IntrinsicRun& run) {
    const auto& snaps = run.snapshots;
    if (snaps.size() < 3) throw InvalidArgument("need at least three snapshots for residuals");
    const double W = run.webster.W;

    ResidualSeries out;
    for (std::size_t i = 1; i + 1 < snaps.size(); ++i) {
        const double dt_m = snaps[i].t - snaps[i - 1].t;
        const double dt_p = snaps[i + 1].t - snaps[i].t;
        if (std::abs(dt_p - dt_m) > 1e-12 * std::max(dt_p, dt_m)) continue;  // need uniform spacing
        const auto& f = snaps[i].field;
        const int n = f.size();

        const SDerivs d =
            s_derivatives(f.phi, f.m0, f.t, DerivScheme::Spectral);
        double sup43 = 0.0;
        for (int j = 0; j < n; ++j) {
            const double dphi_dt =
                (snaps[i + 1].field.phi[j] - snaps[i - 1].field.phi[j]) / (dt_m + dt_p);
            const double inv = 1.0 / f.phi[j];
            const double rhs = inv * d.second[j] -
                               1.5 * inv * inv * d.first[j] * d.first[j] - 2.0 * f.phi[j] -
                               4.0 * W;
            sup43 = std::max(sup43, std::abs(dphi_dt - rhs));
        }

        // Same data through the k^-2 equation:
        // dq/dt = q q_ss - (1/2) q_s^2 + 2 q + 4 q^2 W, q = 1/phi.
        std::vector<double> q(n), qp(n), qm(n);
        for (int j = 0; j < n; ++j) {
            q[j] = 1.0 / f.phi[j];
            qp[j] = 1.0 / snaps[i + 1].field.phi[j];
            qm[j] = 1.0 / snaps[i - 1].field.phi[j];
        }
        const SDerivs dq = s_derivatives(q, f.m0, f.t, DerivScheme::Spectral);
        double sup44 = 0.0;
        for (int j = 0; j < n; ++j) {
            const double dq_dt = (qp[j] - qm[j]) / (dt_m + dt_p);
            const double rhs = q[j] * dq.second[j] - 0.5 * dq.first[j] * dq.first[j] +
                               2.0 * q[j] + 4.0 * q[j] * q[j] * W;
            sup44 = std::max(sup44, std::abs(dq_dt - rhs));
        }

        out.times.push_back(snaps[i].t);
        out.eq_k2.push_back(sup43);
        out.eq_inv_k2.push_back(sup44);
    }
    return out;
}

BoundMonitor bound_monitor_eval(const IntrinsicRun& run) {
    const auto& snaps = run.snapshots;
    if (snaps.empty()) throw InvalidArgument("empty run");
    const double W = run.webster.W;
    const double w0 = std::abs(W);

    BoundMonitor mon;
    const double phi0_max = snaps.front().phi_max;
    const double phi0_min = snaps.front().phi_min;
    mon.c0 = std::max(2.0 * w0, phi0_max);
    mon.C0 = W < 0.0 ? 1.0 / phi0_min + 1.0 / (2.0 * w0)
                     : std::numeric_limits<double>::quiet_NaN();

    const double rel = 1e-6;
    double prev_decay = std::exp(2.0 * snaps.front().t) * phi0_max;
    for (const auto& s : snaps) {
        if (s.phi_max > mon.c0 * (1.0 + rel) + 1e-12)
            mon.violations.push_back({s.t, "max k^2 > c0", s.phi_max});
        if (W < 0.0) {
            const double inv_max = 1.0 / s.phi_min;
            if (inv_max > mon.C0 * (1.0 + rel) + 1e-12)
                mon.violations.push_back({s.t, "max k^-2 > C0", inv_max});
            // Comparison sandwich from the negative-W asymptotics.
            const double upper = std::exp(-2.0 * s.t) * (phi0_max + 2.0 * W) - 2.0 * W;
            const double lower =
                1.0 / (std::exp(-2.0 * s.t) * (1.0 / phi0_min - 1.0 / (2.0 * w0)) +
                       1.0 / (2.0 * w0));
            if (s.phi_max > upper * (1.0 + rel) + 1e-12)
                mon.violations.push_back({s.t, "sandwich upper", s.phi_max});
            if (s.phi_min < lower * (1.0 - rel) - 1e-12)
                mon.violations.push_back({s.t, "sandwich lower", s.phi_min});
        }
        if (W == 0.0) {
            // exp(2t) * max phi must be nonincreasing between outputs.
            const double now = std::exp(2.0 * s.t) * s.phi_max;
            if (now > prev_decay * (1.0 + rel) + 1e-12)
                mon.violations.push_back({s.t, "exp(2t) max phi increased", now});
            prev_decay = now;
        }
    }

    const auto& last = snaps.back();
    if (W < 0.0) {
        mon.phi_limit_deviation =
            std::max(std::abs(last.phi_max + 2.0 * W), std::abs(last.phi_min + 2.0 * W));
    } else {
        mon.phi_limit_deviation = last.phi_max;
    }
    mon.dsphi_max_final = last.dsphi_max;
    return mon;
}

}  // namespace legflow
