// Acceptance suite: every criterion runs at desk scale and prints one
// pass/fail line with the measured value against its pinned tolerance.

#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "diagnostics.hpp"
#include "flow3d.hpp"
#include "geodesics.hpp"
#include "heis.hpp"
#include "intrinsic.hpp"
#include "planar.hpp"
#include "synthetic.hpp"
#include "testutil.hpp"

using namespace legflow;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

int g_failures = 0;

void run_criterion(int id, const std::string& name, const std::function<Outcome()>& fn) {
    Outcome outcome;
    try {
        outcome = fn();
    } catch (const std::exception& e) {
        outcome.pass = false;
        outcome.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %2d. %s: %s\n", outcome.pass ? "PASS" : "FAIL", id, name.c_str(),
                outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++g_failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

SupportFunction ellipse_like() {
    SupportFunction h;
    h.cos_c = {1.0, 0.0, 0.1};
    h.sin_c = {0.0, 0.0, 0.0};
    return h;
}

SupportFunction wavy_convex() {
    SupportFunction h;
    h.cos_c = {1.0, 0.0, 0.0, 0.05};
    h.sin_c = {0.0, 0.0, 0.03, 0.0};
    return h;
}

struct CorpusEntry {
    std::string name;
    ClosedCurve curve;
};

std::vector<CorpusEntry> corpus() {
    return {
        {"circle", circle_lift(256, 1.0)},
        {"translated circle", circle_lift(256, 1.0, 2.0, 0.5)},
        {"ellipse-like", support_lift(ellipse_like(), 256)},
        {"wavy convex", support_lift(wavy_convex(), 256)},
        {"limacon", legendrian_lift(limacon_curve(256, 0.5), 0.0)},
    };
}

}  // namespace

int main() {
    std::printf("legflow acceptance suite (n <= 512, t <= 6)\n");

    // Shared corpus runs: expanding flow to t = 1 at dt <= 1e-4, plus their
    // rescalings. Criteria 2-5 read these.
    SolverConfig corpus_cfg;
    corpus_cfg.dt = 1e-4;
    corpus_cfg.t_end = 1.0;
    corpus_cfg.outputs = 10;

    std::vector<CorpusEntry> curves = corpus();
    std::vector<FlowTrajectory> raw_runs, rescaled_runs;
    for (const auto& entry : curves) {
        raw_runs.push_back(evolve_expanding(entry.curve, corpus_cfg));
        rescaled_runs.push_back(rescale_trajectory(raw_runs.back()));
    }

    // 1. Exponential length law on the circle lift.
    run_criterion(1, "exponential length law |L(t)/L0 - e^t|/e^t <= 1e-3", [&] {
        const FlowTrajectory& traj = raw_runs[0];
        const double L0 = traj.diagnostics[0].length;
        double worst = 0.0;
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            const double expected = std::exp(traj.times[i]);
            worst = std::max(worst,
                             std::abs(traj.diagnostics[i].length / L0 - expected) / expected);
        }
        return Outcome{worst <= 1e-3, fmt("worst rel deviation %.3e (tol 1e-3)", worst)};
    });

    // 2. Legendrian preservation over the whole corpus.
    run_criterion(2, "Legendrian preservation residual <= 1e-8 * L on 5 curves", [&] {
        double worst = 0.0;
        for (const auto& traj : raw_runs)
            for (const auto& d : traj.diagnostics)
                worst = std::max(worst, d.leg_residual / d.length);
        return Outcome{worst <= 1e-8, fmt("worst residual/L %.3e (tol 1e-8)", worst)};
    });

    // 3. Rescaled length constancy and the curvature dilation identity.
    run_criterion(3, "rescaled length constant and k~ = e^t k, <= 1e-6 relative", [&] {
        double worst_len = 0.0, worst_k = 0.0;
        for (std::size_t r = 0; r < rescaled_runs.size(); ++r) {
            const auto& scaled = rescaled_runs[r];
            const auto& raw = raw_runs[r];
            const double L0 = scaled.diagnostics[0].length;
            for (std::size_t i = 0; i < scaled.times.size(); ++i) {
                worst_len =
                    std::max(worst_len, std::abs(scaled.diagnostics[i].length / L0 - 1.0));
                const auto k_raw = curvature_of(raw.states[i]);
                const auto k_scl = curvature_of(scaled.states[i]);
                const double f = std::exp(scaled.times[i]);
                double scale = 0.0, dev = 0.0;
                for (int j = 0; j < scaled.states[i].size(); ++j) {
                    dev = std::max(dev, std::abs(k_scl[j] - f * k_raw[j]));
                    scale = std::max(scale, std::abs(k_scl[j]));
                }
                worst_k = std::max(worst_k, dev / scale);
            }
        }
        const bool pass = worst_len <= 1e-6 && worst_k <= 1e-6;
        return Outcome{pass, fmt("length dev %.3e, curvature dev %.3e (tol 1e-6)", worst_len,
                                 worst_k)};
    });

    // 4. Minkowski formula on every corpus curve.
    run_criterion(4, "Minkowski identity |int(1 + k g(gamma,Jgamma')) ds| <= 1e-6 L", [&] {
        double worst = 0.0;
        for (const auto& entry : curves)
            worst = std::max(worst, std::abs(minkowski_residual(entry.curve)) /
                                        curve_length(entry.curve));
        return Outcome{worst <= 1e-6, fmt("worst |integral|/L %.3e (tol 1e-6)", worst)};
    });

    // 5. Total curvature 2*pi and its invariance along the rescaled flow.
    run_criterion(5, "total curvature = 2*pi (turning 1) and invariant when rescaled", [&] {
        double worst_static = 0.0;
        for (const auto& entry : curves) {
            if (turning_number(entry.curve) != 1) continue;
            worst_static =
                std::max(worst_static, std::abs(total_curvature(entry.curve) - kTwoPi));
        }
        double worst_drift = 0.0;
        for (const auto& scaled : rescaled_runs) {
            const double tc0 = scaled.diagnostics[0].total_curvature;
            for (const auto& d : scaled.diagnostics)
                worst_drift = std::max(worst_drift, std::abs(d.total_curvature - tc0));
        }
        const bool pass = worst_static <= 1e-8 && worst_drift <= 1e-6;
        return Outcome{pass, fmt("|int k ds - 2pi| %.3e (tol 1e-8), drift %.3e (tol 1e-6)",
                                 worst_static, worst_drift)};
    });

    // 6. Helix convergence of the rescaled flow at t = 3.
    run_criterion(6, "helix convergence at t=3 and curvature-spread rate -4 (5%)", [&] {
        SolverConfig cfg;
        cfg.dt = 1e-3;
        cfg.t_end = 3.0;
        cfg.outputs = 30;
        const FlowTrajectory raw = evolve_expanding(support_lift(ellipse_like(), 256), cfg);
        const FlowTrajectory scaled = rescale_trajectory(raw);

        const HelixFit fit = fit_helix(scaled.states.back());
        const double L = scaled.diagnostics.back().length;

        std::vector<double> ts, logs;
        for (std::size_t i = 0; i < scaled.times.size(); ++i) {
            if (scaled.times[i] < 0.5) continue;
            ts.push_back(scaled.times[i]);
            logs.push_back(std::log(scaled.diagnostics[i].k_max - scaled.diagnostics[i].k_min));
        }
        const double rate = testutil::fit_slope(ts, logs);
        const bool pass = fit.rms <= 1e-3 * L && std::abs(rate + 4.0) / 4.0 <= 0.05;
        return Outcome{pass, fmt("fit rms/L %.3e (tol 1e-3), spread rate %.4f (target -4)",
                                 fit.rms / L, rate)};
    });

    // 7. Intrinsic asymptotics for W = -1 and W = 0.
    run_criterion(7, "intrinsic limits: phi -> -2W (W=-1); decay bounds (W=0)", [&] {
        const int n = 256;
        std::vector<double> phi0(n), m0(n, kTwoPi);
        for (int j = 0; j < n; ++j) phi0[j] = 1.0 + 0.2 * std::sin(kTwoPi * j / n);

        IntrinsicConfig cfg;
        cfg.dt = 1e-3;
        cfg.t_end = 6.0;
        cfg.outputs = 12;

        const IntrinsicRun neg = evolve_k2(make_curvature_field(phi0, m0), {-1.0}, cfg);
        if (neg.singularity.singular)
            return Outcome{false, "unexpected singularity in the W=-1 run"};
        const double dev_limit =
            std::max(std::abs(neg.snapshots.back().phi_max - 2.0),
                     std::abs(neg.snapshots.back().phi_min - 2.0));

        const IntrinsicRun zero = evolve_k2(make_curvature_field(phi0, m0), {0.0}, cfg);
        if (zero.singularity.singular)
            return Outcome{false, "unexpected singularity in the W=0 run"};
        const double max0 = zero.snapshots.front().phi_max;
        double bound_excess = 0.0;
        for (const auto& s : zero.snapshots)
            bound_excess = std::max(
                bound_excess, s.phi_max - std::exp(-2.0 * s.t) * max0 * (1.0 + 1e-6));
        const double dsphi_final = zero.snapshots.back().dsphi_max;

        const bool pass = dev_limit <= 1e-3 && bound_excess <= 0.0 && dsphi_final <= 1e-4;
        return Outcome{pass, fmt("|phi(6)+2W| %.3e (tol 1e-3), max|ds phi|(6) %.3e (tol 1e-4)",
                                 dev_limit, dsphi_final)};
    });

    // 8. Cross-backend agreement and second-order residual convergence.
    run_criterion(8, "oracle equivalence (1e-3) and Eq-residual second order", [&] {
        const std::vector<SupportFunction> seeds = {
            [] {
                SupportFunction h;
                h.cos_c = {1.0};
                h.sin_c = {0.0};
                return h;
            }(),
            ellipse_like(), wavy_convex()};
        SolverConfig cfg;
        cfg.dt = 1e-3;
        cfg.t_end = 1.0;
        cfg.outputs = 4;

        double worst_sup = 0.0;
        for (const auto& h0 : seeds) {
            const PlanarTrajectory traj = evolve_parametric(support_to_curve(h0, 256), cfg);
            for (const auto& snap : traj.snapshots) {
                const SupportFunction hs = support_transform(snap.curve, 8);
                const SupportFunction ho = evolve_support_exact(h0, snap.t);
                for (int i = 0; i < 720; ++i) {
                    const double theta = kTwoPi * i / 720.0;
                    worst_sup = std::max(worst_sup, std::abs(hs.eval(theta) - ho.eval(theta)));
                }
            }
        }

        // residual of the k^2 evolution under output-spacing refinement
        auto worst_residual = [&](int outputs) {
            IntrinsicConfig icfg;
            icfg.dt = 2e-4;
            icfg.t_end = 0.8;
            icfg.outputs = outputs;
            const auto run = evolve_k2(
                make_curvature_field(std::vector<double>(64, 1.0),
                                     std::vector<double>(64, kTwoPi)),
                {0.0}, icfg);
            const ResidualSeries series = residual_eq43(run);
            double worst = 0.0;
            for (double v : series.eq_k2) worst = std::max(worst, v);
            return worst;
        };
        const double r1 = worst_residual(8);
        const double r2 = worst_residual(16);
        const double r3 = worst_residual(32);
        const bool second_order =
            r1 / r2 > 3.3 && r1 / r2 < 4.7 && r2 / r3 > 3.3 && r2 / r3 < 4.7;

        const bool pass = worst_sup <= 1e-3 && second_order;
        return Outcome{pass, fmt("sup |h_solver - h_oracle| %.3e (tol 1e-3), "
                                 "residual ratios %.2f, %.2f (target 4)",
                                 worst_sup, r1 / r2, r2 / r3)};
    });

    // 9. Variation formulas against the third-order ODE.
    run_criterion(9, "variation closed forms vs RK4 over [0, 2*pi] <= 1e-6", [&] {
        double worst = 0.0;
        for (double alpha : {-1.0, 0.0, 1.0})
            worst = std::max(worst, variation_ode_deviation(alpha, kTwoPi, 1e-3));
        return Outcome{worst <= 1e-6, fmt("worst deviation %.3e (tol 1e-6)", worst)};
    });

    // 10. Honest singularity for W = +1.
    run_criterion(10, "W=+1 breakdown at t = log(3/2)/2 within 2%", [&] {
        IntrinsicConfig cfg;
        cfg.dt = 1e-3;
        cfg.t_end = 1.0;
        cfg.outputs = 10;
        const auto run = evolve_k2(
            make_curvature_field(std::vector<double>(256, 1.0),
                                 std::vector<double>(256, kTwoPi)),
            {1.0}, cfg);
        if (!run.singularity.singular)
            return Outcome{false, "run did not report a singularity"};
        const double expected = 0.5 * std::log(1.5);
        const double rel = std::abs(run.singularity.time - expected) / expected;
        return Outcome{rel <= 0.02,
                       fmt("singular at t = %.6f, expected %.6f (rel dev %.3f%%)",
                           run.singularity.time, expected, 100.0 * rel)};
    });

    std::printf("%d of 10 criteria passed\n", 10 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
