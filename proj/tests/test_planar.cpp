#include <doctest.h>

#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "heis.hpp"
#include "planar.hpp"
#include "synthetic.hpp"
#include "testutil.hpp"

using namespace legflow;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double max_radius(const PlanarCurve& c) {
    double r = 0.0;
    for (int j = 0; j < c.size(); ++j) r = std::max(r, std::hypot(c.x[j], c.y[j]));
    return r;
}

SupportFunction ellipse_like() {
    SupportFunction h;
    h.cos_c = {1.0, 0.0, 0.1};
    h.sin_c = {0.0, 0.0, 0.0};
    return h;
}
}  // namespace

TEST_CASE("one step expands a circle to radius exp(dt) with O(dt^5) error") {
    // Measured at n = 16 so these dt values stay inside the CFL bound
    // (truncation must dominate, not amplified roundoff).
    for (bool clockwise : {false, true}) {
        auto radius_error = [&](double dt) {
            const int n = 16;
            std::vector<double> x(n), y(n);
            const double sign = clockwise ? -1.0 : 1.0;
            for (int j = 0; j < n; ++j) {
                x[j] = std::cos(sign * kTwoPi * j / n);
                y[j] = std::sin(sign * kTwoPi * j / n);
            }
            const PlanarCurve next = step_parametric(make_planar_curve(x, y), dt);
            double worst = 0.0;
            for (int j = 0; j < n; ++j)
                worst = std::max(worst,
                                 std::abs(std::hypot(next.x[j], next.y[j]) - std::exp(dt)));
            return worst;
        };
        // RK4 local truncation for r' = r is dt^5/120 per step
        const double e1 = radius_error(0.025);
        const double e2 = radius_error(0.0125);
        CHECK(e1 <= std::pow(0.025, 5) / 50.0);
        CHECK(e1 / e2 > 20.0);
        CHECK(e1 / e2 < 45.0);
    }
}

TEST_CASE("vanishing curvature is a singularity, not a solver bug") {
    // the figure eight has an exact inflection at sample 0
    const PlanarCurve eight = figure_eight_curve(256);
    CHECK_THROWS_AS(step_parametric(eight, 1e-4), SingularityError);
    try {
        step_parametric(eight, 1e-4, {}, 0.75);
        FAIL("expected singularity");
    } catch (const SingularityError& e) {
        CHECK(e.time() == 0.75);
        CHECK(e.sample() == 0);
    }
}

TEST_CASE("circle run reaches length 2*pi*e at t = 1") {
    SolverConfig cfg;
    cfg.dt = 1e-4;
    cfg.t_end = 1.0;
    cfg.outputs = 10;
    const PlanarTrajectory traj = evolve_parametric(circle_curve(256, 1.0), cfg);
    const double expected = kTwoPi * std::exp(1.0);
    CHECK(std::abs(traj.snapshots.back().length - expected) / expected <= 1e-4);

    // d(log L)/dt = 1 along the whole run
    for (std::size_t i = 1; i + 1 < traj.snapshots.size(); ++i) {
        const double rate = (std::log(traj.snapshots[i + 1].length) -
                             std::log(traj.snapshots[i - 1].length)) /
                            (traj.snapshots[i + 1].t - traj.snapshots[i - 1].t);
        CHECK(rate == doctest::Approx(1.0).epsilon(1e-3));
    }
}

TEST_CASE("t_end = 0 returns the initial curve") {
    SolverConfig cfg;
    cfg.t_end = 0.0;
    cfg.outputs = 1;
    const PlanarCurve c = circle_curve(64, 1.0);
    const PlanarTrajectory traj = evolve_parametric(c, cfg);
    REQUIRE(traj.snapshots.size() == 2);
    for (int j = 0; j < c.size(); ++j) {
        CHECK(traj.snapshots.back().curve.x[j] == c.x[j]);
        CHECK(traj.snapshots.back().curve.y[j] == c.y[j]);
    }
}

TEST_CASE("pure mode moves strictly along the normal") {
    const PlanarCurve c = support_to_curve(ellipse_like(), 128);
    const ImcfField f = imcf_field(c.x, c.y, c.scheme, 1e-4, 0.0);
    const auto xu = periodic_derivative(c.x, 1, c.scheme);
    const auto yu = periodic_derivative(c.y, 1, c.scheme);
    for (int j = 0; j < c.size(); ++j) {
        const double dot = f.vx[j] * xu[j] + f.vy[j] * yu[j];
        CHECK(std::abs(dot) <= 1e-10);
    }
}

TEST_CASE("support transform of circles") {
    // unit circle at the origin: h = 1
    SupportFunction h = support_transform(circle_curve(256, 1.0), 8);
    CHECK(h.cos_c[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (int m = 1; m <= h.max_mode(); ++m) {
        CHECK(std::abs(h.cos_c[m]) <= 1e-12);
        CHECK(std::abs(h.sin_c[m]) <= 1e-12);
    }

    // translation enters as the mode-1 cosine
    h = support_transform(circle_curve(256, 1.0, 0.4, 0.0), 8);
    CHECK(h.cos_c[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(h.cos_c[1] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(std::abs(h.sin_c[1]) <= 1e-12);
}

TEST_CASE("support round trip is spectrally tight") {
    const SupportFunction h0 = ellipse_like();
    const PlanarCurve curve = support_to_curve(h0, 256);
    const SupportFunction h1 = support_transform(curve, 8);
    CHECK(std::abs(h1.cos_c[0] - 1.0) <= 1e-12);
    CHECK(std::abs(h1.cos_c[2] - 0.1) <= 1e-12);

    const PlanarCurve back = support_to_curve(h1, 256);
    CHECK(hausdorff_distance(curve, back) <= 1e-6);

    // and against the polygon-support oracle at a coarse tolerance
    for (double theta : {0.0, 1.0, 2.5, 4.0}) {
        CHECK(h1.eval(theta) ==
              doctest::Approx(testutil::polygon_support(curve, theta)).epsilon(1e-3));
    }
}

TEST_CASE("non-convex input is rejected with the failing location") {
    CHECK_THROWS_AS(support_transform(limacon_curve(256, 0.5), 8), ConvexityError);

    SupportFunction bad;
    bad.cos_c = {1.0, 0.0, 0.9};  // rho = 1 - 2.7 cos 2t dips negative
    bad.sin_c = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(support_to_curve(bad, 128), ConvexityError);
    CHECK_THROWS_AS(evolve_support_exact(bad, 1.0), ConvexityError);
}

TEST_CASE("exact support evolution factors") {
    SupportFunction h0;
    h0.cos_c = {1.0, 0.2, 0.1, 0.05};
    h0.sin_c = {0.0, -0.1, 0.03, 0.0};
    const double t = 0.7;
    const SupportFunction h = evolve_support_exact(h0, t);
    for (int m = 0; m <= 3; ++m) {
        const double f = std::exp((1.0 - m * m) * t);
        CHECK(h.cos_c[m] == doctest::Approx(h0.cos_c[m] * f).epsilon(1e-15));
        CHECK(h.sin_c[m] == doctest::Approx(h0.sin_c[m] * f).epsilon(1e-15));
    }

    // h = 1 goes to e at t = 1; a pure translation mode never moves
    SupportFunction one;
    one.cos_c = {1.0};
    one.sin_c = {0.0};
    CHECK(evolve_support_exact(one, 1.0).cos_c[0] == doctest::Approx(std::exp(1.0)));
    SupportFunction shift;
    shift.cos_c = {2.0, 0.3};
    shift.sin_c = {0.0, 0.0};
    CHECK(evolve_support_exact(shift, 5.0).cos_c[1] == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("parametric solver agrees with the spectral oracle") {
    const SupportFunction h0 = ellipse_like();
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    cfg.outputs = 4;
    const PlanarTrajectory traj = evolve_parametric(support_to_curve(h0, 256), cfg);
    for (const auto& snap : traj.snapshots) {
        const SupportFunction h_solver = support_transform(snap.curve, 8);
        const SupportFunction h_oracle = evolve_support_exact(h0, snap.t);
        double sup = 0.0;
        for (int i = 0; i < 720; ++i) {
            const double theta = kTwoPi * i / 720.0;
            sup = std::max(sup, std::abs(h_solver.eval(theta) - h_oracle.eval(theta)));
        }
        CHECK(sup <= 1e-3);
    }
}

TEST_CASE("arc-length resampling changes parameterization only") {
    const PlanarCurve c = support_to_curve(ellipse_like(), 256);
    const PlanarCurve r = resample_uniform_arclength(c);
    CHECK(r.x[0] == c.x[0]);
    CHECK(r.y[0] == c.y[0]);
    const auto speed = planar_speed(r);
    double lo = 1e300, hi = 0.0;
    for (double s : speed) {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    CHECK(hi / lo - 1.0 <= 1e-8);
    CHECK(hausdorff_distance(c, r) <= 1e-8);
    CHECK(curve_length(r) == doctest::Approx(curve_length(c)).epsilon(1e-10));
}

TEST_CASE("shape mode tracks pure mode in shape") {
    SolverConfig pure;
    pure.dt = 1e-3;
    pure.t_end = 0.2;
    pure.outputs = 2;
    SolverConfig shape = pure;
    shape.shape_mode = true;
    const PlanarCurve c0 = support_to_curve(ellipse_like(), 128);
    const PlanarTrajectory a = evolve_parametric(c0, pure);
    const PlanarTrajectory b = evolve_parametric(c0, shape);
    CHECK(hausdorff_distance(a.snapshots.back().curve, b.snapshots.back().curve) <= 1e-7);
    CHECK(max_radius(a.snapshots.back().curve) ==
          doctest::Approx(max_radius(b.snapshots.back().curve)).epsilon(1e-8));
}

TEST_CASE("cfl bound for the unit circle") {
    SolverConfig cfg;
    const double bound = cfl_bound(circle_curve(256, 1.0), cfg);
    const double ds = kTwoPi / 256.0;
    CHECK(bound == doctest::Approx(0.25 * ds * ds).epsilon(1e-6));
}
