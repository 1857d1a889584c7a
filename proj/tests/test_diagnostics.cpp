#include <doctest.h>

#include <cmath>
#include <numbers>

#include "diagnostics.hpp"
#include "flow3d.hpp"
#include "geodesics.hpp"
#include "heis.hpp"
#include "synthetic.hpp"

using namespace legflow;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

SupportFunction ellipse_like() {
    SupportFunction h;
    h.cos_c = {1.0, 0.0, 0.1};
    h.sin_c = {0.0, 0.0, 0.0};
    return h;
}
}  // namespace

TEST_CASE("Minkowski identity vanishes over one period") {
    // unit circle: integrand cancels pointwise
    const ClosedCurve circle = circle_lift(256, 1.0);
    CHECK(std::abs(minkowski_residual(circle)) <= 1e-13 * curve_length(circle));

    // translated circle: cancellation only after integration
    const ClosedCurve shifted = circle_lift(256, 1.0, 2.0, -0.7);
    CHECK(std::abs(minkowski_residual(shifted)) <= 1e-6 * curve_length(shifted));

    // convex non-circular
    const ClosedCurve convex = support_lift(ellipse_like(), 256);
    CHECK(std::abs(minkowski_residual(convex)) <= 1e-6 * curve_length(convex));

    // non-convex positive curvature (turning number two)
    const ClosedCurve lim = legendrian_lift(limacon_curve(256, 0.5), 0.0);
    CHECK(std::abs(minkowski_residual(lim)) <= 1e-6 * curve_length(lim));

    // helix over one fundamental period
    const ClosedCurve helix = make_helix(2.0, 0.0, 1, 256);
    CHECK(std::abs(minkowski_residual(helix)) <= 1e-10 * curve_length(helix));
}

TEST_CASE("total curvature counts the turning number") {
    CHECK(total_curvature(circle_lift(256, 1.0)) == doctest::Approx(kTwoPi).epsilon(1e-10));
    CHECK(turning_number(circle_lift(256, 1.0)) == 1);

    const ClosedCurve convex = support_lift(ellipse_like(), 256);
    CHECK(total_curvature(convex) == doctest::Approx(kTwoPi).epsilon(1e-8));
    CHECK(turning_number(convex) == 1);

    const ClosedCurve twice = legendrian_lift(double_circle_curve(256, 1.0), 0.0);
    CHECK(total_curvature(twice) == doctest::Approx(2.0 * kTwoPi).epsilon(1e-10));
    CHECK(turning_number(twice) == 2);

    const ClosedCurve lim = legendrian_lift(limacon_curve(256, 0.5), 0.0);
    CHECK(total_curvature(lim) == doctest::Approx(2.0 * kTwoPi).epsilon(1e-10));
    CHECK(turning_number(lim) == 2);
}

TEST_CASE("identity suite passes on geodesics") {
    const auto reports = identity_suite(make_helix(1.0, 0.0, 1, 256));
    REQUIRE(reports.size() == 4);
    for (const auto& r : reports) {
        INFO(r.name);
        CHECK(r.pass);
    }
}

TEST_CASE("conservation suites") {
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.8;
    cfg.outputs = 8;
    const ClosedCurve c0 = support_lift(ellipse_like(), 256);
    const FlowTrajectory raw = evolve_expanding(c0, cfg);

    SUBCASE("expanding laws") {
        const auto reports = conservation_suite(raw, FlowKind::Expanding);
        for (const auto& r : reports) {
            INFO(r.name, " value=", r.value, " tol=", r.tolerance);
            CHECK(r.pass);
        }
    }

    SUBCASE("rescaled laws, including the curvature dilation identity") {
        const FlowTrajectory scaled = rescale_trajectory(raw);
        const auto reports = conservation_suite(scaled, FlowKind::Rescaled, &raw);
        bool saw_dilation = false;
        for (const auto& r : reports) {
            INFO(r.name, " value=", r.value, " tol=", r.tolerance);
            CHECK(r.pass);
            saw_dilation = saw_dilation || r.name == "curvature_dilation";
        }
        CHECK(saw_dilation);
    }
}
