#include <doctest.h>

#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "geodesics.hpp"
#include "heis.hpp"
#include "synthetic.hpp"

using namespace legflow;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("helices are horizontal geodesics with the right drift") {
    SUBCASE("k = 1, one turn") {
        const ClosedCurve h = make_helix(1.0, 0.0, 1, 256);
        CHECK(h.holonomy == doctest::Approx(-kTwoPi));
        CHECK(horizontality_residual(h).max_abs <= 1e-10);
        CHECK(geodesic_residual(h) <= 1e-10);
        for (double k : curvature_of(h)) CHECK(k == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("k = 2 halves the radius, drift -pi/2 per turn") {
        const ClosedCurve h = make_helix(2.0, 0.0, 1, 256);
        CHECK(std::hypot(h.x[0], h.y[0]) == doctest::Approx(0.5));
        CHECK(h.holonomy == doctest::Approx(-std::numbers::pi / 2.0));
    }
    SUBCASE("k = -1 reverses the drift") {
        const ClosedCurve h = make_helix(-1.0, 0.0, 1, 256);
        CHECK(h.holonomy == doctest::Approx(kTwoPi));
        for (double k : curvature_of(h)) CHECK(k == doctest::Approx(-1.0).epsilon(1e-10));
    }
    SUBCASE("multiple turns accumulate holonomy") {
        const ClosedCurve h = make_helix(1.0, 0.5, 3, 384);
        CHECK(h.holonomy == doctest::Approx(-3.0 * kTwoPi));
        CHECK(h.z[0] == doctest::Approx(0.5));
        CHECK(geodesic_residual(h) <= 1e-9);
    }
    CHECK_THROWS_AS(make_helix(0.0, 0.0, 1, 256), InvalidArgument);
}

TEST_CASE("horizontal lines") {
    SUBCASE("the x-axis stays at z = 0") {
        const OpenCurve line = make_horizontal_line(0.0, {0, 0, 0}, 2.0, 201);
        for (double z : line.z) CHECK(z == 0.0);
        CHECK(open_horizontality_max(line) <= 1e-14);
    }
    SUBCASE("basepoint (0,1,0), direction (1,0): z grows as +s") {
        const OpenCurve line = make_horizontal_line(0.0, {0, 1, 0}, 3.0, 301);
        CHECK(open_horizontality_max(line) <= 1e-13);
        CHECK(line.z.back() == doctest::Approx(3.0));
    }
    SUBCASE("curvature vanishes") {
        const OpenCurve line = make_horizontal_line(0.7, {0.3, -1.2, 2.0}, 2.0, 201);
        for (double k : open_curvature(line)) CHECK(std::abs(k) <= 1e-10);
        CHECK(open_horizontality_max(line) <= 1e-12);
    }
}

TEST_CASE("vertical variation component") {
    CHECK(variation_vertical(0.0, 2.0) == doctest::Approx(2.0));
    CHECK(variation_vertical(1.0, std::numbers::pi) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(variation_vertical(-1.0, 0.0) == 0.0);

    // continuity across alpha = 0
    const double s = 2.0;
    double prev = 1e300;
    for (double eps : {1e-2, 1e-4, 1e-6}) {
        const double dev = std::max(std::abs(variation_vertical(eps, s) - 0.5 * s * s),
                                    std::abs(variation_vertical(-eps, s) - 0.5 * s * s));
        CHECK(dev < prev);
        prev = dev;
    }
    CHECK(prev <= 1e-5);
}

TEST_CASE("variation ODE matches the closed forms") {
    CHECK(variation_ode_deviation(0.0, 3.0) <= 1e-8);
    CHECK(variation_ode_deviation(1.0, kTwoPi, 1e-3) <= 1e-6);
    CHECK(variation_ode_deviation(-1.0, 3.0, 1e-3) <= 1e-6);

    // RK4 order: large steps halved cut the deviation by about 16
    const double coarse = variation_ode_deviation(1.0, kTwoPi, 0.1);
    const double fine = variation_ode_deviation(1.0, kTwoPi, 0.05);
    CHECK(coarse / fine > 10.0);
    CHECK(coarse / fine < 24.0);
}

TEST_CASE("helix fitting") {
    SUBCASE("round trip on an exact helix") {
        const HelixFit fit = fit_helix(make_helix(1.0, 0.25, 1, 256));
        CHECK(fit.params.radius == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::abs(fit.params.center_x) <= 1e-10);
        CHECK(std::abs(fit.params.center_y) <= 1e-10);
        CHECK(fit.params.pitch_rate == doctest::Approx(-1.0).epsilon(1e-10));
        CHECK(fit.params.z0 == doctest::Approx(0.25).epsilon(1e-9));
        CHECK(fit.params.curvature_sign == +1);
        CHECK(fit.rms <= 1e-8);
    }
    SUBCASE("clockwise helix gets the negative sign") {
        const HelixFit fit = fit_helix(make_helix(-2.0, 0.0, 1, 256));
        CHECK(fit.params.curvature_sign == -1);
        CHECK(fit.params.radius == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(fit.params.pitch_rate == doctest::Approx(0.5).epsilon(1e-9));
    }
    SUBCASE("no false positives on random loops") {
        for (std::uint32_t seed : {21u, 22u, 23u}) {
            const ClosedCurve noise = legendrian_lift(random_loop(256, 6, seed), 0.0);
            const HelixFit fit = fit_helix(noise);
            CHECK(fit.rms_over_length > 1e-3);
        }
    }
    SUBCASE("collinear projections cannot be fit") {
        const int n = 64;
        std::vector<double> x(n), y(n, 0.0), z(n);
        for (int j = 0; j < n; ++j) {
            x[j] = std::cos(kTwoPi * j / n);
            z[j] = std::sin(kTwoPi * j / n);
        }
        const ClosedCurve degenerate = make_closed_curve(x, y, z, 0.0);
        CHECK_THROWS_AS(fit_helix(degenerate), PreconditionError);
    }
}
