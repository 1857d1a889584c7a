// Exercises the public C API through the shared library only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <vector>

#include "legflow/legflow.h"

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

TEST_CASE("version and error message") {
    CHECK(std::strlen(legflow_version()) > 0);
    legflow_curve* c = nullptr;
    CHECK(legflow_curve_load("/nonexistent/file.curve", &c) == LEGFLOW_ERR_IO);
    CHECK(std::strlen(legflow_last_error()) > 0);
}

TEST_CASE("curve construction and queries") {
    legflow_curve* c = nullptr;
    REQUIRE(legflow_curve_circle_lift(128, 1.0, 0.0, 0.0, 0.0, &c) == LEGFLOW_OK);
    CHECK(legflow_curve_size(c) == 128);
    CHECK(legflow_curve_length(c) == doctest::Approx(kTwoPi).epsilon(1e-10));
    CHECK(legflow_curve_holonomy(c) == doctest::Approx(-kTwoPi).epsilon(1e-10));

    double residual = 1.0;
    CHECK(legflow_curve_legendrian_residual(c, &residual) == LEGFLOW_OK);
    CHECK(residual <= 1e-10);

    std::vector<double> k(128);
    CHECK(legflow_curve_curvature(c, k.data()) == LEGFLOW_OK);
    CHECK(k[17] == doctest::Approx(1.0).epsilon(1e-10));

    legflow_curve* big = nullptr;
    REQUIRE(legflow_curve_dilate(c, 2.0, &big) == LEGFLOW_OK);
    CHECK(legflow_curve_length(big) == doctest::Approx(2.0 * kTwoPi).epsilon(1e-10));
    CHECK(legflow_curve_dilate(c, -1.0, &big) == LEGFLOW_ERR_INVALID_ARGUMENT);

    legflow_curve_free(big);
    legflow_curve_free(c);
}

TEST_CASE("expanding flow and rescaling through the API") {
    legflow_curve* c = nullptr;
    REQUIRE(legflow_curve_circle_lift(128, 1.0, 0.0, 0.0, 0.0, &c) == LEGFLOW_OK);

    legflow_flow_config cfg;
    legflow_flow_config_default(&cfg);
    cfg.t_end = 0.5;
    cfg.outputs = 5;

    legflow_trajectory* traj = nullptr;
    REQUIRE(legflow_evolve_expanding(c, &cfg, &traj) == LEGFLOW_OK);
    CHECK(legflow_trajectory_size(traj) == 6);
    double row[7];
    REQUIRE(legflow_trajectory_diagnostics(traj, 5, row) == LEGFLOW_OK);
    CHECK(row[0] == doctest::Approx(kTwoPi * std::exp(0.5)).epsilon(1e-6));

    legflow_trajectory* scaled = nullptr;
    REQUIRE(legflow_trajectory_rescale(traj, &scaled) == LEGFLOW_OK);
    REQUIRE(legflow_trajectory_diagnostics(scaled, 5, row) == LEGFLOW_OK);
    CHECK(row[0] == doctest::Approx(kTwoPi).epsilon(1e-9));

    legflow_report reports[16];
    int n_reports = 0;
    REQUIRE(legflow_verify_trajectory(scaled, 1, traj, reports, 16, &n_reports) == LEGFLOW_OK);
    CHECK(n_reports >= 6);
    for (int i = 0; i < n_reports; ++i) {
        INFO(reports[i].name);
        CHECK(reports[i].pass == 1);
    }

    CHECK(legflow_trajectory_diagnostics(traj, 99, row) == LEGFLOW_ERR_INVALID_ARGUMENT);

    legflow_trajectory_free(scaled);
    legflow_trajectory_free(traj);
    legflow_curve_free(c);
}

TEST_CASE("intrinsic runs flag genuine breakdowns") {
    std::vector<double> phi0(64, 1.0);
    legflow_intrinsic_config cfg;
    legflow_intrinsic_config_default(&cfg);
    cfg.t_end = 1.0;

    legflow_intrinsic* run = nullptr;
    REQUIRE(legflow_intrinsic_run(64, phi0.data(), nullptr, 1.0, &cfg, &run) == LEGFLOW_OK);
    CHECK(legflow_intrinsic_singular(run) == 1);
    const double expected = 0.5 * std::log(1.5);
    CHECK(std::abs(legflow_intrinsic_singular_time(run) - expected) / expected <= 0.02);
    legflow_intrinsic_free(run);

    run = nullptr;
    cfg.t_end = 6.0;
    REQUIRE(legflow_intrinsic_run(64, phi0.data(), nullptr, -1.0, &cfg, &run) == LEGFLOW_OK);
    CHECK(legflow_intrinsic_singular(run) == 0);
    CHECK(legflow_intrinsic_violations(run) == 0);
    double lo = 0.0, hi = 0.0, ds = 0.0;
    const int last = legflow_intrinsic_size(run) - 1;
    REQUIRE(legflow_intrinsic_stats(run, last, &lo, &hi, &ds) == LEGFLOW_OK);
    CHECK(std::abs(hi - 2.0) <= 1e-3);
    legflow_intrinsic_free(run);
}

TEST_CASE("oracles through the API") {
    CHECK(legflow_homogeneous_oracle(1.0, -1.0, 1.0) ==
          doctest::Approx(2.0 - std::exp(-2.0)));

    const double cos_in[3] = {1.0, 0.0, 0.1};
    const double sin_in[3] = {0.0, 0.0, 0.0};
    double cos_out[3], sin_out[3];
    REQUIRE(legflow_support_evolve(2, cos_in, sin_in, 1.0, cos_out, sin_out) == LEGFLOW_OK);
    CHECK(cos_out[0] == doctest::Approx(std::exp(1.0)));
    CHECK(cos_out[2] == doctest::Approx(0.1 * std::exp(-3.0)));

    CHECK(legflow_variation_vertical(0.0, 2.0) == doctest::Approx(2.0));
    CHECK(legflow_variation_ode_deviation(1.0, kTwoPi, 1e-3) <= 1e-6);
}

TEST_CASE("helix fit and line checks through the API") {
    legflow_curve* helix = nullptr;
    REQUIRE(legflow_curve_helix(256, 1.0, 0.0, 1, &helix) == LEGFLOW_OK);
    legflow_helix_fit fit;
    REQUIRE(legflow_fit_helix(helix, &fit) == LEGFLOW_OK);
    CHECK(fit.radius == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fit.pitch_rate == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(fit.rms <= 1e-8);
    legflow_curve_free(helix);

    double res = 1.0, kmax = 1.0;
    REQUIRE(legflow_horizontal_line(0.0, 0.0, 1.0, 0.0, 3.0, 301, nullptr, &res, &kmax) ==
            LEGFLOW_OK);
    CHECK(res <= 1e-12);
    CHECK(kmax <= 1e-10);
}

TEST_CASE("file i/o through the API") {
    const auto dir = std::filesystem::temp_directory_path() / "legflow_capi_io";
    std::filesystem::create_directories(dir);

    legflow_curve* c = nullptr;
    REQUIRE(legflow_curve_limacon(128, 0.5, 0.0, &c) == LEGFLOW_OK);
    const auto path = (dir / "limacon.curve").string();
    REQUIRE(legflow_curve_save(c, path.c_str()) == LEGFLOW_OK);

    legflow_curve* back = nullptr;
    REQUIRE(legflow_curve_load(path.c_str(), &back) == LEGFLOW_OK);
    CHECK(legflow_curve_length(back) == doctest::Approx(legflow_curve_length(c)));

    legflow_report reports[16];
    int n_reports = 0;
    REQUIRE(legflow_verify_curve(back, reports, 16, &n_reports) == LEGFLOW_OK);
    for (int i = 0; i < n_reports; ++i) {
        INFO(reports[i].name);
        CHECK(reports[i].pass == 1);
    }

    legflow_curve_free(back);
    legflow_curve_free(c);
}
