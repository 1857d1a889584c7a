#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "flow3d.hpp"
#include "heis.hpp"
#include "io.hpp"
#include "synthetic.hpp"

using namespace legflow;

namespace {

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("legflow_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("curve files round trip exactly") {
    const ClosedCurve c = legendrian_lift(random_loop(64, 5, 3), 0.5);
    const auto path = temp_path("roundtrip.curve");
    save_curve(c, path.string());
    const LoadedCurve back = load_curve(path.string());
    REQUIRE(!back.planar);
    CHECK(back.curve.holonomy == c.holonomy);
    for (int j = 0; j < c.size(); ++j) {
        CHECK(back.curve.x[j] == c.x[j]);
        CHECK(back.curve.y[j] == c.y[j]);
        CHECK(back.curve.z[j] == c.z[j]);
    }
}

TEST_CASE("planar flag round trips") {
    const PlanarCurve c = circle_curve(32, 1.5);
    const auto path = temp_path("planar.curve");
    save_planar_curve(c, path.string());
    const LoadedCurve back = load_curve(path.string());
    REQUIRE(back.planar);
    CHECK(back.planar_curve.x[0] == c.x[0]);
}

TEST_CASE("parse errors carry line numbers") {
    const auto path = temp_path("bad.curve");

    SUBCASE("wrong magic") {
        std::ofstream(path) << "not-a-curve\n";
        CHECK_THROWS_AS(load_curve(path.string()), ParseError);
    }
    SUBCASE("truncated rows") {
        const ClosedCurve c = circle_lift(32, 1.0);
        save_curve(c, path.string());
        // drop the last two lines
        std::string text = slurp(path);
        text.erase(text.rfind('\n', text.size() - 2));
        std::ofstream(path) << text;
        try {
            load_curve(path.string());
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() == 34);  // 2 header lines + 32 rows
        }
    }
    SUBCASE("wrong u grid") {
        std::ofstream out(path);
        out << "legflow-curve v1\nn=16 holonomy=0\n";
        for (int j = 0; j < 16; ++j) out << 0.3 << " 1 0 0\n";
        out.close();
        CHECK_THROWS_AS(load_curve(path.string()), ParseError);
    }
}

TEST_CASE("holonomy inconsistent with the samples is rejected") {
    const ClosedCurve c = circle_lift(64, 1.0);  // holonomy -2*pi
    const auto path = temp_path("mismatch.curve");
    save_curve(c, path.string());
    std::string text = slurp(path);
    const auto pos = text.find("holonomy=");
    text = text.substr(0, pos) + "holonomy=0" + text.substr(text.find('\n', pos));
    std::ofstream(path) << text;
    CHECK_THROWS_AS(load_curve(path.string()), IoError);
}

TEST_CASE("support and field files round trip") {
    SupportFunction h;
    h.cos_c = {1.0, 0.25, -0.125};
    h.sin_c = {0.0, 0.5, 0.0625};
    const auto spath = temp_path("h.support");
    save_support(h, spath.string());
    const SupportFunction hs = load_support(spath.string());
    CHECK(hs.cos_c == h.cos_c);
    CHECK(hs.sin_c == h.sin_c);

    const CurvatureField f = make_curvature_field(std::vector<double>(32, 1.25),
                                                  std::vector<double>(32, 2.0), 0.5);
    const auto fpath = temp_path("f.field");
    save_field(f, -1.0, fpath.string());
    const LoadedField lf = load_field(fpath.string());
    CHECK(lf.W == -1.0);
    CHECK(lf.field.t == 0.5);
    CHECK(lf.field.phi == f.phi);
    CHECK(lf.field.m0 == f.m0);
}

TEST_CASE("trajectory directories are reproducible without timestamps") {
    SolverConfig cfg;
    cfg.t_end = 0.2;
    cfg.outputs = 2;
    const FlowTrajectory traj = evolve_expanding(circle_lift(64, 1.0), cfg);

    const auto dir_a = temp_path("traj_a");
    const auto dir_b = temp_path("traj_b");
    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);
    write_trajectory(traj, dir_a.string(), false);
    write_trajectory(traj, dir_b.string(), false);

    CHECK(std::filesystem::exists(dir_a / "state_0000.curve"));
    CHECK(std::filesystem::exists(dir_a / "state_0002.curve"));
    CHECK(slurp(dir_a / "diagnostics.csv") == slurp(dir_b / "diagnostics.csv"));
    CHECK(slurp(dir_a / "state_0001.curve") == slurp(dir_b / "state_0001.curve"));

    const std::string csv = slurp(dir_a / "diagnostics.csv");
    CHECK(csv.rfind("t,length,kmin,kmax,leg_residual,minkowski,total_curvature,holonomy\n", 0) ==
          0);
}
