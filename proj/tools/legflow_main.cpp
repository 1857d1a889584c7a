// legflow command-line driver. Links the public C API only.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "legflow/legflow.h"

namespace {

int fail(legflow_status status) {
    std::fprintf(stderr, "error: %s\n", legflow_last_error());
    return status == LEGFLOW_ERR_SINGULARITY ? 2 : 1;
}

int usage_error(const std::string& msg) {
    std::fprintf(stderr, "error: %s\n", msg.c_str());
    return 1;
}

// RAII wrappers around the C handles.
struct CurveHandle {
    legflow_curve* ptr = nullptr;
    ~CurveHandle() { legflow_curve_free(ptr); }
};
struct TrajHandle {
    legflow_trajectory* ptr = nullptr;
    ~TrajHandle() { legflow_trajectory_free(ptr); }
};
struct IntrinsicHandle {
    legflow_intrinsic* ptr = nullptr;
    ~IntrinsicHandle() { legflow_intrinsic_free(ptr); }
};

std::vector<double> parse_number_list(const std::string& s) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        out.push_back(std::stod(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

// Shape grammar:
//   circle[:r[,cx,cy]]       lifted circle (default radius 1 at the origin)
//   support:a0[,a1,b1,...]   lifted convex curve from support coefficients
//   limacon[:amp]            turning-number-two positive-curvature loop
//   helix:k[,turns]          geodesic helix
//   random[:modes]           seeded smooth random loop
legflow_status make_shape(const std::string& spec, int n, double z0, unsigned seed,
                          legflow_curve** out) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "circle") {
        double r = 1.0, cx = 0.0, cy = 0.0;
        if (!args.empty()) {
            const auto v = parse_number_list(args);
            r = v.at(0);
            if (v.size() > 1) cx = v.at(1);
            if (v.size() > 2) cy = v.at(2);
        }
        return legflow_curve_circle_lift(n, r, cx, cy, z0, out);
    }
    if (kind == "support") {
        const auto v = parse_number_list(args);
        // a0, then (a_m, b_m) pairs
        std::vector<double> cos_c{v.at(0)}, sin_c{0.0};
        for (std::size_t i = 1; i + 1 < v.size() + 1 && i < v.size(); i += 2) {
            cos_c.push_back(v[i]);
            sin_c.push_back(i + 1 < v.size() ? v[i + 1] : 0.0);
        }
        return legflow_curve_from_support(n, static_cast<int>(cos_c.size()) - 1, cos_c.data(),
                                          sin_c.data(), z0, out);
    }
    if (kind == "limacon") {
        const double amp = args.empty() ? 0.5 : std::stod(args);
        return legflow_curve_limacon(n, amp, z0, out);
    }
    if (kind == "helix") {
        const auto v = parse_number_list(args.empty() ? "1" : args);
        const int turns = v.size() > 1 ? static_cast<int>(v[1]) : 1;
        return legflow_curve_helix(n, v.at(0), z0, turns, out);
    }
    if (kind == "random") {
        const int modes = args.empty() ? 6 : std::stoi(args);
        return legflow_curve_random(n, modes, seed, z0, out);
    }
    std::fprintf(stderr, "error: unknown shape '%s'\n", spec.c_str());
    return LEGFLOW_ERR_INVALID_ARGUMENT;
}

int thread_cap() {
    if (const char* env = std::getenv("LEGFLOW_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

struct FlowOptions {
    std::string input, shape, out_dir = "legflow_out";
    int n = 256;
    double z0 = 0.0;
    unsigned seed = 1;
    legflow_flow_config cfg{};
    bool shape_mode = false, fd4 = false, plot = false, no_timestamp = false;
};

void add_flow_options(CLI::App* cmd, FlowOptions& opt) {
    legflow_flow_config_default(&opt.cfg);
    cmd->add_option("--input", opt.input, "curve file (legflow-curve v1)");
    cmd->add_option("--shape", opt.shape,
                    "synthetic input: circle[:r[,cx,cy]] | support:a0[,a1,b1,...] | "
                    "limacon[:amp] | helix:k[,turns] | random[:modes]");
    cmd->add_option("--out", opt.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--n", opt.n, "samples for synthetic shapes")->capture_default_str();
    cmd->add_option("--z0", opt.z0, "lift basepoint height for shapes")->capture_default_str();
    cmd->add_option("--seed", opt.seed, "seed for random shapes")->capture_default_str();
    cmd->add_option("--dt", opt.cfg.dt, "time-step cap")->capture_default_str();
    cmd->add_option("--t-end", opt.cfg.t_end, "final time")->capture_default_str();
    cmd->add_option("--outputs", opt.cfg.outputs, "number of output frames")
        ->capture_default_str();
    cmd->add_option("--k-floor", opt.cfg.k_floor, "singularity threshold on |k|")
        ->capture_default_str();
    cmd->add_option("--cfl", opt.cfg.cfl_safety, "CFL safety factor")->capture_default_str();
    cmd->add_flag("--shape-mode", opt.shape_mode,
                  "redistribute samples to uniform arc length (default: pure normal motion)");
    cmd->add_flag("--fd4", opt.fd4, "4th-order finite differences instead of spectral");
    cmd->add_flag("--plot", opt.plot, "write projection SVG into the output directory");
    cmd->add_flag("--no-timestamp", opt.no_timestamp, "omit timestamp comments from outputs");
}

int load_input(const FlowOptions& opt, CurveHandle& curve) {
    if (opt.input.empty() == opt.shape.empty())
        return usage_error("provide exactly one of --input or --shape");
    const legflow_status s =
        opt.input.empty() ? make_shape(opt.shape, opt.n, opt.z0, opt.seed, &curve.ptr)
                          : legflow_curve_load(opt.input.c_str(), &curve.ptr);
    return s == LEGFLOW_OK ? 0 : fail(s);
}

int write_trajectory_outputs(const FlowOptions& opt, const TrajHandle& traj) {
    const int ts = opt.no_timestamp ? 0 : 1;
    legflow_status s = legflow_trajectory_write(traj.ptr, opt.out_dir.c_str(), ts);
    if (s != LEGFLOW_OK) return fail(s);
    if (opt.plot) {
        const std::string svg = opt.out_dir + "/projection.svg";
        s = legflow_trajectory_plot(traj.ptr, svg.c_str(), ts);
        if (s != LEGFLOW_OK) return fail(s);
    }
    const int last = legflow_trajectory_size(traj.ptr) - 1;
    double row[7];
    legflow_trajectory_diagnostics(traj.ptr, last, row);
    std::printf("t=%g length=%.12g kmin=%.6g kmax=%.6g leg_residual=%.3g holonomy=%.6g\n",
                legflow_trajectory_time(traj.ptr, last), row[0], row[1], row[2], row[3], row[6]);
    std::printf("wrote %d states to %s\n", last + 1, opt.out_dir.c_str());
    return 0;
}

int run_evolve(const FlowOptions& opt) {
    CurveHandle curve;
    if (int rc = load_input(opt, curve)) return rc;
    legflow_flow_config cfg = opt.cfg;
    cfg.shape_mode = opt.shape_mode ? 1 : 0;
    cfg.use_fd4 = opt.fd4 ? 1 : 0;
    TrajHandle traj;
    const legflow_status s = legflow_evolve_expanding(curve.ptr, &cfg, &traj.ptr);
    if (s != LEGFLOW_OK) return fail(s);
    return write_trajectory_outputs(opt, traj);
}

int run_rescale(const FlowOptions& opt, bool direct) {
    CurveHandle curve;
    if (int rc = load_input(opt, curve)) return rc;
    legflow_flow_config cfg = opt.cfg;
    cfg.shape_mode = opt.shape_mode ? 1 : 0;
    cfg.use_fd4 = opt.fd4 ? 1 : 0;
    TrajHandle traj;
    legflow_status s;
    if (direct) {
        s = legflow_evolve_rescaled_direct(curve.ptr, &cfg, &traj.ptr);
        if (s != LEGFLOW_OK) return fail(s);
    } else {
        TrajHandle raw;
        s = legflow_evolve_expanding(curve.ptr, &cfg, &raw.ptr);
        if (s != LEGFLOW_OK) return fail(s);
        s = legflow_trajectory_rescale(raw.ptr, &traj.ptr);
        if (s != LEGFLOW_OK) return fail(s);
    }
    return write_trajectory_outputs(opt, traj);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"legflow: Legendrian curve flows in the first Heisenberg group"};
    app.require_subcommand(1);

    // evolve ---------------------------------------------------------------
    FlowOptions evolve_opt;
    CLI::App* evolve = app.add_subcommand("evolve", "run the expanding flow");
    add_flow_options(evolve, evolve_opt);

    // rescale --------------------------------------------------------------
    FlowOptions rescale_opt;
    bool rescale_direct = false;
    CLI::App* rescale =
        app.add_subcommand("rescale", "run the length-preserving (rescaled) flow");
    add_flow_options(rescale, rescale_opt);
    rescale->add_flag("--direct", rescale_direct,
                      "step the rescaled equation directly (experimental cross-check)");

    // intrinsic ------------------------------------------------------------
    CLI::App* intrinsic = app.add_subcommand("intrinsic", "run the intrinsic k^2 evolution");
    double in_W = 0.0;
    bool in_W_given = false;
    std::string phi0_spec = "const:1", field_input;
    std::string in_out_dir = "legflow_out";
    int in_n = 256;
    bool in_plot = false, in_no_timestamp = false;
    legflow_intrinsic_config in_cfg;
    legflow_intrinsic_config_default(&in_cfg);
    intrinsic->add_option("--W", in_W, "constant Webster scalar curvature (required unless --input)")
        ->each([&](const std::string&) { in_W_given = true; });
    intrinsic->add_option("--phi0", phi0_spec,
                          "initial k^2: const:<v> | perturbed:<base>,<amp>,<mode>")
        ->capture_default_str();
    intrinsic->add_option("--input", field_input, "field file (legflow-field v1)");
    intrinsic->add_option("--n", in_n, "samples for synthetic phi0")->capture_default_str();
    intrinsic->add_option("--dt", in_cfg.dt, "time-step cap")->capture_default_str();
    intrinsic->add_option("--t-end", in_cfg.t_end, "final time")->capture_default_str();
    intrinsic->add_option("--outputs", in_cfg.outputs, "number of output frames")
        ->capture_default_str();
    intrinsic->add_option("--phi-floor", in_cfg.phi_floor, "singularity threshold on k^2")
        ->capture_default_str();
    intrinsic->add_option("--cfl", in_cfg.cfl_safety, "CFL safety factor")
        ->capture_default_str();
    intrinsic->add_option("--out", in_out_dir, "output directory")->capture_default_str();
    intrinsic->add_flag("--plot", in_plot, "write phi(t) SVG into the output directory");
    intrinsic->add_flag("--no-timestamp", in_no_timestamp, "omit timestamp comments");

    // geodesic ---------------------------------------------------------------
    CLI::App* geodesic = app.add_subcommand("geodesic", "make or fit model-space geodesics");
    double geo_k = 1.0, geo_z0 = 0.0, geo_angle = 0.0, geo_smax = 3.0;
    int geo_turns = 1, geo_n = 256;
    std::string geo_out, geo_fit_input, geo_basepoint = "0,0,0";
    bool geo_line = false;
    geodesic->add_option("--k", geo_k, "helix curvature (nonzero)")->capture_default_str();
    geodesic->add_option("--z0", geo_z0, "initial height")->capture_default_str();
    geodesic->add_option("--turns", geo_turns, "projection turns")->capture_default_str();
    geodesic->add_option("--n", geo_n, "samples")->capture_default_str();
    geodesic->add_option("--out", geo_out, "output file for the helix or line samples");
    geodesic->add_flag("--line", geo_line, "horizontal straight line instead of a helix");
    geodesic->add_option("--angle", geo_angle, "line direction angle")->capture_default_str();
    geodesic->add_option("--basepoint", geo_basepoint, "line basepoint x,y,z")
        ->capture_default_str();
    geodesic->add_option("--smax", geo_smax, "line arc length")->capture_default_str();
    geodesic->add_option("--fit", geo_fit_input, "fit a helix to this curve file");

    // verify -----------------------------------------------------------------
    CLI::App* verify = app.add_subcommand("verify", "run the identity suite on curve files");
    std::vector<std::string> verify_inputs;
    std::string verify_csv;
    bool verify_no_timestamp = false;
    verify->add_option("--input", verify_inputs, "curve file(s)")->required();
    verify->add_option("--out", verify_csv, "write reports to this CSV file");
    verify->add_flag("--no-timestamp", verify_no_timestamp, "omit timestamp comments");

    // oracle -----------------------------------------------------------------
    CLI::App* oracle = app.add_subcommand("oracle", "evaluate analytic oracles");
    std::string orc_homog, orc_support_in, orc_support_out, orc_variation, orc_varcheck;
    double orc_t = 1.0;
    oracle->add_option("--homogeneous", orc_homog,
                       "phi0,W,t: spatially constant k^2 solution");
    oracle->add_option("--support", orc_support_in, "support file to evolve exactly");
    oracle->add_option("--t", orc_t, "evolution time for --support")->capture_default_str();
    oracle->add_option("--out", orc_support_out, "output support file");
    oracle->add_option("--variation", orc_variation, "alpha,s: vertical variation component");
    oracle->add_option("--variation-check", orc_varcheck,
                       "alpha,smax[,step]: closed form vs RK4 deviation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return 1;
    }

    if (evolve->parsed()) return run_evolve(evolve_opt);
    if (rescale->parsed()) return run_rescale(rescale_opt, rescale_direct);

    if (intrinsic->parsed()) {
        std::vector<double> phi0;
        std::vector<double> m0;
        const double* m0_ptr = nullptr;
        if (!field_input.empty()) {
            int n = 0;
            double file_W = 0.0, file_t = 0.0;
            legflow_status s =
                legflow_field_load(field_input.c_str(), 0, nullptr, nullptr, &n, &file_W,
                                   &file_t);
            if (s != LEGFLOW_OK) return fail(s);
            if (file_t != 0.0) return usage_error("field file must start at t=0");
            phi0.resize(n);
            m0.resize(n);
            s = legflow_field_load(field_input.c_str(), n, phi0.data(), m0.data(), &n,
                                   &file_W, &file_t);
            if (s != LEGFLOW_OK) return fail(s);
            in_n = n;
            m0_ptr = m0.data();
            if (!in_W_given) in_W = file_W;
        } else {
            if (!in_W_given) return usage_error("--W is required unless --input is given");
            const auto colon = phi0_spec.find(':');
            const std::string kind = phi0_spec.substr(0, colon);
            const std::string args =
                colon == std::string::npos ? "" : phi0_spec.substr(colon + 1);
            if (kind == "const") {
                phi0.assign(in_n, std::stod(args.empty() ? "1" : args));
            } else if (kind == "perturbed") {
                const auto v = parse_number_list(args);
                if (v.size() < 3) return usage_error("perturbed:<base>,<amp>,<mode>");
                phi0.resize(in_n);
                constexpr double two_pi = 6.283185307179586476925286766559;
                for (int j = 0; j < in_n; ++j)
                    phi0[j] = v[0] + v[1] * std::sin(two_pi * v[2] * j / in_n);
            } else {
                return usage_error("unknown --phi0 spec '" + phi0_spec + "'");
            }
        }
        IntrinsicHandle run;
        const legflow_status s =
            legflow_intrinsic_run(in_n, phi0.data(), m0_ptr, in_W, &in_cfg, &run.ptr);
        if (s != LEGFLOW_OK) return fail(s);
        const int ts = in_no_timestamp ? 0 : 1;
        legflow_status ws = legflow_intrinsic_write(run.ptr, in_out_dir.c_str(), ts);
        if (ws != LEGFLOW_OK) return fail(ws);
        if (in_plot) {
            const std::string svg = in_out_dir + "/phi.svg";
            ws = legflow_intrinsic_plot(run.ptr, svg.c_str(), ts);
            if (ws != LEGFLOW_OK) return fail(ws);
        }
        const int last = legflow_intrinsic_size(run.ptr) - 1;
        double lo, hi, ds;
        legflow_intrinsic_stats(run.ptr, last, &lo, &hi, &ds);
        std::printf("t=%g phi_min=%.10g phi_max=%.10g dsphi_max=%.3g violations=%d\n",
                    legflow_intrinsic_time(run.ptr, last), lo, hi, ds,
                    legflow_intrinsic_violations(run.ptr));
        if (legflow_intrinsic_singular(run.ptr)) {
            std::printf("singularity: curvature floor reached at t=%.6g (sample %d)\n",
                        legflow_intrinsic_singular_time(run.ptr),
                        legflow_intrinsic_singular_sample(run.ptr));
            return 2;
        }
        return legflow_intrinsic_violations(run.ptr) == 0 ? 0 : 1;
    }

    if (geodesic->parsed()) {
        if (!geo_fit_input.empty()) {
            CurveHandle curve;
            legflow_status s = legflow_curve_load(geo_fit_input.c_str(), &curve.ptr);
            if (s != LEGFLOW_OK) return fail(s);
            legflow_helix_fit fit;
            s = legflow_fit_helix(curve.ptr, &fit);
            if (s != LEGFLOW_OK) return fail(s);
            std::printf(
                "helix center=(%.12g,%.12g) radius=%.12g sign=%+d pitch=%.12g z0=%.12g "
                "rms=%.6g rms/L=%.6g\n",
                fit.center_x, fit.center_y, fit.radius, fit.curvature_sign, fit.pitch_rate,
                fit.z0, fit.rms, fit.rms_over_length);
            return 0;
        }
        if (geo_line) {
            const auto bp = parse_number_list(geo_basepoint);
            if (bp.size() != 3) return usage_error("--basepoint needs x,y,z");
            double res = 0.0, kmax = 0.0;
            const legflow_status s = legflow_horizontal_line(
                geo_angle, bp[0], bp[1], bp[2], geo_smax, geo_n,
                geo_out.empty() ? nullptr : geo_out.c_str(), &res, &kmax);
            if (s != LEGFLOW_OK) return fail(s);
            std::printf("horizontal line: residual=%.3g max|k|=%.3g\n", res, kmax);
            return 0;
        }
        if (geo_out.empty()) return usage_error("--out is required to write the helix");
        CurveHandle curve;
        legflow_status s = legflow_curve_helix(geo_n, geo_k, geo_z0, geo_turns, &curve.ptr);
        if (s != LEGFLOW_OK) return fail(s);
        s = legflow_curve_save(curve.ptr, geo_out.c_str());
        if (s != LEGFLOW_OK) return fail(s);
        std::printf("wrote helix (k=%g, %d turns, n=%d) to %s\n", geo_k, geo_turns, geo_n,
                    geo_out.c_str());
        return 0;
    }

    if (verify->parsed()) {
        const int n_files = static_cast<int>(verify_inputs.size());
        std::vector<std::vector<legflow_report>> all(n_files);
        std::vector<int> status(n_files, 0);

        // Independent files verify in parallel, capped by LEGFLOW_THREADS.
        const int cap = thread_cap();
        for (int start = 0; start < n_files; start += cap) {
            std::vector<std::thread> pool;
            const int stop = std::min(n_files, start + cap);
            for (int i = start; i < stop; ++i) {
                pool.emplace_back([&, i] {
                    CurveHandle curve;
                    if (legflow_curve_load(verify_inputs[i].c_str(), &curve.ptr) != LEGFLOW_OK) {
                        status[i] = 1;
                        return;
                    }
                    legflow_report reports[16];
                    int n_out = 0;
                    if (legflow_verify_curve(curve.ptr, reports, 16, &n_out) != LEGFLOW_OK) {
                        status[i] = 1;
                        return;
                    }
                    all[i].assign(reports, reports + n_out);
                });
            }
            for (auto& th : pool) th.join();
        }

        bool ok = true;
        std::vector<legflow_report> flat;
        for (int i = 0; i < n_files; ++i) {
            if (status[i] != 0) {
                std::printf("%s: failed to load or verify\n", verify_inputs[i].c_str());
                ok = false;
                continue;
            }
            for (const auto& r : all[i]) {
                std::printf("%s: %s %s (|value|=%.3e tol=%.3e)\n", verify_inputs[i].c_str(),
                            r.pass ? "[pass]" : "[FAIL]", r.name, std::abs(r.value),
                            r.tolerance);
                ok = ok && r.pass;
                flat.push_back(r);
            }
        }
        if (!verify_csv.empty()) {
            const legflow_status s =
                legflow_reports_write_csv(flat.data(), static_cast<int>(flat.size()),
                                          verify_csv.c_str(), verify_no_timestamp ? 0 : 1);
            if (s != LEGFLOW_OK) return fail(s);
        }
        return ok ? 0 : 1;
    }

    if (oracle->parsed()) {
        if (!orc_homog.empty()) {
            const auto v = parse_number_list(orc_homog);
            if (v.size() != 3) return usage_error("--homogeneous needs phi0,W,t");
            std::printf("%.17g\n", legflow_homogeneous_oracle(v[0], v[1], v[2]));
            return 0;
        }
        if (!orc_support_in.empty()) {
            double cos_c[256], sin_c[256];
            int n_modes = 0;
            legflow_status s =
                legflow_support_load(orc_support_in.c_str(), 256, cos_c, sin_c, &n_modes);
            if (s != LEGFLOW_OK) return fail(s);
            double cos_o[256], sin_o[256];
            s = legflow_support_evolve(n_modes, cos_c, sin_c, orc_t, cos_o, sin_o);
            if (s != LEGFLOW_OK) return fail(s);
            if (orc_support_out.empty())
                return usage_error("--out is required with --support");
            s = legflow_support_save(n_modes, cos_o, sin_o, orc_support_out.c_str());
            if (s != LEGFLOW_OK) return fail(s);
            std::printf("evolved %d modes to t=%g -> %s\n", n_modes + 1, orc_t,
                        orc_support_out.c_str());
            return 0;
        }
        if (!orc_variation.empty()) {
            const auto v = parse_number_list(orc_variation);
            if (v.size() != 2) return usage_error("--variation needs alpha,s");
            std::printf("%.17g\n", legflow_variation_vertical(v[0], v[1]));
            return 0;
        }
        if (!orc_varcheck.empty()) {
            const auto v = parse_number_list(orc_varcheck);
            if (v.size() < 2) return usage_error("--variation-check needs alpha,smax[,step]");
            const double step = v.size() > 2 ? v[2] : 1e-3;
            std::printf("%.17g\n", legflow_variation_ode_deviation(v[0], v[1], step));
            return 0;
        }
        return usage_error("oracle: nothing to do (see --help)");
    }

    return usage_error("no subcommand given");
}
