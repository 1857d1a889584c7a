// C API implementation: opaque handles over the core types, exceptions
// mapped to status codes, thread-local error message.

#include "legflow/legflow.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <numbers>
#include <string>
#include <vector>

#include "diagnostics.hpp"
#include "errors.hpp"
#include "flow3d.hpp"
#include "geodesics.hpp"
#include "heis.hpp"
#include "intrinsic.hpp"
#include "io.hpp"
#include "planar.hpp"
#include "svg.hpp"
#include "synthetic.hpp"

struct legflow_curve {
    legflow::ClosedCurve value;
};

struct legflow_trajectory {
    legflow::FlowTrajectory value;
};

struct legflow_intrinsic {
    legflow::IntrinsicRun value;
    int violations = 0;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <typename F>
legflow_status guarded(F&& body) {
    try {
        body();
        return LEGFLOW_OK;
    } catch (const legflow::SingularityError& e) {
        set_error(e.what());
        return LEGFLOW_ERR_SINGULARITY;
    } catch (const legflow::ConvexityError& e) {
        set_error(e.what());
        return LEGFLOW_ERR_NOT_CONVEX;
    } catch (const legflow::ParseError& e) {
        set_error(e.what());
        return LEGFLOW_ERR_PARSE;
    } catch (const legflow::IoError& e) {
        set_error(e.what());
        return LEGFLOW_ERR_IO;
    } catch (const legflow::PreconditionError& e) {
        set_error(e.what());
        return LEGFLOW_ERR_PRECONDITION;
    } catch (const legflow::InvalidArgument& e) {
        set_error(e.what());
        return LEGFLOW_ERR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        set_error(e.what());
        return LEGFLOW_ERR_INTERNAL;
    }
}

legflow::SolverConfig to_solver_config(const legflow_flow_config* cfg) {
    legflow::SolverConfig out;
    if (!cfg) return out;
    out.dt = cfg->dt;
    out.t_end = cfg->t_end;
    out.outputs = cfg->outputs;
    out.k_floor = cfg->k_floor;
    out.cfl_safety = cfg->cfl_safety;
    out.shape_mode = cfg->shape_mode != 0;
    out.scheme = cfg->use_fd4 ? legflow::DerivScheme::CentralFd4
                              : legflow::DerivScheme::Spectral;
    return out;
}

legflow::IntrinsicConfig to_intrinsic_config(const legflow_intrinsic_config* cfg) {
    legflow::IntrinsicConfig out;
    if (!cfg) return out;
    out.dt = cfg->dt;
    out.t_end = cfg->t_end;
    out.outputs = cfg->outputs;
    out.phi_floor = cfg->phi_floor;
    out.cfl_safety = cfg->cfl_safety;
    return out;
}

void fill_reports(const std::vector<legflow::IdentityReport>& src, legflow_report* dst, int cap,
                  int* n_out) {
    const int n = std::min<int>(cap, static_cast<int>(src.size()));
    for (int i = 0; i < n; ++i) {
        std::strncpy(dst[i].name, src[i].name.c_str(), sizeof(dst[i].name) - 1);
        dst[i].name[sizeof(dst[i].name) - 1] = '\0';
        dst[i].value = src[i].value;
        dst[i].tolerance = src[i].tolerance;
        dst[i].pass = src[i].pass ? 1 : 0;
        dst[i].t = src[i].t;
    }
    if (n_out) *n_out = static_cast<int>(src.size());
}

}  // namespace

extern "C" {

const char* legflow_version(void) { return "legflow 1.0.0"; }

const char* legflow_last_error(void) { return g_last_error.c_str(); }

legflow_status legflow_curve_load(const char* path, legflow_curve** out) {
    return guarded([&] {
        legflow::LoadedCurve loaded = legflow::load_curve(path);
        auto* h = new legflow_curve;
        h->value = loaded.planar ? legflow::legendrian_lift(loaded.planar_curve, 0.0)
                                 : std::move(loaded.curve);
        *out = h;
    });
}

legflow_status legflow_curve_save(const legflow_curve* c, const char* path) {
    return guarded([&] { legflow::save_curve(c->value, path); });
}

legflow_status legflow_curve_from_points(int n, const double* x, const double* y,
                                         const double* z, double holonomy,
                                         legflow_curve** out) {
    return guarded([&] {
        *out = new legflow_curve{legflow::make_closed_curve(
            std::vector<double>(x, x + n), std::vector<double>(y, y + n),
            std::vector<double>(z, z + n), holonomy)};
    });
}

legflow_status legflow_curve_circle_lift(int n, double radius, double cx, double cy, double z0,
                                         legflow_curve** out) {
    return guarded([&] { *out = new legflow_curve{legflow::circle_lift(n, radius, cx, cy, z0)}; });
}

legflow_status legflow_curve_from_support(int n, int n_modes, const double* cos_c,
                                          const double* sin_c, double z0, legflow_curve** out) {
    return guarded([&] {
        legflow::SupportFunction h;
        h.cos_c.assign(cos_c, cos_c + n_modes + 1);
        h.sin_c.assign(sin_c, sin_c + n_modes + 1);
        *out = new legflow_curve{legflow::support_lift(h, n, z0)};
    });
}

legflow_status legflow_curve_limacon(int n, double amplitude, double z0, legflow_curve** out) {
    return guarded([&] {
        *out = new legflow_curve{
            legflow::legendrian_lift(legflow::limacon_curve(n, amplitude), z0)};
    });
}

legflow_status legflow_curve_random(int n, int max_mode, unsigned seed, double z0,
                                    legflow_curve** out) {
    return guarded([&] {
        *out = new legflow_curve{
            legflow::legendrian_lift(legflow::random_loop(n, max_mode, seed), z0)};
    });
}

legflow_status legflow_curve_helix(int n, double curvature, double z0, int turns,
                                   legflow_curve** out) {
    return guarded(
        [&] { *out = new legflow_curve{legflow::make_helix(curvature, z0, turns, n)}; });
}

void legflow_curve_free(legflow_curve* c) { delete c; }

int legflow_curve_size(const legflow_curve* c) { return c ? c->value.size() : 0; }

double legflow_curve_length(const legflow_curve* c) { return legflow::curve_length(c->value); }

double legflow_curve_holonomy(const legflow_curve* c) { return c->value.holonomy; }

legflow_status legflow_curve_legendrian_residual(const legflow_curve* c, double* out) {
    return guarded([&] { *out = legflow::horizontality_residual(c->value).max_abs; });
}

legflow_status legflow_curve_points(const legflow_curve* c, double* x, double* y, double* z) {
    return guarded([&] {
        for (int j = 0; j < c->value.size(); ++j) {
            if (x) x[j] = c->value.x[j];
            if (y) y[j] = c->value.y[j];
            if (z) z[j] = c->value.z[j];
        }
    });
}

legflow_status legflow_curve_curvature(const legflow_curve* c, double* k) {
    return guarded([&] {
        const auto kv = legflow::curvature_of(c->value);
        std::memcpy(k, kv.data(), kv.size() * sizeof(double));
    });
}

legflow_status legflow_curve_dilate(const legflow_curve* c, double lambda, legflow_curve** out) {
    return guarded([&] { *out = new legflow_curve{legflow::dilate(c->value, lambda)}; });
}

void legflow_flow_config_default(legflow_flow_config* cfg) {
    const legflow::SolverConfig d;
    cfg->dt = d.dt;
    cfg->t_end = d.t_end;
    cfg->outputs = d.outputs;
    cfg->k_floor = d.k_floor;
    cfg->cfl_safety = d.cfl_safety;
    cfg->shape_mode = 0;
    cfg->use_fd4 = 0;
}

legflow_status legflow_evolve_expanding(const legflow_curve* c, const legflow_flow_config* cfg,
                                        legflow_trajectory** out) {
    return guarded([&] {
        *out = new legflow_trajectory{
            legflow::evolve_expanding(c->value, to_solver_config(cfg))};
    });
}

legflow_status legflow_trajectory_rescale(const legflow_trajectory* t,
                                          legflow_trajectory** out) {
    return guarded(
        [&] { *out = new legflow_trajectory{legflow::rescale_trajectory(t->value)}; });
}

legflow_status legflow_evolve_rescaled_direct(const legflow_curve* c,
                                              const legflow_flow_config* cfg,
                                              legflow_trajectory** out) {
    return guarded([&] {
        *out = new legflow_trajectory{
            legflow::evolve_rescaled_direct(c->value, to_solver_config(cfg))};
    });
}

int legflow_trajectory_size(const legflow_trajectory* t) {
    return static_cast<int>(t->value.states.size());
}

double legflow_trajectory_time(const legflow_trajectory* t, int i) { return t->value.times[i]; }

legflow_status legflow_trajectory_state(const legflow_trajectory* t, int i,
                                        legflow_curve** out) {
    return guarded([&] {
        if (i < 0 || i >= static_cast<int>(t->value.states.size()))
            throw legflow::InvalidArgument("state index out of range");
        *out = new legflow_curve{t->value.states[i]};
    });
}

legflow_status legflow_trajectory_diagnostics(const legflow_trajectory* t, int i,
                                              double row[7]) {
    return guarded([&] {
        if (i < 0 || i >= static_cast<int>(t->value.diagnostics.size()))
            throw legflow::InvalidArgument("diagnostics index out of range");
        const auto& d = t->value.diagnostics[i];
        row[0] = d.length;
        row[1] = d.k_min;
        row[2] = d.k_max;
        row[3] = d.leg_residual;
        row[4] = d.minkowski;
        row[5] = d.total_curvature;
        row[6] = d.holonomy;
    });
}

legflow_status legflow_trajectory_write(const legflow_trajectory* t, const char* dir,
                                        int timestamp) {
    return guarded([&] { legflow::write_trajectory(t->value, dir, timestamp != 0); });
}

legflow_status legflow_trajectory_plot(const legflow_trajectory* t, const char* svg_path,
                                       int timestamp) {
    return guarded([&] { legflow::write_projection_svg(t->value, svg_path, timestamp != 0); });
}

void legflow_trajectory_free(legflow_trajectory* t) { delete t; }

void legflow_intrinsic_config_default(legflow_intrinsic_config* cfg) {
    const legflow::IntrinsicConfig d;
    cfg->dt = d.dt;
    cfg->t_end = d.t_end;
    cfg->outputs = d.outputs;
    cfg->phi_floor = d.phi_floor;
    cfg->cfl_safety = d.cfl_safety;
}

legflow_status legflow_intrinsic_run(int n, const double* phi0, const double* m0, double W,
                                     const legflow_intrinsic_config* cfg,
                                     legflow_intrinsic** out) {
    return guarded([&] {
        std::vector<double> phi(phi0, phi0 + n);
        std::vector<double> metric =
            m0 ? std::vector<double>(m0, m0 + n)
               : std::vector<double>(n, 2.0 * std::numbers::pi);
        auto field = legflow::make_curvature_field(std::move(phi), std::move(metric));
        auto* h = new legflow_intrinsic;
        h->value = legflow::evolve_k2(field, {W}, to_intrinsic_config(cfg));
        h->violations =
            static_cast<int>(legflow::bound_monitor_eval(h->value).violations.size());
        *out = h;
    });
}

int legflow_intrinsic_size(const legflow_intrinsic* r) {
    return static_cast<int>(r->value.snapshots.size());
}

double legflow_intrinsic_time(const legflow_intrinsic* r, int i) {
    return r->value.snapshots[i].t;
}

legflow_status legflow_intrinsic_field(const legflow_intrinsic* r, int i, double* phi) {
    return guarded([&] {
        if (i < 0 || i >= static_cast<int>(r->value.snapshots.size()))
            throw legflow::InvalidArgument("snapshot index out of range");
        const auto& f = r->value.snapshots[i].field.phi;
        std::memcpy(phi, f.data(), f.size() * sizeof(double));
    });
}

legflow_status legflow_intrinsic_stats(const legflow_intrinsic* r, int i, double* phi_min,
                                       double* phi_max, double* dsphi_max) {
    return guarded([&] {
        if (i < 0 || i >= static_cast<int>(r->value.snapshots.size()))
            throw legflow::InvalidArgument("snapshot index out of range");
        const auto& s = r->value.snapshots[i];
        if (phi_min) *phi_min = s.phi_min;
        if (phi_max) *phi_max = s.phi_max;
        if (dsphi_max) *dsphi_max = s.dsphi_max;
    });
}

int legflow_intrinsic_singular(const legflow_intrinsic* r) {
    return r->value.singularity.singular ? 1 : 0;
}

double legflow_intrinsic_singular_time(const legflow_intrinsic* r) {
    return r->value.singularity.time;
}

int legflow_intrinsic_singular_sample(const legflow_intrinsic* r) {
    return r->value.singularity.sample;
}

int legflow_intrinsic_violations(const legflow_intrinsic* r) { return r->violations; }

legflow_status legflow_intrinsic_write(const legflow_intrinsic* r, const char* dir,
                                       int timestamp) {
    return guarded([&] { legflow::write_intrinsic_run(r->value, dir, timestamp != 0); });
}

legflow_status legflow_intrinsic_plot(const legflow_intrinsic* r, const char* svg_path,
                                      int timestamp) {
    return guarded([&] { legflow::write_intrinsic_svg(r->value, svg_path, timestamp != 0); });
}

void legflow_intrinsic_free(legflow_intrinsic* r) { delete r; }

legflow_status legflow_field_load(const char* path, int cap, double* phi, double* m0,
                                  int* n_out, double* W_out, double* t_out) {
    return guarded([&] {
        const legflow::LoadedField loaded = legflow::load_field(path);
        const int n = loaded.field.size();
        if (n_out) *n_out = n;
        if (W_out) *W_out = loaded.W;
        if (t_out) *t_out = loaded.field.t;
        if (cap == 0) return;
        if (cap < n)
            throw legflow::InvalidArgument("field has " + std::to_string(n) +
                                           " samples, buffer holds " + std::to_string(cap));
        if (phi) std::memcpy(phi, loaded.field.phi.data(), n * sizeof(double));
        if (m0) std::memcpy(m0, loaded.field.m0.data(), n * sizeof(double));
    });
}

legflow_status legflow_field_save(const char* path, int n, const double* phi, const double* m0,
                                  double W, double t) {
    return guarded([&] {
        legflow::save_field(legflow::make_curvature_field(std::vector<double>(phi, phi + n),
                                                          std::vector<double>(m0, m0 + n), t),
                            W, path);
    });
}

double legflow_homogeneous_oracle(double phi0, double W, double t) {
    return legflow::homogeneous_oracle(phi0, W, t);
}

legflow_status legflow_support_evolve(int n_modes, const double* cos_in, const double* sin_in,
                                      double t, double* cos_out, double* sin_out) {
    return guarded([&] {
        legflow::SupportFunction h;
        h.cos_c.assign(cos_in, cos_in + n_modes + 1);
        h.sin_c.assign(sin_in, sin_in + n_modes + 1);
        const legflow::SupportFunction evolved = legflow::evolve_support_exact(h, t);
        for (int m = 0; m <= n_modes; ++m) {
            cos_out[m] = evolved.cos_c[m];
            sin_out[m] = evolved.sin_c[m];
        }
    });
}

legflow_status legflow_support_load(const char* path, int cap, double* cos_c, double* sin_c,
                                    int* n_modes) {
    return guarded([&] {
        const legflow::SupportFunction h = legflow::load_support(path);
        if (n_modes) *n_modes = h.max_mode();
        if (h.max_mode() + 1 > cap)
            throw legflow::InvalidArgument("support file has " +
                                           std::to_string(h.max_mode() + 1) +
                                           " modes, buffer holds " + std::to_string(cap));
        for (int m = 0; m <= h.max_mode(); ++m) {
            cos_c[m] = h.cos_c[m];
            sin_c[m] = h.sin_c[m];
        }
    });
}

legflow_status legflow_support_save(int n_modes, const double* cos_c, const double* sin_c,
                                    const char* path) {
    return guarded([&] {
        legflow::SupportFunction h;
        h.cos_c.assign(cos_c, cos_c + n_modes + 1);
        h.sin_c.assign(sin_c, sin_c + n_modes + 1);
        legflow::save_support(h, path);
    });
}

double legflow_variation_vertical(double alpha, double s) {
    return legflow::variation_vertical(alpha, s);
}

double legflow_variation_ode_deviation(double alpha, double s_max, double step) {
    return legflow::variation_ode_deviation(alpha, s_max, step);
}

legflow_status legflow_fit_helix(const legflow_curve* c, legflow_helix_fit* out) {
    return guarded([&] {
        const legflow::HelixFit fit = legflow::fit_helix(c->value);
        out->center_x = fit.params.center_x;
        out->center_y = fit.params.center_y;
        out->radius = fit.params.radius;
        out->curvature_sign = fit.params.curvature_sign;
        out->pitch_rate = fit.params.pitch_rate;
        out->z0 = fit.params.z0;
        out->rms = fit.rms;
        out->rms_over_length = fit.rms_over_length;
    });
}

legflow_status legflow_horizontal_line(double angle, double x0, double y0, double z0,
                                       double s_max, int n, const char* path,
                                       double* max_residual, double* max_curvature) {
    return guarded([&] {
        const legflow::OpenCurve line =
            legflow::make_horizontal_line(angle, {x0, y0, z0}, s_max, n);
        if (max_residual) *max_residual = legflow::open_horizontality_max(line);
        if (max_curvature) {
            const auto k = legflow::open_curvature(line);
            double worst = 0.0;
            for (double v : k) worst = std::max(worst, std::abs(v));
            *max_curvature = worst;
        }
        if (path) legflow::write_line_samples(line, path);
    });
}

legflow_status legflow_verify_curve(const legflow_curve* c, legflow_report* reports, int cap,
                                    int* n_out) {
    return guarded([&] { fill_reports(legflow::identity_suite(c->value), reports, cap, n_out); });
}

legflow_status legflow_verify_trajectory(const legflow_trajectory* t, int kind,
                                         const legflow_trajectory* raw_or_null,
                                         legflow_report* reports, int cap, int* n_out) {
    return guarded([&] {
        const auto suite = legflow::conservation_suite(
            t->value, kind == 0 ? legflow::FlowKind::Expanding : legflow::FlowKind::Rescaled,
            raw_or_null ? &raw_or_null->value : nullptr);
        fill_reports(suite, reports, cap, n_out);
    });
}

legflow_status legflow_reports_write_csv(const legflow_report* reports, int n, const char* path,
                                         int timestamp) {
    return guarded([&] {
        std::vector<legflow::IdentityReport> rs(n);
        for (int i = 0; i < n; ++i) {
            rs[i].name = reports[i].name;
            rs[i].value = reports[i].value;
            rs[i].tolerance = reports[i].tolerance;
            rs[i].pass = reports[i].pass != 0;
            rs[i].t = reports[i].t;
        }
        legflow::write_reports_csv(rs, path, timestamp != 0);
    });
}

}  // extern "C"
