/* legflow — Legendrian curve flows in the first Heisenberg group.
 *
 * C API over the solver core: opaque handles, status codes, and a
 * thread-local error message. All functions returning legflow_status set
 * the message retrievable via legflow_last_error() on failure.
 */

#ifndef LEGFLOW_H
#define LEGFLOW_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum legflow_status {
    LEGFLOW_OK = 0,
    LEGFLOW_ERR_INVALID_ARGUMENT = 1,
    LEGFLOW_ERR_PRECONDITION = 2,
    LEGFLOW_ERR_SINGULARITY = 3, /* flow speed blow-up; honest termination */
    LEGFLOW_ERR_NOT_CONVEX = 4,
    LEGFLOW_ERR_IO = 5,
    LEGFLOW_ERR_PARSE = 6,
    LEGFLOW_ERR_INTERNAL = 7
} legflow_status;

const char* legflow_version(void);
/* Message of the most recent failure on this thread ("" if none). */
const char* legflow_last_error(void);

typedef struct legflow_curve legflow_curve;           /* closed curve in M(0) */
typedef struct legflow_trajectory legflow_trajectory; /* flow output */
typedef struct legflow_intrinsic legflow_intrinsic;   /* intrinsic k^2 run */

/* ---- curve construction and i/o --------------------------------------- */

/* Curve files use the `legflow-curve v1` text format. Loading a file with
 * planar=true lifts it horizontally at z0 = 0. */
legflow_status legflow_curve_load(const char* path, legflow_curve** out);
legflow_status legflow_curve_save(const legflow_curve* c, const char* path);

legflow_status legflow_curve_from_points(int n, const double* x, const double* y,
                                         const double* z, double holonomy,
                                         legflow_curve** out);
/* Horizontal lift of the circle of given radius and center. */
legflow_status legflow_curve_circle_lift(int n, double radius, double cx, double cy, double z0,
                                         legflow_curve** out);
/* Horizontal lift of the convex curve with support coefficients
 * h(theta) = sum cos_c[m] cos(m theta) + sin_c[m] sin(m theta), m <= n_modes. */
legflow_status legflow_curve_from_support(int n, int n_modes, const double* cos_c,
                                          const double* sin_c, double z0, legflow_curve** out);
/* Turning-number-two positive-curvature loop (non-convex), lifted. */
legflow_status legflow_curve_limacon(int n, double amplitude, double z0, legflow_curve** out);
/* Seeded smooth random loop, lifted. */
legflow_status legflow_curve_random(int n, int max_mode, unsigned seed, double z0,
                                    legflow_curve** out);
/* Geodesic helix of curvature k (projection circle about the origin). */
legflow_status legflow_curve_helix(int n, double curvature, double z0, int turns,
                                   legflow_curve** out);
void legflow_curve_free(legflow_curve* c);

/* ---- curve queries ----------------------------------------------------- */

int legflow_curve_size(const legflow_curve* c);
double legflow_curve_length(const legflow_curve* c);
double legflow_curve_holonomy(const legflow_curve* c);
/* Max |z_u + x y_u - y x_u| over the samples. */
legflow_status legflow_curve_legendrian_residual(const legflow_curve* c, double* out);
legflow_status legflow_curve_points(const legflow_curve* c, double* x, double* y, double* z);
legflow_status legflow_curve_curvature(const legflow_curve* c, double* k);
legflow_status legflow_curve_dilate(const legflow_curve* c, double lambda, legflow_curve** out);

/* ---- flows -------------------------------------------------------------*/

typedef struct legflow_flow_config {
    double dt;         /* step cap; effective step also obeys the CFL bound */
    double t_end;
    int outputs;       /* snapshots at i * t_end / outputs */
    double k_floor;    /* singularity threshold on |k| */
    double cfl_safety;
    int shape_mode;    /* 1 = redistribute samples to uniform arc length */
    int use_fd4;       /* 1 = 4th-order differences instead of spectral */
} legflow_flow_config;

void legflow_flow_config_default(legflow_flow_config* cfg);

/* Expanding flow via projected inverse-curvature flow plus horizontal lift. */
legflow_status legflow_evolve_expanding(const legflow_curve* c, const legflow_flow_config* cfg,
                                        legflow_trajectory** out);
/* Dilation by exp(-t) of every state: the length-preserving flow. */
legflow_status legflow_trajectory_rescale(const legflow_trajectory* t, legflow_trajectory** out);
/* Direct stepping of the rescaled equation (cross-check path). */
legflow_status legflow_evolve_rescaled_direct(const legflow_curve* c,
                                              const legflow_flow_config* cfg,
                                              legflow_trajectory** out);

int legflow_trajectory_size(const legflow_trajectory* t);
double legflow_trajectory_time(const legflow_trajectory* t, int i);
legflow_status legflow_trajectory_state(const legflow_trajectory* t, int i, legflow_curve** out);
/* row = {length, kmin, kmax, leg_residual, minkowski, total_curvature, holonomy} */
legflow_status legflow_trajectory_diagnostics(const legflow_trajectory* t, int i, double row[7]);
/* Writes state_####.curve files plus diagnostics.csv into dir. */
legflow_status legflow_trajectory_write(const legflow_trajectory* t, const char* dir,
                                        int timestamp);
legflow_status legflow_trajectory_plot(const legflow_trajectory* t, const char* svg_path,
                                       int timestamp);
void legflow_trajectory_free(legflow_trajectory* t);

/* ---- intrinsic curvature evolution ------------------------------------- */

typedef struct legflow_intrinsic_config {
    double dt;
    double t_end;
    int outputs;
    double phi_floor;
    double cfl_safety;
} legflow_intrinsic_config;

void legflow_intrinsic_config_default(legflow_intrinsic_config* cfg);

/* phi0: n samples of k^2 > 0; m0: n metric factors (NULL = constant 2*pi).
 * A run that hits the curvature floor still succeeds: the result is
 * truncated and flagged singular. */
legflow_status legflow_intrinsic_run(int n, const double* phi0, const double* m0, double W,
                                     const legflow_intrinsic_config* cfg,
                                     legflow_intrinsic** out);
int legflow_intrinsic_size(const legflow_intrinsic* r);
double legflow_intrinsic_time(const legflow_intrinsic* r, int i);
legflow_status legflow_intrinsic_field(const legflow_intrinsic* r, int i, double* phi);
legflow_status legflow_intrinsic_stats(const legflow_intrinsic* r, int i, double* phi_min,
                                       double* phi_max, double* dsphi_max);
int legflow_intrinsic_singular(const legflow_intrinsic* r);
double legflow_intrinsic_singular_time(const legflow_intrinsic* r);
int legflow_intrinsic_singular_sample(const legflow_intrinsic* r);
/* Number of bound-monitor violations (0 for a healthy run). */
int legflow_intrinsic_violations(const legflow_intrinsic* r);
legflow_status legflow_intrinsic_write(const legflow_intrinsic* r, const char* dir,
                                       int timestamp);
legflow_status legflow_intrinsic_plot(const legflow_intrinsic* r, const char* svg_path,
                                      int timestamp);
void legflow_intrinsic_free(legflow_intrinsic* r);

/* Reads a `legflow-field v1` file. Pass cap = 0 to query the sample count
 * (n_out, W_out, t_out are still filled); otherwise phi/m0 receive n values. */
legflow_status legflow_field_load(const char* path, int cap, double* phi, double* m0,
                                  int* n_out, double* W_out, double* t_out);
legflow_status legflow_field_save(const char* path, int n, const double* phi, const double* m0,
                                  double W, double t);

/* ---- analytic oracles --------------------------------------------------*/

/* Spatially constant reduction: (phi0 + 2W) exp(-2t) - 2W. */
double legflow_homogeneous_oracle(double phi0, double W, double t);
/* Exact support evolution: mode m scales by exp((1 - m^2) t). */
legflow_status legflow_support_evolve(int n_modes, const double* cos_in, const double* sin_in,
                                      double t, double* cos_out, double* sin_out);
legflow_status legflow_support_load(const char* path, int cap, double* cos_c, double* sin_c,
                                    int* n_modes);
legflow_status legflow_support_save(int n_modes, const double* cos_c, const double* sin_c,
                                    const char* path);
/* Vertical component of the geodesic variation field, alpha = k^2 + 2W. */
double legflow_variation_vertical(double alpha, double s);
/* Sup deviation between the closed form and an RK4 integration of the
 * third-order variation equation over [0, s_max]. */
double legflow_variation_ode_deviation(double alpha, double s_max, double step);

/* ---- geodesic fitting and lines ----------------------------------------*/

typedef struct legflow_helix_fit {
    double center_x, center_y;
    double radius;
    int curvature_sign;
    double pitch_rate;
    double z0;
    double rms;             /* root-mean-square 3D deviation */
    double rms_over_length;
} legflow_helix_fit;

legflow_status legflow_fit_helix(const legflow_curve* c, legflow_helix_fit* out);

/* Evaluates the horizontal line through (x0, y0, z0) with direction angle;
 * reports the worst horizontality residual and |curvature| over [0, s_max].
 * When path is non-NULL the samples are written as a `legflow-line v1` file. */
legflow_status legflow_horizontal_line(double angle, double x0, double y0, double z0,
                                       double s_max, int n, const char* path,
                                       double* max_residual, double* max_curvature);

/* ---- verification -------------------------------------------------------*/

typedef struct legflow_report {
    char name[48];
    double value;
    double tolerance;
    int pass;
    double t;
} legflow_report;

/* Identity suite for a single curve (horizontality, Minkowski, total
 * curvature, holonomy-area). Writes up to cap reports; n_out gets the count. */
legflow_status legflow_verify_curve(const legflow_curve* c, legflow_report* reports, int cap,
                                    int* n_out);
/* Conservation suite over a trajectory; kind: 0 = expanding, 1 = rescaled. */
legflow_status legflow_verify_trajectory(const legflow_trajectory* t, int kind,
                                         const legflow_trajectory* raw_or_null,
                                         legflow_report* reports, int cap, int* n_out);
legflow_status legflow_reports_write_csv(const legflow_report* reports, int n, const char* path,
                                         int timestamp);

#ifdef __cplusplus
}
#endif

#endif /* LEGFLOW_H */
