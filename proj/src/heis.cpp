#include "heis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace legflow {

FrameVector frame_decompose(const std::array<double, 3>& point,
                            const std::array<double, 3>& velocity) {
    FrameVector v;
    v.a1 = velocity[0];
    v.a2 = velocity[1];
    v.aT = velocity[2] + point[0] * velocity[1] - point[1] * velocity[0];
    return v;
}

std::array<double, 3> frame_compose(const std::array<double, 3>& point, const FrameVector& v) {
    return {v.a1, v.a2, v.aT - point[0] * v.a2 + point[1] * v.a1};
}

FrameVector apply_j(const FrameVector& v) { return {-v.a2, v.a1, 0.0}; }

double frame_inner(const FrameVector& a, const FrameVector& b) {
    return a.a1 * b.a1 + a.a2 * b.a2 + a.aT * b.aT;
}

double frame_norm(const FrameVector& v) { return std::sqrt(frame_inner(v, v)); }

HorizontalityReport horizontality_residual(const ClosedCurve& c, double rel_tol) {
    const double length = curve_length(c);
    const double z_span = *std::max_element(c.z.begin(), c.z.end()) -
                          *std::min_element(c.z.begin(), c.z.end());
    const double scale = std::max({length, std::abs(c.holonomy), z_span});
    if (wrap_mismatch(c) > 1e-3 * scale + 1e-12)
        throw PreconditionError(
            "z samples are inconsistent with the declared vertical holonomy " +
            std::to_string(c.holonomy));

    const auto xu = periodic_derivative(c.x, 1, c.scheme);
    const auto yu = periodic_derivative(c.y, 1, c.scheme);
    const auto zu = z_derivative(c);

    HorizontalityReport report;
    report.residuals.resize(c.size());
    for (int j = 0; j < c.size(); ++j) {
        report.residuals[j] = zu[j] + c.x[j] * yu[j] - c.y[j] * xu[j];
        report.max_abs = std::max(report.max_abs, std::abs(report.residuals[j]));
    }
    report.tolerance = rel_tol * length;
    report.legendrian = report.max_abs <= report.tolerance;
    return report;
}

std::vector<double> curvature_of(const ClosedCurve& c) {
    return detail::curvature_xy(c.x, c.y, c.scheme);
}

MetricAndLength metric_and_length(const ClosedCurve& c) {
    const auto xu = periodic_derivative(c.x, 1, c.scheme);
    const auto yu = periodic_derivative(c.y, 1, c.scheme);
    const auto zu = z_derivative(c);
    MetricAndLength out;
    out.weights.resize(c.size());
    for (int j = 0; j < c.size(); ++j) {
        const double aT = zu[j] + c.x[j] * yu[j] - c.y[j] * xu[j];
        out.weights[j] = std::sqrt(xu[j] * xu[j] + yu[j] * yu[j] + aT * aT);
    }
    out.length = periodic_integral(out.weights);
    return out;
}

double curve_length(const ClosedCurve& c) { return periodic_integral(c.metric_weights); }

double curve_length(const PlanarCurve& c) {
    return periodic_integral(detail::speed_xy(c.x, c.y, c.scheme));
}

ClosedCurve legendrian_lift(const PlanarCurve& planar, double z0) {
    const auto xu = periodic_derivative(planar.x, 1, planar.scheme);
    const auto yu = periodic_derivative(planar.y, 1, planar.scheme);
    std::vector<double> integrand(planar.size());
    for (int j = 0; j < planar.size(); ++j)
        integrand[j] = planar.y[j] * xu[j] - planar.x[j] * yu[j];

    const Antiderivative anti = periodic_antiderivative(integrand);
    std::vector<double> z(planar.size());
    for (int j = 0; j < planar.size(); ++j) z[j] = z0 + anti.values[j];
    return make_closed_curve(planar.x, planar.y, std::move(z), anti.mean, planar.scheme);
}

ClosedCurve dilate(const ClosedCurve& c, double lambda) {
    if (!(lambda > 0.0)) throw InvalidArgument("dilation factor must be positive");
    ClosedCurve out = c;
    for (double& v : out.x) v *= lambda;
    for (double& v : out.y) v *= lambda;
    for (double& v : out.z) v *= lambda * lambda;
    for (double& v : out.metric_weights) v *= lambda;
    out.holonomy *= lambda * lambda;
    return out;
}

PlanarCurve projection(const ClosedCurve& c) { return make_planar_curve(c.x, c.y, c.scheme); }

}  // namespace legflow
