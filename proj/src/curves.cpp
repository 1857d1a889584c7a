#include "curves.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace legflow {

namespace {

void check_grid(std::size_t n) {
    if (n < 16 || n % 2 != 0)
        throw InvalidArgument("curve needs an even sample count >= 16, got " + std::to_string(n));
}

}  // namespace

namespace detail {

std::vector<double> speed_xy(const std::vector<double>& x, const std::vector<double>& y,
                             DerivScheme scheme) {
    auto xu = periodic_derivative(x, 1, scheme);
    auto yu = periodic_derivative(y, 1, scheme);
    std::vector<double> s(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) s[j] = std::hypot(xu[j], yu[j]);
    return s;
}

std::vector<double> curvature_xy(const std::vector<double>& x, const std::vector<double>& y,
                                 DerivScheme scheme) {
    const auto xu = periodic_derivative(x, 1, scheme);
    const auto yu = periodic_derivative(y, 1, scheme);
    const auto xuu = periodic_derivative(x, 2, scheme);
    const auto yuu = periodic_derivative(y, 2, scheme);

    double max_speed2 = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j)
        max_speed2 = std::max(max_speed2, xu[j] * xu[j] + yu[j] * yu[j]);
    const double floor2 = 1e-20 * max_speed2;

    std::vector<double> k(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double s2 = xu[j] * xu[j] + yu[j] * yu[j];
        if (s2 <= floor2)
            throw PreconditionError("degenerate projection at sample " + std::to_string(j));
        k[j] = (xu[j] * yuu[j] - yu[j] * xuu[j]) / (s2 * std::sqrt(s2));
    }
    return k;
}

}  // namespace detail

ClosedCurve make_closed_curve(std::vector<double> x, std::vector<double> y, std::vector<double> z,
                              double holonomy, DerivScheme scheme) {
    check_grid(x.size());
    if (y.size() != x.size() || z.size() != x.size())
        throw InvalidArgument("coordinate arrays differ in length");

    ClosedCurve c;
    c.x = std::move(x);
    c.y = std::move(y);
    c.z = std::move(z);
    c.holonomy = holonomy;
    c.scheme = scheme;

    const auto xu = periodic_derivative(c.x, 1, scheme);
    const auto yu = periodic_derivative(c.y, 1, scheme);
    const auto zu = z_derivative(c);
    c.metric_weights.resize(c.x.size());
    double max_w = 0.0;
    for (int j = 0; j < c.size(); ++j) {
        const double aT = zu[j] + c.x[j] * yu[j] - c.y[j] * xu[j];
        c.metric_weights[j] = std::sqrt(xu[j] * xu[j] + yu[j] * yu[j] + aT * aT);
        max_w = std::max(max_w, c.metric_weights[j]);
    }
    for (int j = 0; j < c.size(); ++j)
        if (c.metric_weights[j] <= 1e-10 * max_w)
            throw PreconditionError("curve is not an immersion at sample " + std::to_string(j));
    return c;
}

PlanarCurve make_planar_curve(std::vector<double> x, std::vector<double> y, DerivScheme scheme) {
    check_grid(x.size());
    if (y.size() != x.size()) throw InvalidArgument("coordinate arrays differ in length");

    PlanarCurve c;
    c.x = std::move(x);
    c.y = std::move(y);
    c.scheme = scheme;

    const auto s = detail::speed_xy(c.x, c.y, scheme);
    double max_w = 0.0;
    for (double v : s) max_w = std::max(max_w, v);
    for (std::size_t j = 0; j < s.size(); ++j)
        if (s[j] <= 1e-10 * max_w)
            throw PreconditionError("curve is not an immersion at sample " + std::to_string(j));

    c.orientation = signed_area(c.x, c.y, scheme) >= 0.0 ? +1 : -1;
    return c;
}

std::vector<double> z_derivative(const ClosedCurve& c) {
    const int n = c.size();
    std::vector<double> periodic(n);
    for (int j = 0; j < n; ++j) periodic[j] = c.z[j] - c.holonomy * c.u(j);
    auto d = periodic_derivative(periodic, 1, c.scheme);
    for (double& v : d) v += c.holonomy;
    return d;
}

double signed_area(const std::vector<double>& x, const std::vector<double>& y,
                   DerivScheme scheme) {
    const auto xu = periodic_derivative(x, 1, scheme);
    const auto yu = periodic_derivative(y, 1, scheme);
    std::vector<double> integrand(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        integrand[j] = x[j] * yu[j] - y[j] * xu[j];
    return 0.5 * periodic_integral(integrand);
}

double signed_area(const PlanarCurve& c) { return signed_area(c.x, c.y, c.scheme); }
double signed_area(const ClosedCurve& c) { return signed_area(c.x, c.y, c.scheme); }

double wrap_mismatch(const ClosedCurve& c) {
    const int n = c.size();
    // 4th-order one-step extrapolation of z to u = 1 (exact for quartics).
    const double predicted = 5.0 * c.z[n - 1] - 10.0 * c.z[n - 2] + 10.0 * c.z[n - 3] -
                             5.0 * c.z[n - 4] + c.z[n - 5];
    return std::abs(predicted - (c.z[0] + c.holonomy));
}

}  // namespace legflow
