#pragma once

// Periodic differentiation and quadrature on the uniform grid u_j = j/n,
// u in [0,1). Spectral (FFT) derivatives are the default; 4th-order central
// differences are the fallback for rough data.

#include <vector>

namespace legflow {

enum class DerivScheme { Spectral, CentralFd4 };

// d^order f / du^order at the grid points, order in {1, 2}.
std::vector<double> periodic_derivative(const std::vector<double>& f, int order,
                                        DerivScheme scheme = DerivScheme::Spectral);

// Integral of f over one period of u (periodic trapezoid rule = mean value).
double periodic_integral(const std::vector<double>& f);

// Antiderivative F(u) = int_0^u f dw at the grid points, F(0) = 0, split as
// mean*u plus a periodic part. `mean` is the per-period net drift.
struct Antiderivative {
    std::vector<double> values;
    double mean = 0.0;
};
Antiderivative periodic_antiderivative(const std::vector<double>& f);

// Trigonometric interpolant of periodic samples; evaluate anywhere.
class TrigInterp {
public:
    explicit TrigInterp(const std::vector<double>& samples);
    double operator()(double u) const;
    double derivative(double u) const;
    int size() const { return n_; }

private:
    int n_;
    std::vector<double> cos_c_, sin_c_;  // modes 0 .. n/2
};

}  // namespace legflow
