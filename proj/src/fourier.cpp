#include "fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "errors.hpp"

namespace legflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW plan creation is not thread-safe; execution on private buffers is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

struct Workspace {
    int n = 0;
    double* real = nullptr;
    fftw_complex* spec = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    explicit Workspace(int n_) : n(n_) {
        real = fftw_alloc_real(n);
        spec = fftw_alloc_complex(n / 2 + 1);
        std::lock_guard<std::mutex> lock(plan_mutex());
        fwd = fftw_plan_dft_r2c_1d(n, real, spec, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(n, spec, real, FFTW_ESTIMATE);
    }
    ~Workspace() {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(real);
        fftw_free(spec);
    }
    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;
};

Workspace& workspace_for(int n) {
    thread_local std::map<int, std::unique_ptr<Workspace>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<Workspace>(n);
    return *slot;
}

void check_size(const std::vector<double>& f) {
    if (f.size() < 4 || f.size() % 2 != 0)
        throw InvalidArgument("periodic grid must have an even sample count >= 4, got " +
                              std::to_string(f.size()));
}

std::vector<double> fd4_derivative(const std::vector<double>& f, int order) {
    const int n = static_cast<int>(f.size());
    const double h = 1.0 / n;
    std::vector<double> out(n);
    auto at = [&](int j) { return f[((j % n) + n) % n]; };
    for (int j = 0; j < n; ++j) {
        if (order == 1) {
            out[j] = (8.0 * (at(j + 1) - at(j - 1)) - (at(j + 2) - at(j - 2))) / (12.0 * h);
        } else {
            out[j] = (-(at(j + 2) + at(j - 2)) + 16.0 * (at(j + 1) + at(j - 1)) - 30.0 * f[j]) /
                     (12.0 * h * h);
        }
    }
    return out;
}

}  // namespace

std::vector<double> periodic_derivative(const std::vector<double>& f, int order,
                                        DerivScheme scheme) {
    check_size(f);
    if (order != 1 && order != 2)
        throw InvalidArgument("periodic_derivative supports orders 1 and 2");
    if (scheme == DerivScheme::CentralFd4) return fd4_derivative(f, order);

    const int n = static_cast<int>(f.size());
    Workspace& ws = workspace_for(n);
    std::memcpy(ws.real, f.data(), n * sizeof(double));
    fftw_execute(ws.fwd);
    const double scale = 1.0 / n;
    for (int m = 0; m <= n / 2; ++m) {
        const double w = kTwoPi * m;
        double re = ws.spec[m][0] * scale;
        double im = ws.spec[m][1] * scale;
        if (order == 1) {
            // d/du: multiply by i*w; the Nyquist mode is dropped (its
            // derivative is not representable on the grid).
            if (m == n / 2) {
                ws.spec[m][0] = 0.0;
                ws.spec[m][1] = 0.0;
            } else {
                ws.spec[m][0] = -w * im;
                ws.spec[m][1] = w * re;
            }
        } else {
            ws.spec[m][0] = -w * w * re;
            ws.spec[m][1] = -w * w * im;
        }
    }
    fftw_execute(ws.bwd);
    return std::vector<double>(ws.real, ws.real + n);
}

double periodic_integral(const std::vector<double>& f) {
    check_size(f);
    double sum = 0.0;
    for (double v : f) sum += v;
    return sum / static_cast<double>(f.size());
}

Antiderivative periodic_antiderivative(const std::vector<double>& f) {
    check_size(f);
    const int n = static_cast<int>(f.size());
    Workspace& ws = workspace_for(n);
    std::memcpy(ws.real, f.data(), n * sizeof(double));
    fftw_execute(ws.fwd);
    const double scale = 1.0 / n;

    Antiderivative result;
    result.mean = ws.spec[0][0] * scale;

    // Divide modes 1..n/2-1 by i*w; zero the mean and the Nyquist mode.
    ws.spec[0][0] = ws.spec[0][1] = 0.0;
    for (int m = 1; m < n / 2; ++m) {
        const double w = kTwoPi * m;
        const double re = ws.spec[m][0] * scale;
        const double im = ws.spec[m][1] * scale;
        ws.spec[m][0] = im / w;
        ws.spec[m][1] = -re / w;
    }
    ws.spec[n / 2][0] = ws.spec[n / 2][1] = 0.0;
    fftw_execute(ws.bwd);

    result.values.resize(n);
    const double at_zero = ws.real[0];
    for (int j = 0; j < n; ++j) {
        const double u = static_cast<double>(j) / n;
        result.values[j] = result.mean * u + (ws.real[j] - at_zero);
    }
    return result;
}

TrigInterp::TrigInterp(const std::vector<double>& samples) {
    check_size(samples);
    n_ = static_cast<int>(samples.size());
    Workspace& ws = workspace_for(n_);
    std::memcpy(ws.real, samples.data(), n_ * sizeof(double));
    fftw_execute(ws.fwd);
    const double scale = 1.0 / n_;
    cos_c_.assign(n_ / 2 + 1, 0.0);
    sin_c_.assign(n_ / 2 + 1, 0.0);
    cos_c_[0] = ws.spec[0][0] * scale;
    for (int m = 1; m < n_ / 2; ++m) {
        cos_c_[m] = 2.0 * ws.spec[m][0] * scale;
        sin_c_[m] = -2.0 * ws.spec[m][1] * scale;
    }
    cos_c_[n_ / 2] = ws.spec[n_ / 2][0] * scale;
}

double TrigInterp::operator()(double u) const {
    double acc = cos_c_[0];
    for (int m = 1; m <= n_ / 2; ++m) {
        const double a = kTwoPi * m * u;
        acc += cos_c_[m] * std::cos(a) + sin_c_[m] * std::sin(a);
    }
    return acc;
}

double TrigInterp::derivative(double u) const {
    double acc = 0.0;
    // Nyquist excluded, as in periodic_derivative.
    for (int m = 1; m < n_ / 2; ++m) {
        const double w = kTwoPi * m;
        const double a = w * u;
        acc += w * (-cos_c_[m] * std::sin(a) + sin_c_[m] * std::cos(a));
    }
    return acc;
}

}  // namespace legflow
