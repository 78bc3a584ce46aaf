// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#include "qhdw/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

namespace qhdw {

namespace detail {

namespace {

// FFTW plan creation is not thread-safe; execution on distinct buffers is.
// Plans are created once per (size, direction) with FFTW_ESTIMATE so reruns
// are bit-for-bit reproducible.
std::mutex plan_mutex;

fftw_plan get_plan(int n, bool inverse) {
    static std::map<std::pair<int, bool>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_pair(n, inverse);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<std::complex<double>> buf(static_cast<size_t>(n));
    auto* raw = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_plan p = fftw_plan_dft_1d(n, raw, raw, inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache.emplace(key, p);
    return p;
}

} // namespace

void fft(std::vector<std::complex<double>>& data, bool inverse) {
    int n = static_cast<int>(data.size());
    fftw_plan p = get_plan(n, inverse);
    auto* raw = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p, raw, raw);
    if (inverse) {
        double s = 1.0 / n;
        for (auto& v : data) v *= s;
    }
}

} // namespace detail

namespace {

// Signed wavenumber of bin j; the Nyquist bin is zeroed for odd derivative
// orders (its first derivative is not representable for real data).
double wavenumber(int j, int n, double length) {
    int m = (j <= n / 2) ? j : j - n;
    return 2.0 * std::numbers::pi * m / length;
}

ScalarField spectral_derivative_real(const ScalarField& f, int order) {
    int n = f.size();
    std::vector<std::complex<double>> buf(f.values.begin(), f.values.end());
    detail::fft(buf, false);
    for (int j = 0; j < n; ++j) {
        double k = wavenumber(j, n, f.grid.length);
        if (order == 1) {
            if (j == n / 2) k = 0.0;
            buf[static_cast<size_t>(j)] *= std::complex<double>(0.0, k);
        } else {
            buf[static_cast<size_t>(j)] *= -k * k;
        }
    }
    detail::fft(buf, true);
    ScalarField out(f.grid);
    for (int j = 0; j < n; ++j) out[j] = buf[static_cast<size_t>(j)].real();
    return out;
}

ScalarField fd4_derivative(const ScalarField& f, int order) {
    int n = f.size();
    double dx = f.grid.dx;
    ScalarField out(f.grid);
    auto at = [&](int j) { return f[((j % n) + n) % n]; };
    for (int j = 0; j < n; ++j) {
        if (order == 1)
            out[j] = (-at(j + 2) + 8.0 * at(j + 1) - 8.0 * at(j - 1) + at(j - 2)) / (12.0 * dx);
        else
            out[j] = (-at(j + 2) + 16.0 * at(j + 1) - 30.0 * at(j) + 16.0 * at(j - 1) - at(j - 2)) /
                     (12.0 * dx * dx);
    }
    return out;
}

} // namespace

ScalarField spatial_derivative(const ScalarField& f, int order, DerivMode mode) {
    if (order != 1 && order != 2)
        throw ValidationError("spatial_derivative: order must be 1 or 2");
    f.require_finite("spatial_derivative");
    return mode == DerivMode::spectral ? spectral_derivative_real(f, order) : fd4_derivative(f, order);
}

ComplexField spatial_derivative(const ComplexField& f) {
    f.require_finite("spatial_derivative");
    int n = f.size();
    std::vector<std::complex<double>> buf(f.values);
    detail::fft(buf, false);
    for (int j = 0; j < n; ++j) {
        double k = (j == n / 2) ? 0.0 : wavenumber(j, n, f.grid.length);
        buf[static_cast<size_t>(j)] *= std::complex<double>(0.0, k);
    }
    detail::fft(buf, true);
    ComplexField out(f.grid);
    out.values = std::move(buf);
    return out;
}

ScalarField second_time_derivative(const SpacetimeField& hist, int time_index) {
    if (hist.count() < 5)
        throw ValidationError("second_time_derivative: history needs at least 5 snapshots");
    if (time_index < 2 || time_index > hist.count() - 3)
        throw ValidationError("second_time_derivative: time index " + std::to_string(time_index) +
                              " too close to the history boundary (valid range 2.." +
                              std::to_string(hist.count() - 3) + ")");
    const double dt2 = hist.dt * hist.dt;
    ScalarField out(hist.grid);
    const auto& m2 = hist.at(time_index - 2);
    const auto& m1 = hist.at(time_index - 1);
    const auto& z0 = hist.at(time_index);
    const auto& p1 = hist.at(time_index + 1);
    const auto& p2 = hist.at(time_index + 2);
    for (int j = 0; j < out.size(); ++j)
        out[j] = (-p2[j] + 16.0 * p1[j] - 30.0 * z0[j] + 16.0 * m1[j] - m2[j]) / (12.0 * dt2);
    return out;
}

ScalarField dalembertian(const SpacetimeField& hist, double c, int time_index) {
    if (!(c > 0.0) || !std::isfinite(c)) throw ValidationError("dalembertian: need finite c > 0");
    ScalarField dtt = second_time_derivative(hist, time_index);
    ScalarField lap = spatial_derivative(hist.at(time_index), 2);
    ScalarField out(hist.grid);
    double inv_c2 = 1.0 / (c * c);
    for (int j = 0; j < out.size(); ++j) out[j] = inv_c2 * dtt[j] - lap[j];
    return out;
}

ScalarField convolve_periodic(const ScalarField& f, const std::vector<double>& weights) {
    f.require_finite("convolve_periodic");
    int n = f.size();
    if (static_cast<int>(weights.size()) != n)
        throw ValidationError("convolve_periodic: weight count does not match grid");
    std::vector<std::complex<double>> fa(f.values.begin(), f.values.end());
    std::vector<std::complex<double>> wa(weights.begin(), weights.end());
    detail::fft(fa, false);
    detail::fft(wa, false);
    for (int j = 0; j < n; ++j) fa[static_cast<size_t>(j)] *= wa[static_cast<size_t>(j)];
    detail::fft(fa, true);
    ScalarField out(f.grid);
    for (int j = 0; j < n; ++j) out[j] = fa[static_cast<size_t>(j)].real() * f.grid.dx;
    return out;
}

ScalarField convolve_periodic(const ScalarField& f, const Kernel& k) {
    return convolve_periodic(f, sample_kernel_on_grid(k, f.grid));
}

void dealias_filter(ScalarField& f) {
    const int n = f.size();
    std::vector<std::complex<double>> buf(f.values.begin(), f.values.end());
    detail::fft(buf, false);
    for (int j = 0; j < n; ++j) {
        int m = (j <= n / 2) ? j : n - j;
        double r = static_cast<double>(m) / (n / 2);
        buf[static_cast<size_t>(j)] *= std::exp(-36.0 * std::pow(r, 16));
    }
    detail::fft(buf, true);
    for (int j = 0; j < n; ++j) f[j] = buf[static_cast<size_t>(j)].real();
}

} // namespace qhdw
