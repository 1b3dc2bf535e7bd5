#pragma once

#include <complex>
#include <map>
#include <mutex>
#include <vector>

#include <fftw3.h>

#include "moyal/grid.hpp"

namespace moyal {

using cplx = std::complex<double>;

namespace detail {

// Process-wide FFTW plan cache. Plans are created once per (size, sign) with
// FFTW_ESTIMATE|FFTW_UNALIGNED and executed on caller buffers through the
// new-array interface, which keeps results deterministic and thread-safe.
class FftPlans {
public:
    static FftPlans& instance() {
        static FftPlans p;
        return p;
    }

    void execute(cplx* data, std::size_t n, int sign) {
        fftw_plan plan;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            const auto key = std::make_pair(n, sign);
            auto it = plans_.find(key);
            if (it == plans_.end()) {
                std::vector<cplx> scratch(n);
                plan = fftw_plan_dft_1d(static_cast<int>(n),
                                        reinterpret_cast<fftw_complex*>(scratch.data()),
                                        reinterpret_cast<fftw_complex*>(scratch.data()),
                                        sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
                plans_.emplace(key, plan);
            } else {
                plan = it->second;
            }
        }
        fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(data),
                         reinterpret_cast<fftw_complex*>(data));
    }

private:
    FftPlans() = default;
    ~FftPlans() {
        for (auto& [k, p] : plans_) fftw_destroy_plan(p);
    }
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

} // namespace detail

/// In-place unnormalized DFT: data[j] <- sum_k data[k] e^{sign * 2*pi*i*k*j/n}.
inline void fft_raw(std::vector<cplx>& data, int sign) {
    detail::FftPlans::instance().execute(data.data(), data.size(),
                                         sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
}

/// G_j = sum_k f_k e^{i*sign*a_k*b_j} with a_k = a0+k*da, b_j = b0+j*db.
/// Evaluated with one FFT; requires da*db = 2*pi/n (spectral-dual pairing).
inline std::vector<cplx> fourier_sum(const std::vector<cplx>& f, double a0, double da,
                                     double b0, double db, int sign) {
    const std::size_t n = f.size();
    const double target = kTwoPi / static_cast<double>(n);
    if (std::abs(da * db - target) > 1e-9 * target)
        throw InvalidParameter("fourier_sum: grids are not spectral duals");
    std::vector<cplx> g(n);
    const double s = sign < 0 ? -1.0 : 1.0;
    for (std::size_t k = 0; k < n; ++k)
        g[k] = f[k] * std::polar(1.0, s * static_cast<double>(k) * da * b0);
    fft_raw(g, sign);
    for (std::size_t j = 0; j < n; ++j)
        g[j] *= std::polar(1.0, s * a0 * (b0 + static_cast<double>(j) * db));
    return g;
}

/// Direct evaluation of the same sum at arbitrary targets b (the slow path for
/// grids that are not spectral duals).
inline std::vector<cplx> fourier_sum_direct(const std::vector<cplx>& f, double a0, double da,
                                            const std::vector<double>& b, int sign) {
    const double s = sign < 0 ? -1.0 : 1.0;
    std::vector<cplx> g(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k)
            acc += f[k] * std::polar(1.0, s * (a0 + static_cast<double>(k) * da) * b[j]);
        g[j] = acc;
    }
    return g;
}

/// Band-limited interpolation onto the half-step lattice: returns 2n samples
/// at x_min + u*dx/2, u = 0..2n-1. Exact at the original nodes; the Nyquist
/// bin is split evenly so conjugate symmetry is preserved.
inline std::vector<cplx> upsample2(const std::vector<cplx>& f) {
    const std::size_t n = f.size();
    std::vector<cplx> hat(f);
    fft_raw(hat, -1);
    std::vector<cplx> pad(2 * n, cplx(0.0));
    for (std::size_t k = 0; k < n / 2; ++k) pad[k] = hat[k];
    for (std::size_t k = n / 2 + 1; k < n; ++k) pad[n + k] = hat[k];
    pad[n / 2] = 0.5 * hat[n / 2];
    pad[2 * n - n / 2] = 0.5 * hat[n / 2];
    fft_raw(pad, +1);
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : pad) v *= scale;
    return pad;
}

/// Spectral derivative on a periodic grid (Nyquist mode dropped so the
/// operator is exactly anti-Hermitian).
inline std::vector<cplx> spectral_derivative(const std::vector<cplx>& f, const GridSpec1D& g) {
    const std::size_t n = f.size();
    std::vector<cplx> hat(f);
    fft_raw(hat, -1);
    const double dk = kTwoPi / g.length();
    for (std::size_t k = 0; k < n; ++k) {
        double kk = static_cast<double>(k);
        if (k > n / 2) kk -= static_cast<double>(n);
        if (k == n / 2) kk = 0.0; // Nyquist
        hat[k] *= cplx(0.0, kk * dk);
    }
    fft_raw(hat, +1);
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : hat) v *= scale;
    return hat;
}

} // namespace moyal
