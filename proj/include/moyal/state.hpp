#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "moyal/fft.hpp"
#include "moyal/grid.hpp"

namespace moyal {

// Factories keep the boundary amplitude below this, so periodic wrap-around
// stays under every test tolerance.
inline constexpr double kBoundaryTol = 1e-10;

/// Complex wavefunction sampled on a uniform grid (hbar = 1 units).
struct Wavefunction {
    GridSpec1D grid;
    std::vector<cplx> values;
    double time = 0.0;

    Wavefunction() = default;
    Wavefunction(GridSpec1D g, std::vector<cplx> v, double t = 0.0)
        : grid(g), values(std::move(v)), time(t) {
        if (values.size() != grid.n_points)
            throw InvalidParameter("wavefunction sample count does not match grid");
    }
};

inline double l2_norm_sq(const Wavefunction& psi) {
    double s = 0.0;
    for (const auto& v : psi.values) s += std::norm(v);
    return s * psi.grid.dx();
}

inline double l2_norm(const Wavefunction& psi) { return std::sqrt(l2_norm_sq(psi)); }

inline cplx overlap(const Wavefunction& a, const Wavefunction& b) {
    if (!(a.grid == b.grid)) throw InvalidParameter("overlap: grid mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) s += std::conj(a.values[i]) * b.values[i];
    return s * a.grid.dx();
}

inline double max_abs(const Wavefunction& psi) {
    double m = 0.0;
    for (const auto& v : psi.values) m = std::max(m, std::abs(v));
    return m;
}

inline double boundary_amplitude(const Wavefunction& psi) {
    const std::size_t n = psi.grid.n_points;
    return std::max(std::abs(psi.values.front()), std::abs(psi.values[n - 1]));
}

/// Throws SupportOverflow unless the state is compactly supported relative to
/// the box (all-zero inputs pass: they propagate to all-zero outputs).
inline void require_compact_support(const Wavefunction& psi, const std::string& where) {
    const double m = max_abs(psi);
    if (m == 0.0) return;
    if (boundary_amplitude(psi) >= kBoundaryTol * std::max(1.0, m))
        throw SupportOverflow(where + ": state amplitude at the box boundary exceeds 1e-10");
}

inline void normalize_in_place(Wavefunction& psi) {
    const double nrm = l2_norm(psi);
    if (nrm == 0.0) throw InvalidParameter("cannot normalize the zero state");
    for (auto& v : psi.values) v /= nrm;
}

/// Normalized Gaussian packet: psi(x) ~ e^{-a^2 (x-x0)^2/2} e^{i p0 x}.
inline Wavefunction make_gaussian(const GridSpec1D& grid, double center_x, double center_p,
                                  double width_a) {
    if (!(width_a > 0.0) || !std::isfinite(width_a))
        throw InvalidParameter("make_gaussian: width_a must be positive");
    if (!std::isfinite(center_x) || !std::isfinite(center_p))
        throw InvalidParameter("make_gaussian: non-finite center");
    const double margin = 5.0 / width_a;
    if (center_x - margin < grid.x_min || center_x + margin > grid.x_max)
        throw GridTooSmall("make_gaussian: +-5/a neighborhood of center_x leaves the grid");

    Wavefunction psi(grid, std::vector<cplx>(grid.n_points));
    const double amp = std::pow(width_a * width_a / kPi, 0.25);
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        const double x = grid.point(i);
        const double u = x - center_x;
        psi.values[i] = amp * std::exp(-0.5 * width_a * width_a * u * u) *
                        std::polar(1.0, center_p * x);
    }
    if (boundary_amplitude(psi) >= kBoundaryTol)
        throw GridTooSmall("make_gaussian: boundary amplitude exceeds 1e-10");
    normalize_in_place(psi);
    return psi;
}

/// n-th Hermite function (harmonic-oscillator eigenstate, unit width).
inline Wavefunction make_fock(const GridSpec1D& grid, int n) {
    if (n < 0) throw InvalidParameter("make_fock: n must be non-negative");
    if (n > 20) throw InvalidParameter("make_fock: n too large (limit 20)");

    Wavefunction psi(grid, std::vector<cplx>(grid.n_points));
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        const double x = grid.point(i);
        // stable recurrence for Hermite functions h_k
        double hm2 = 0.0;
        double hm1 = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
        for (int k = 1; k <= n; ++k) {
            const double h = std::sqrt(2.0 / k) * x * hm1 - std::sqrt((k - 1) / double(k)) * hm2;
            hm2 = hm1;
            hm1 = h;
        }
        psi.values[i] = hm1;
    }
    if (boundary_amplitude(psi) >= kBoundaryTol)
        throw InvalidParameter("make_fock: n too large for grid resolution");
    normalize_in_place(psi);
    return psi;
}

/// Symmetric superposition of two Gaussians centered at +-separation/2.
inline Wavefunction make_cat(const GridSpec1D& grid, double separation, double width_a) {
    if (!(separation >= 0.0)) throw InvalidParameter("make_cat: separation must be >= 0");
    if (!(width_a > 0.0)) throw InvalidParameter("make_cat: width_a must be positive");
    const double margin = 5.0 / width_a;
    const double lobe = separation / 2.0;
    if (-lobe - margin < grid.x_min || lobe + margin > grid.x_max)
        throw GridTooSmall("make_cat: lobes do not fit inside the grid");

    Wavefunction psi(grid, std::vector<cplx>(grid.n_points));
    const double a2 = width_a * width_a;
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        const double x = grid.point(i);
        psi.values[i] = std::exp(-0.5 * a2 * (x - lobe) * (x - lobe)) +
                        std::exp(-0.5 * a2 * (x + lobe) * (x + lobe));
    }
    if (boundary_amplitude(psi) * std::pow(a2 / kPi, 0.25) >= kBoundaryTol)
        throw GridTooSmall("make_cat: boundary amplitude exceeds 1e-10");
    normalize_in_place(psi);
    return psi;
}

} // namespace moyal
