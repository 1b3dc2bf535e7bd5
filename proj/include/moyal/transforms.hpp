#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "moyal/fft.hpp"
#include "moyal/grid.hpp"
#include "moyal/state.hpp"

namespace moyal {

// ---------------------------------------------------------------------------
// Phase-space data types
//
// Conventions (hbar = 1):
//   rho(x, x') = psi(x) psi*(x')
//   midpoint coordinates X = (x + x')/2, tau = x - x'
//   rho(X, tau) = integral F(X, P) e^{i tau P} dP
//   F(X, P)    = (1/2pi) integral rho(X, tau) e^{-i tau P} dtau
//   M(tau, th) = integral psi*(x - tau/2) e^{i th x} psi(x + tau/2) dx
//              = double integral F(X, P) e^{i (tau P + th X)} dX dP
// With these pairings F is the standard Wigner distribution: a packet
// e^{i p0 x} has mean momentum +p0 and the marginals come out right.
// ---------------------------------------------------------------------------

struct CharacteristicFunction {
    GridSpec1D tau_grid;
    GridSpec1D theta_grid;
    std::vector<cplx> values; // row-major [tau][theta]
    double time = 0.0;

    cplx at(std::size_t mu, std::size_t l) const { return values[mu * theta_grid.n_points + l]; }
};

struct WignerFunction {
    PhaseGridSpec phase_grid;
    std::vector<double> values; // row-major [X][P]
    double time = 0.0;
    double imag_residue = 0.0; // largest imaginary part discarded by the defining transform

    double at(std::size_t i, std::size_t j) const { return values[i * phase_grid.p_grid.n_points + j]; }
    double& at(std::size_t i, std::size_t j) { return values[i * phase_grid.p_grid.n_points + j]; }
};

struct DensityMatrix {
    GridSpec1D grid;
    std::vector<cplx> values; // row-major, entry (i,j) = rho(x_i, x_j)
    double time = 0.0;

    cplx at(std::size_t i, std::size_t j) const { return values[i * grid.n_points + j]; }
    cplx& at(std::size_t i, std::size_t j) { return values[i * grid.n_points + j]; }
};

/// rho reindexed by (X, tau). The (X, tau) lattice is the image of the
/// (x, x') lattice: X lives on the half-step lattice, and a point (s, d)
/// (X = x_min + s*dx/2, tau = d'*dx with d' = d - (n-1)) is populated only
/// when s + d' is even. Pure reindexing, no interpolation.
struct DensityMidpoint {
    GridSpec1D grid; // the underlying x-grid
    std::vector<cplx> values; // (2n-1) x (2n-1), row s, col d
    double time = 0.0;

    std::size_t side() const { return 2 * grid.n_points - 1; }
    double X_of(std::size_t s) const { return grid.x_min + 0.5 * grid.dx() * static_cast<double>(s); }
    double tau_of(std::size_t d) const {
        return grid.dx() * (static_cast<double>(d) - static_cast<double>(grid.n_points - 1));
    }
    bool on_lattice(std::size_t s, std::size_t d) const {
        const long dp = static_cast<long>(d) - static_cast<long>(grid.n_points - 1);
        const long i2 = static_cast<long>(s) + dp; // = 2i
        const long j2 = static_cast<long>(s) - dp; // = 2j
        return (i2 % 2 == 0) && i2 >= 0 && j2 >= 0 &&
               i2 < 2 * static_cast<long>(grid.n_points) && j2 < 2 * static_cast<long>(grid.n_points);
    }
    cplx at(std::size_t s, std::size_t d) const { return values[s * side() + d]; }
    cplx& at(std::size_t s, std::size_t d) { return values[s * side() + d]; }
};

// ---------------------------------------------------------------------------
// helpers
// ---------------------------------------------------------------------------

namespace detail {

inline std::size_t wrap(long idx, std::size_t n) {
    long r = idx % static_cast<long>(n);
    if (r < 0) r += static_cast<long>(n);
    return static_cast<std::size_t>(r);
}

/// Half-step correlation table C[i][mu] = psi2*(2i - m) psi2(2i + m) with
/// m = mu - n/2, evaluated from the band-limited upsampling of psi.
inline std::vector<cplx> correlation_table(const std::vector<cplx>& psi2, std::size_t n) {
    std::vector<cplx> c(n * n);
    const long half = static_cast<long>(n) / 2;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t mu = 0; mu < n; ++mu) {
            const long m = static_cast<long>(mu) - half;
            const cplx plus = psi2[wrap(2 * static_cast<long>(i) + m, 2 * n)];
            const cplx minus = psi2[wrap(2 * static_cast<long>(i) - m, 2 * n)];
            c[i * n + mu] = std::conj(minus) * plus;
        }
    }
    return c;
}

inline double max_abs(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

/// Wigner rows from a correlation table: F(X_i, P_j) = (dx/2pi) sum_m C_i(m) e^{-i tau_m P_j}.
inline WignerFunction wigner_from_correlation(const std::vector<cplx>& corr,
                                              const PhaseGridSpec& pg, double time) {
    const std::size_t n = pg.x_grid.n_points;
    const GridSpec1D tau = separation_grid(pg.x_grid);
    WignerFunction F;
    F.phase_grid = pg;
    F.time = time;
    F.values.assign(n * n, 0.0);
    const double scale = pg.x_grid.dx() / kTwoPi;
    double residue = 0.0;
    double fmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<cplx> row(corr.begin() + i * n, corr.begin() + (i + 1) * n);
        std::vector<cplx> out = fourier_sum(row, tau.x_min, tau.dx(), pg.p_grid.x_min, pg.p_grid.dx(), -1);
        for (std::size_t j = 0; j < n; ++j) {
            const cplx v = out[j] * scale;
            F.at(i, j) = v.real();
            residue = std::max(residue, std::abs(v.imag()));
            fmax = std::max(fmax, std::abs(v.real()));
        }
    }
    F.imag_residue = fmax > 0.0 ? residue / fmax : residue;
    return F;
}

/// Inverse of the above: C_i(m) = (2pi/(n dx)) sum_j F(X_i, P_j) e^{+i tau_m P_j}.
inline std::vector<cplx> correlation_from_wigner(const WignerFunction& F) {
    const std::size_t n = F.phase_grid.x_grid.n_points;
    const GridSpec1D tau = separation_grid(F.phase_grid.x_grid);
    std::vector<cplx> corr(n * n);
    const double scale = kTwoPi / (static_cast<double>(n) * F.phase_grid.x_grid.dx());
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<cplx> row(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = F.at(i, j);
        std::vector<cplx> out =
            fourier_sum(row, F.phase_grid.p_grid.x_min, F.phase_grid.p_grid.dx(), tau.x_min, tau.dx(), +1);
        for (std::size_t mu = 0; mu < n; ++mu) corr[i * n + mu] = out[mu] * scale;
    }
    return corr;
}

} // namespace detail

// ---------------------------------------------------------------------------
// operations
// ---------------------------------------------------------------------------

/// Natural grids for M given the state grid: tau spans [-L/2, L/2) at the
/// x resolution, theta is the spectral dual of x.
inline GridSpec1D natural_tau_grid(const GridSpec1D& g) { return separation_grid(g); }
inline GridSpec1D natural_theta_grid(const GridSpec1D& g) { return spectral_dual(g); }

/// M(tau, theta) = integral psi*(x - tau/2) e^{i theta x} psi(x + tau/2) dx.
/// tau samples must be grid multiples; the half-step product is taken from
/// the band-limited upsampling of psi.
inline CharacteristicFunction characteristic_from_wavefunction(const Wavefunction& psi,
                                                               const GridSpec1D& tau_grid,
                                                               const GridSpec1D& theta_grid) {
    const GridSpec1D& g = psi.grid;
    const std::size_t n = g.n_points;
    require_compact_support(psi, "characteristic_from_wavefunction");

    const std::vector<cplx> psi2 = upsample2(psi.values);
    CharacteristicFunction M;
    M.tau_grid = tau_grid;
    M.theta_grid = theta_grid;
    M.time = psi.time;
    M.values.assign(tau_grid.n_points * theta_grid.n_points, cplx(0.0));

    const double target = kTwoPi / static_cast<double>(n);
    const bool fft_path = theta_grid.n_points == n &&
                          std::abs(theta_grid.dx() * g.dx() - target) < 1e-9 * target;

    for (std::size_t mu = 0; mu < tau_grid.n_points; ++mu) {
        const double tau = tau_grid.point(mu);
        const double mreal = tau / g.dx();
        const long m = static_cast<long>(std::llround(mreal));
        if (std::abs(mreal - static_cast<double>(m)) > 1e-9)
            throw InvalidParameter("characteristic_from_wavefunction: tau is not a grid multiple");
        if (std::abs(m) > static_cast<long>(n) / 2)
            throw SupportOverflow("characteristic_from_wavefunction: |tau| exceeds half the box");

        std::vector<cplx> prod(n);
        for (std::size_t i = 0; i < n; ++i) {
            const cplx plus = psi2[detail::wrap(2 * static_cast<long>(i) + m, 2 * n)];
            const cplx minus = psi2[detail::wrap(2 * static_cast<long>(i) - m, 2 * n)];
            prod[i] = std::conj(minus) * plus;
        }
        std::vector<cplx> out;
        if (fft_path) {
            out = fourier_sum(prod, g.x_min, g.dx(), theta_grid.x_min, theta_grid.dx(), +1);
        } else {
            out = fourier_sum_direct(prod, g.x_min, g.dx(), theta_grid.points(), +1);
        }
        for (std::size_t l = 0; l < theta_grid.n_points; ++l)
            M.values[mu * theta_grid.n_points + l] = out[l] * g.dx();
    }
    return M;
}

/// Single-point M(tau, theta) by direct quadrature (used by the bridge checks).
inline cplx characteristic_at(const Wavefunction& psi, double tau, double theta) {
    const GridSpec1D& g = psi.grid;
    const std::size_t n = g.n_points;
    const double mreal = tau / g.dx();
    const long m = static_cast<long>(std::llround(mreal));
    if (std::abs(mreal - static_cast<double>(m)) > 1e-9)
        throw InvalidParameter("characteristic_at: tau is not a grid multiple");
    if (std::abs(m) > static_cast<long>(n) / 2)
        throw SupportOverflow("characteristic_at: |tau| exceeds half the box");
    const std::vector<cplx> psi2 = upsample2(psi.values);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx plus = psi2[detail::wrap(2 * static_cast<long>(i) + m, 2 * n)];
        const cplx minus = psi2[detail::wrap(2 * static_cast<long>(i) - m, 2 * n)];
        acc += std::conj(minus) * plus * std::polar(1.0, theta * g.point(i));
    }
    return acc * g.dx();
}

/// Hermiticity residual of M: max |M(-tau,-theta) - conj M(tau,theta)| over
/// paired grid points, relative to max |M|.
inline double characteristic_hermiticity_residual(const CharacteristicFunction& M) {
    const std::size_t nt = M.tau_grid.n_points;
    const std::size_t nh = M.theta_grid.n_points;
    // pairing requires zero-centered grids; off-grid pairs are skipped
    double scale = detail::max_abs(M.values);
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (std::size_t mu = 1; mu < nt; ++mu) {
        for (std::size_t l = 1; l < nh; ++l) {
            const double tau = M.tau_grid.point(mu);
            const double th = M.theta_grid.point(l);
            const double tau_n = M.tau_grid.point(nt - mu);
            const double th_n = M.theta_grid.point(nh - l);
            if (std::abs(tau_n + tau) > 1e-9 || std::abs(th_n + th) > 1e-9) continue;
            worst = std::max(worst, std::abs(M.at(nt - mu, nh - l) - std::conj(M.at(mu, l))));
        }
    }
    return worst / scale;
}

/// F(X,P) = (1/(2pi)^2) double integral M(tau,theta) e^{-i(tau P + theta X)} dtau dtheta.
/// The output grids are the centered spectral duals of (theta, tau).
inline WignerFunction wigner_from_characteristic(const CharacteristicFunction& M) {
    const std::size_t n = M.tau_grid.n_points;
    if (M.theta_grid.n_points != n)
        throw InvalidParameter("wigner_from_characteristic: expects square natural M grids");
    if (characteristic_hermiticity_residual(M) > 1e-9)
        throw NonHermitianInput("wigner_from_characteristic: M violates Hermitian symmetry");

    const GridSpec1D x_grid = spectral_dual(M.theta_grid); // centered dual: spacing 2pi/(n dtheta)
    const GridSpec1D p_grid = spectral_dual(M.tau_grid);
    const PhaseGridSpec pg(x_grid, p_grid);
    const GridSpec1D tau_expected = separation_grid(x_grid);
    if (std::abs(M.tau_grid.dx() - tau_expected.dx()) > 1e-9 * tau_expected.dx() ||
        std::abs(M.tau_grid.x_min - tau_expected.x_min) > 1e-9)
        throw InvalidParameter("wigner_from_characteristic: tau grid must be the centered dual pair");

    // theta -> X per tau row: C_i(m) = (dtheta/2pi) sum_l M e^{-i theta_l X_i};
    // the remaining dtau/2pi prefactor is applied by wigner_from_correlation.
    std::vector<cplx> corr(n * n);
    const double scale = M.theta_grid.dx() / kTwoPi;
    for (std::size_t mu = 0; mu < n; ++mu) {
        std::vector<cplx> row(M.values.begin() + mu * n, M.values.begin() + (mu + 1) * n);
        std::vector<cplx> out = fourier_sum(row, M.theta_grid.x_min, M.theta_grid.dx(),
                                            x_grid.x_min, x_grid.dx(), -1);
        for (std::size_t i = 0; i < n; ++i) corr[i * n + mu] = out[i] * scale;
    }
    return detail::wigner_from_correlation(corr, pg, M.time);
}

/// Inverse of wigner_from_characteristic on the natural grids.
inline CharacteristicFunction characteristic_from_wigner(const WignerFunction& F) {
    const std::size_t n = F.phase_grid.x_grid.n_points;
    const GridSpec1D tau = separation_grid(F.phase_grid.x_grid);
    const GridSpec1D theta = spectral_dual(F.phase_grid.x_grid);
    const std::vector<cplx> corr = detail::correlation_from_wigner(F);

    CharacteristicFunction M;
    M.tau_grid = tau;
    M.theta_grid = theta;
    M.time = F.time;
    M.values.assign(n * n, cplx(0.0));
    for (std::size_t mu = 0; mu < n; ++mu) {
        std::vector<cplx> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = corr[i * n + mu];
        std::vector<cplx> out = fourier_sum(col, F.phase_grid.x_grid.x_min, F.phase_grid.x_grid.dx(),
                                            theta.x_min, theta.dx(), +1);
        for (std::size_t l = 0; l < n; ++l)
            M.values[mu * n + l] = out[l] * F.phase_grid.x_grid.dx();
    }
    return M;
}

/// F(X,P) = (1/2pi) integral psi*(X - tau/2) e^{-i P tau} psi(X + tau/2) dtau.
inline WignerFunction wigner_from_wavefunction(const Wavefunction& psi, const PhaseGridSpec& pg) {
    if (!(pg.x_grid == psi.grid))
        throw InvalidParameter("wigner_from_wavefunction: phase grid X axis must match the state grid");
    if (!pg.is_spectral_pair())
        throw InvalidParameter("wigner_from_wavefunction: P grid is not the spectral dual");
    require_compact_support(psi, "wigner_from_wavefunction");
    const std::vector<cplx> psi2 = upsample2(psi.values);
    const std::vector<cplx> corr = detail::correlation_table(psi2, psi.grid.n_points);
    return detail::wigner_from_correlation(corr, pg, psi.time);
}

/// rho(x, x') = psi(x) psi*(x').
inline DensityMatrix density_from_wavefunction(const Wavefunction& psi) {
    const std::size_t n = psi.grid.n_points;
    DensityMatrix rho;
    rho.grid = psi.grid;
    rho.time = psi.time;
    rho.values.assign(n * n, cplx(0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            rho.at(i, j) = psi.values[i] * std::conj(psi.values[j]);
    return rho;
}

inline double hermiticity_residual(const DensityMatrix& rho) {
    const std::size_t n = rho.grid.n_points;
    double scale = detail::max_abs(rho.values);
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            worst = std::max(worst, std::abs(rho.at(i, j) - std::conj(rho.at(j, i))));
    return worst / scale;
}

inline double trace(const DensityMatrix& rho) {
    double t = 0.0;
    for (std::size_t i = 0; i < rho.grid.n_points; ++i) t += rho.at(i, i).real();
    return t * rho.grid.dx();
}

/// Exact reindexing rho(x, x') -> rho(X, tau), X = (x+x')/2, tau = x - x'.
inline DensityMidpoint midpoint_coords(const DensityMatrix& rho) {
    const std::size_t n = rho.grid.n_points;
    DensityMidpoint mid;
    mid.grid = rho.grid;
    mid.time = rho.time;
    mid.values.assign((2 * n - 1) * (2 * n - 1), cplx(0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            mid.at(i + j, i - j + (n - 1)) = rho.at(i, j);
    return mid;
}

/// Inverse reindexing; exact round trip.
inline DensityMatrix midpoint_to_cartesian(const DensityMidpoint& mid) {
    const std::size_t n = mid.grid.n_points;
    DensityMatrix rho;
    rho.grid = mid.grid;
    rho.time = mid.time;
    rho.values.assign(n * n, cplx(0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            rho.at(i, j) = mid.at(i + j, i - j + (n - 1));
    return rho;
}

/// F(X,P) = (1/2pi) integral rho(X + tau/2, X - tau/2) e^{-i tau P} dtau,
/// with the half-step values taken from the 2-d band-limited upsampling.
inline WignerFunction wigner_from_density(const DensityMatrix& rho, const PhaseGridSpec& pg) {
    const std::size_t n = rho.grid.n_points;
    if (!(pg.x_grid == rho.grid))
        throw InvalidParameter("wigner_from_density: phase grid X axis must match the density grid");
    if (!pg.is_spectral_pair())
        throw InvalidParameter("wigner_from_density: P grid is not the spectral dual");
    if (hermiticity_residual(rho) > 1e-10)
        throw NonHermitianInput("wigner_from_density: rho violates Hermiticity");

    // upsample rows (x' axis), then columns (x axis)
    std::vector<cplx> rho_half(n * 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<cplx> row(rho.values.begin() + i * n, rho.values.begin() + (i + 1) * n);
        std::vector<cplx> up = upsample2(row);
        std::copy(up.begin(), up.end(), rho_half.begin() + i * 2 * n);
    }
    std::vector<cplx> rho2(2 * n * 2 * n);
    for (std::size_t v = 0; v < 2 * n; ++v) {
        std::vector<cplx> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = rho_half[i * 2 * n + v];
        std::vector<cplx> up = upsample2(col);
        for (std::size_t u = 0; u < 2 * n; ++u) rho2[u * 2 * n + v] = up[u];
    }

    std::vector<cplx> corr(n * n);
    const long half = static_cast<long>(n) / 2;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t mu = 0; mu < n; ++mu) {
            const long m = static_cast<long>(mu) - half;
            const std::size_t u = detail::wrap(2 * static_cast<long>(i) + m, 2 * n);
            const std::size_t v = detail::wrap(2 * static_cast<long>(i) - m, 2 * n);
            corr[i * n + mu] = rho2[u * 2 * n + v];
        }
    }
    return detail::wigner_from_correlation(corr, pg, rho.time);
}

/// Inverse of wigner_from_density (band-limited in X between lattice points).
inline DensityMatrix rho_from_wigner(const WignerFunction& F) {
    const std::size_t n = F.phase_grid.x_grid.n_points;
    const std::vector<cplx> corr = detail::correlation_from_wigner(F);

    // upsample each tau column over X so rho is available on the full lattice
    std::vector<cplx> corr2(2 * n * n);
    for (std::size_t mu = 0; mu < n; ++mu) {
        std::vector<cplx> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = corr[i * n + mu];
        std::vector<cplx> up = upsample2(col);
        for (std::size_t s = 0; s < 2 * n; ++s) corr2[s * n + mu] = up[s];
    }

    DensityMatrix rho;
    rho.grid = F.phase_grid.x_grid;
    rho.time = F.time;
    rho.values.assign(n * n, cplx(0.0));
    const long half = static_cast<long>(n) / 2;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const long m = static_cast<long>(i) - static_cast<long>(j);
            // separations beyond the tau window never enter F; for compactly
            // supported states those entries vanish
            if (m < -half || m >= half) continue;
            rho.at(i, j) = corr2[(i + j) * n + static_cast<std::size_t>(m + half)];
        }
    }
    return rho;
}

/// integral F dP: equals |psi(X)|^2 for pure states.
inline std::vector<double> position_marginal(const WignerFunction& F) {
    const std::size_t nx = F.phase_grid.x_grid.n_points;
    const std::size_t np = F.phase_grid.p_grid.n_points;
    std::vector<double> out(nx, 0.0);
    for (std::size_t i = 0; i < nx; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < np; ++j) s += F.at(i, j);
        out[i] = s * F.phase_grid.p_grid.dx();
    }
    return out;
}

/// integral F dX: equals |phi(P)|^2 (momentum wavefunction) for pure states.
inline std::vector<double> momentum_marginal(const WignerFunction& F) {
    const std::size_t nx = F.phase_grid.x_grid.n_points;
    const std::size_t np = F.phase_grid.p_grid.n_points;
    std::vector<double> out(np, 0.0);
    for (std::size_t j = 0; j < np; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < nx; ++i) s += F.at(i, j);
        out[j] = s * F.phase_grid.x_grid.dx();
    }
    return out;
}

struct WignerMoments {
    double norm = 0.0;
    double mean_x = 0.0;
    double mean_p = 0.0;
    double var_x = 0.0;
    double var_p = 0.0;
};

/// Riemann-sum moments of F. A degenerate all-zero F reports zeros.
inline WignerMoments moments_from_wigner(const WignerFunction& F) {
    const auto& xg = F.phase_grid.x_grid;
    const auto& pg = F.phase_grid.p_grid;
    const double w = xg.dx() * pg.dx();
    WignerMoments mom;
    double sx = 0.0, sp = 0.0, sxx = 0.0, spp = 0.0;
    for (std::size_t i = 0; i < xg.n_points; ++i) {
        const double x = xg.point(i);
        for (std::size_t j = 0; j < pg.n_points; ++j) {
            const double p = pg.point(j);
            const double f = F.at(i, j) * w;
            mom.norm += f;
            sx += x * f;
            sp += p * f;
            sxx += x * x * f;
            spp += p * p * f;
        }
    }
    if (std::abs(mom.norm) < 1e-300) return WignerMoments{};
    mom.mean_x = sx / mom.norm;
    mom.mean_p = sp / mom.norm;
    mom.var_x = sxx / mom.norm - mom.mean_x * mom.mean_x;
    mom.var_p = spp / mom.norm - mom.mean_p * mom.mean_p;
    return mom;
}

} // namespace moyal
