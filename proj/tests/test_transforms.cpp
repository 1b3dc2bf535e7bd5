#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>

#include "moyal/state.hpp"
#include "moyal/transforms.hpp"

using namespace moyal;

namespace {

const GridSpec1D kGrid(256, -10.0, 10.0);

double linf_diff(const WignerFunction& a, const WignerFunction& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k)
        m = std::max(m, std::abs(a.values[k] - b.values[k]));
    return m;
}

double rel_l2_diff(const WignerFunction& a, const WignerFunction& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        num += (a.values[k] - b.values[k]) * (a.values[k] - b.values[k]);
        den += a.values[k] * a.values[k];
    }
    return std::sqrt(num / den);
}

} // namespace

TEST_CASE("characteristic function of the ground state is the Gaussian oracle") {
    auto psi = make_gaussian(kGrid, 0.0, 0.0, 1.0);
    auto M = characteristic_from_wavefunction(psi, natural_tau_grid(kGrid), natural_theta_grid(kGrid));

    // M(0,0) is the norm
    const std::size_t mu0 = M.tau_grid.n_points / 2;
    const std::size_t l0 = M.theta_grid.n_points / 2;
    CHECK(std::abs(M.at(mu0, l0) - cplx(1.0)) < 1e-10);

    // closed form e^{-(tau^2+theta^2)/4} where it is numerically meaningful
    for (std::size_t mu = 0; mu < M.tau_grid.n_points; mu += 7) {
        for (std::size_t l = 0; l < M.theta_grid.n_points; l += 7) {
            const double tau = M.tau_grid.point(mu);
            const double th = M.theta_grid.point(l);
            const double oracle = std::exp(-(tau * tau + th * th) / 4.0);
            CHECK(std::abs(M.at(mu, l) - cplx(oracle)) < 1e-8);
        }
    }

    CHECK(characteristic_hermiticity_residual(M) < 1e-12);
}

TEST_CASE("translation multiplies M by a pure phase") {
    auto psi0 = make_gaussian(kGrid, 0.0, 0.0, 1.0);
    const double s = 1.25; // a grid multiple: 1.25 / (20/256) = 16 cells
    auto psis = make_gaussian(kGrid, s, 0.0, 1.0);
    auto M0 = characteristic_from_wavefunction(psi0, natural_tau_grid(kGrid), natural_theta_grid(kGrid));
    auto Ms = characteristic_from_wavefunction(psis, natural_tau_grid(kGrid), natural_theta_grid(kGrid));
    for (std::size_t mu = 0; mu < M0.tau_grid.n_points; mu += 11) {
        for (std::size_t l = 0; l < M0.theta_grid.n_points; l += 11) {
            if (std::abs(M0.at(mu, l)) < 1e-6) continue;
            const cplx phase = std::polar(1.0, M0.theta_grid.point(l) * s);
            CHECK(std::abs(Ms.at(mu, l) - phase * M0.at(mu, l)) < 1e-8);
        }
    }
}

TEST_CASE("Wigner function oracles") {
    auto pg = PhaseGridSpec::natural(kGrid);

    SECTION("ground state is (1/pi) e^{-X^2-P^2}") {
        auto F = wigner_from_wavefunction(make_gaussian(kGrid, 0.0, 0.0, 1.0), pg);
        const std::size_t i0 = static_cast<std::size_t>(kGrid.index_of(0.0));
        const std::size_t j0 = pg.p_grid.n_points / 2;
        CHECK(F.at(i0, j0) == Catch::Approx(1.0 / kPi).margin(1e-6));
        for (std::size_t i = 0; i < kGrid.n_points; i += 13) {
            for (std::size_t j = 0; j < pg.p_grid.n_points; j += 13) {
                const double X = pg.x_grid.point(i);
                const double P = pg.p_grid.point(j);
                const double oracle = std::exp(-X * X - P * P) / kPi;
                CHECK(std::abs(F.at(i, j) - oracle) < 1e-8);
            }
        }
        CHECK(F.imag_residue < 1e-10);
    }

    SECTION("Fock 1 is negative at the origin") {
        auto F = wigner_from_wavefunction(make_fock(kGrid, 1), pg);
        const std::size_t i0 = static_cast<std::size_t>(kGrid.index_of(0.0));
        const std::size_t j0 = pg.p_grid.n_points / 2;
        CHECK(F.at(i0, j0) == Catch::Approx(-1.0 / kPi).margin(1e-6));
    }

    SECTION("cat state shows interference fringes") {
        auto F = wigner_from_wavefunction(make_cat(kGrid, 6.0, 1.0), pg);
        double fmin = 0.0;
        for (double v : F.values) fmin = std::min(fmin, v);
        CHECK(fmin < -0.05);
    }
}

TEST_CASE("the two routes to F coincide") {
    auto pg = PhaseGridSpec::natural(kGrid);
    for (const auto& psi : {make_gaussian(kGrid, 1.0, -0.5, 1.0), make_fock(kGrid, 3), make_cat(kGrid, 6.0, 1.0)}) {
        auto direct = wigner_from_wavefunction(psi, pg);
        auto M = characteristic_from_wavefunction(psi, natural_tau_grid(kGrid), natural_theta_grid(kGrid));
        auto composed = wigner_from_characteristic(M);
        REQUIRE(composed.phase_grid.x_grid == pg.x_grid);
        CHECK(linf_diff(direct, composed) < 1e-9);
    }
}

TEST_CASE("round trips") {
    auto pg = PhaseGridSpec::natural(kGrid);
    auto psi = make_gaussian(kGrid, 1.5, 1.0, 1.0);

    SECTION("psi -> M -> F -> rho -> F") {
        auto M = characteristic_from_wavefunction(psi, natural_tau_grid(kGrid), natural_theta_grid(kGrid));
        auto F = wigner_from_characteristic(M);
        auto rho = rho_from_wigner(F);
        auto F2 = wigner_from_density(rho, pg);
        CHECK(rel_l2_diff(F, F2) < 1e-9);
    }

    SECTION("F -> M -> F") {
        auto F = wigner_from_wavefunction(psi, pg);
        auto M = characteristic_from_wigner(F);
        auto F2 = wigner_from_characteristic(M);
        CHECK(rel_l2_diff(F, F2) < 1e-10);
        CHECK(characteristic_hermiticity_residual(M) < 1e-12);
    }

    SECTION("F -> rho -> F") {
        auto F = wigner_from_wavefunction(psi, pg);
        auto rho = rho_from_wigner(F);
        auto F2 = wigner_from_density(rho, pg);
        CHECK(rel_l2_diff(F, F2) < 1e-10);
    }
}

TEST_CASE("density matrix construction and reductions") {
    auto psi = make_gaussian(kGrid, 0.0, 0.0, 1.0);
    auto rho = density_from_wavefunction(psi);
    const std::size_t i0 = static_cast<std::size_t>(kGrid.index_of(0.0));

    CHECK(std::abs(rho.at(i0, i0) - cplx(1.0 / std::sqrt(kPi))) < 1e-10);
    CHECK(hermiticity_residual(rho) < 1e-14);
    CHECK(trace(rho) == Catch::Approx(1.0).margin(1e-9));

    SECTION("rank one: eigenvalues are {1, 0, ...}") {
        const std::size_t n = kGrid.n_points;
        Eigen::MatrixXcd m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = rho.at(i, j) * kGrid.dx();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
        const auto& ev = es.eigenvalues();
        CHECK(ev(n - 1) == Catch::Approx(1.0).margin(1e-9));
        CHECK(std::abs(ev(n - 2)) < 1e-9);
        CHECK(ev(0) > -1e-9); // positive semidefinite
    }

    SECTION("zero state propagates to zero rho") {
        Wavefunction zero(kGrid, std::vector<cplx>(kGrid.n_points, cplx(0.0)));
        auto rho0 = density_from_wavefunction(zero);
        for (const auto& v : rho0.values) CHECK(v == cplx(0.0));
    }
}

TEST_CASE("midpoint reindexing") {
    auto psi = make_gaussian(kGrid, 0.0, 0.0, 1.0);
    auto rho = density_from_wavefunction(psi);
    auto mid = midpoint_coords(rho);

    SECTION("Gaussian oracle at on-lattice points") {
        for (std::size_t s = 0; s < mid.side(); s += 17) {
            for (std::size_t d = 0; d < mid.side(); d += 17) {
                if (!mid.on_lattice(s, d)) continue;
                const double X = mid.X_of(s);
                const double tau = mid.tau_of(d);
                const double oracle = std::exp(-X * X - tau * tau / 4.0) / std::sqrt(kPi);
                CHECK(std::abs(mid.at(s, d) - cplx(oracle)) < 1e-10);
            }
        }
    }

    SECTION("diagonal maps to tau = 0") {
        const std::size_t i = 100;
        const std::size_t s = 2 * i;
        const std::size_t d0 = kGrid.n_points - 1;
        CHECK(mid.tau_of(d0) == 0.0);
        CHECK(mid.at(s, d0) == rho.at(i, i));
    }

    SECTION("round trip is exact") {
        auto back = midpoint_to_cartesian(mid);
        for (std::size_t k = 0; k < rho.values.size(); ++k) CHECK(back.values[k] == rho.values[k]);
    }
}

TEST_CASE("wigner_from_density") {
    auto pg = PhaseGridSpec::natural(kGrid);
    const std::size_t i0 = static_cast<std::size_t>(kGrid.index_of(0.0));
    const std::size_t j0 = pg.p_grid.n_points / 2;

    SECTION("pure state matches the wavefunction route") {
        auto psi = make_gaussian(kGrid, 1.0, 0.5, 1.0);
        auto F1 = wigner_from_wavefunction(psi, pg);
        auto F2 = wigner_from_density(density_from_wavefunction(psi), pg);
        CHECK(linf_diff(F1, F2) < 1e-9);
        CHECK(F2.at(i0, j0) > 0.0);
    }

    SECTION("mixtures act linearly") {
        auto r0 = density_from_wavefunction(make_fock(kGrid, 0));
        auto r1 = density_from_wavefunction(make_fock(kGrid, 1));
        DensityMatrix mix = r0;
        for (std::size_t k = 0; k < mix.values.size(); ++k)
            mix.values[k] = 0.5 * (r0.values[k] + r1.values[k]);
        auto Fm = wigner_from_density(mix, pg);
        auto F0 = wigner_from_density(r0, pg);
        auto F1 = wigner_from_density(r1, pg);
        for (std::size_t k = 0; k < Fm.values.size(); k += 5)
            CHECK(std::abs(Fm.values[k] - 0.5 * (F0.values[k] + F1.values[k])) < 1e-9);
    }

    SECTION("linearity is exact at the floating-point level") {
        auto ra = density_from_wavefunction(make_fock(kGrid, 0));
        auto rb = density_from_wavefunction(make_fock(kGrid, 2));
        const double al = 0.3, be = 0.7;
        DensityMatrix comb = ra;
        for (std::size_t k = 0; k < comb.values.size(); ++k)
            comb.values[k] = al * ra.values[k] + be * rb.values[k];
        auto Fc = wigner_from_density(comb, pg);
        auto Fa = wigner_from_density(ra, pg);
        auto Fb = wigner_from_density(rb, pg);
        for (std::size_t k = 0; k < Fc.values.size(); k += 5)
            CHECK(std::abs(Fc.values[k] - (al * Fa.values[k] + be * Fb.values[k])) < 1e-13);
    }

    SECTION("non-Hermitian input is rejected") {
        auto rho = density_from_wavefunction(make_gaussian(kGrid, 0.0, 0.0, 1.0));
        rho.at(3, 7) += cplx(0.1, 0.1);
        REQUIRE_THROWS_AS(wigner_from_density(rho, pg), NonHermitianInput);
    }
}

TEST_CASE("rho_from_wigner recovers the density matrix") {
    auto pg = PhaseGridSpec::natural(kGrid);
    auto psi = make_gaussian(kGrid, 0.0, 0.0, 1.0);
    auto F = wigner_from_wavefunction(psi, pg);
    auto rho = rho_from_wigner(F);
    const std::size_t i0 = static_cast<std::size_t>(kGrid.index_of(0.0));
    CHECK(std::abs(rho.at(i0, i0) - cplx(1.0 / std::sqrt(kPi))) < 1e-8);
    CHECK(hermiticity_residual(rho) < 1e-10);

    auto direct = density_from_wavefunction(psi);
    double worst = 0.0;
    for (std::size_t k = 0; k < rho.values.size(); ++k)
        worst = std::max(worst, std::abs(rho.values[k] - direct.values[k]));
    CHECK(worst < 1e-9);
}

TEST_CASE("marginals") {
    auto pg = PhaseGridSpec::natural(kGrid);

    SECTION("position marginal equals |psi|^2") {
        auto psi = make_gaussian(kGrid, 0.0, 0.0, 1.0);
        auto F = wigner_from_wavefunction(psi, pg);
        auto marg = position_marginal(F);
        const std::size_t i0 = static_cast<std::size_t>(kGrid.index_of(0.0));
        CHECK(marg[i0] == Catch::Approx(1.0 / std::sqrt(kPi)).margin(1e-7));
        for (std::size_t i = 0; i < kGrid.n_points; i += 9)
            CHECK(std::abs(marg[i] - std::norm(psi.values[i])) < 1e-8);
    }

    SECTION("Fock 1 marginal vanishes at the origin") {
        auto F = wigner_from_wavefunction(make_fock(kGrid, 1), pg);
        auto marg = position_marginal(F);
        CHECK(std::abs(marg[kGrid.index_of(0.0)]) < 1e-8);
    }

    SECTION("momentum marginal equals |phi(P)|^2") {
        auto psi = make_gaussian(kGrid, 1.0, 2.0, 1.0);
        auto F = wigner_from_wavefunction(psi, pg);
        auto marg = momentum_marginal(F);
        // phi(P) = (1/sqrt(2 pi)) integral psi(x) e^{-iPx} dx
        auto phi = fourier_sum(psi.values, kGrid.x_min, kGrid.dx(), pg.p_grid.x_min, pg.p_grid.dx(), -1);
        for (std::size_t j = 0; j < pg.p_grid.n_points; ++j) {
            const double density = std::norm(phi[j] * kGrid.dx() / std::sqrt(kTwoPi));
            CHECK(std::abs(marg[j] - density) < 1e-7);
        }
    }
}

TEST_CASE("degenerate zero inputs propagate") {
    auto pg = PhaseGridSpec::natural(kGrid);
    Wavefunction zero(kGrid, std::vector<cplx>(kGrid.n_points, cplx(0.0)));

    auto F = wigner_from_wavefunction(zero, pg);
    for (double v : F.values) CHECK(v == 0.0);

    auto M = characteristic_from_wavefunction(zero, natural_tau_grid(kGrid), natural_theta_grid(kGrid));
    for (const auto& v : M.values) CHECK(v == cplx(0.0));

    auto F0 = wigner_from_characteristic(M);
    for (double v : F0.values) CHECK(v == 0.0);
}

TEST_CASE("support guard rejects states touching the boundary") {
    std::vector<cplx> vals(kGrid.n_points, cplx(0.0));
    for (std::size_t i = 0; i < kGrid.n_points; ++i) {
        const double x = kGrid.point(i);
        vals[i] = std::exp(-0.02 * x * x); // far too wide for the box
    }
    Wavefunction wide(kGrid, vals);
    normalize_in_place(wide);
    REQUIRE_THROWS_AS(wigner_from_wavefunction(wide, PhaseGridSpec::natural(kGrid)), SupportOverflow);
    REQUIRE_THROWS_AS(
        characteristic_from_wavefunction(wide, natural_tau_grid(kGrid), natural_theta_grid(kGrid)),
        SupportOverflow);
}
