#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "moyal/errors.hpp"

namespace moyal {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Uniform periodic grid: points x_i = x_min + i*dx, i = 0..n-1 (x_max excluded).
/// n must be a power of two >= 8 so every spectral operation stays exact.
struct GridSpec1D {
    std::size_t n_points = 0;
    double x_min = 0.0;
    double x_max = 0.0;

    GridSpec1D() = default;
    GridSpec1D(std::size_t n, double lo, double hi) : n_points(n), x_min(lo), x_max(hi) {
        validate();
    }

    double length() const { return x_max - x_min; }
    double dx() const { return length() / static_cast<double>(n_points); }
    double point(std::size_t i) const { return x_min + static_cast<double>(i) * dx(); }

    std::vector<double> points() const {
        std::vector<double> xs(n_points);
        for (std::size_t i = 0; i < n_points; ++i) xs[i] = point(i);
        return xs;
    }

    bool contains(double x) const { return x >= x_min && x < x_max; }

    // Index of x on the grid; throws unless x is a grid point to within tol*dx.
    long index_of(double x, double tol = 1e-9) const {
        const double u = (x - x_min) / dx();
        const double r = std::round(u);
        if (std::abs(u - r) > tol)
            throw InvalidParameter("value " + std::to_string(x) + " is not a grid multiple");
        return static_cast<long>(r);
    }

    bool operator==(const GridSpec1D& o) const {
        return n_points == o.n_points && x_min == o.x_min && x_max == o.x_max;
    }

    void validate() const {
        if (n_points < 8 || (n_points & (n_points - 1)) != 0)
            throw InvalidParameter("grid size must be a power of two >= 8, got " + std::to_string(n_points));
        if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max))
            throw InvalidParameter("grid requires finite x_max > x_min");
    }
};

/// Spectral dual of a grid: n points, spacing 2*pi/(n*dx), centered on zero.
inline GridSpec1D spectral_dual(const GridSpec1D& g) {
    const double dk = kTwoPi / g.length();
    const double half = dk * static_cast<double>(g.n_points) / 2.0;
    return GridSpec1D(g.n_points, -half, half);
}

/// Grid of point separations τ: same spacing as g, centered on zero.
inline GridSpec1D separation_grid(const GridSpec1D& g) {
    const double half = g.length() / 2.0;
    return GridSpec1D(g.n_points, -half, half);
}

/// (X, P) phase-space grid. P is the spectral dual of X when produced by the
/// transforms, i.e. dP*dX = 2*pi/n.
struct PhaseGridSpec {
    GridSpec1D x_grid;
    GridSpec1D p_grid;

    PhaseGridSpec() = default;
    PhaseGridSpec(GridSpec1D xg, GridSpec1D pg) : x_grid(xg), p_grid(pg) {}

    static PhaseGridSpec natural(const GridSpec1D& xg) { return PhaseGridSpec(xg, spectral_dual(xg)); }

    bool is_spectral_pair(double tol = 1e-9) const {
        if (x_grid.n_points != p_grid.n_points) return false;
        const double target = kTwoPi / static_cast<double>(x_grid.n_points);
        return std::abs(p_grid.dx() * x_grid.dx() - target) < tol * target;
    }

    bool operator==(const PhaseGridSpec& o) const { return x_grid == o.x_grid && p_grid == o.p_grid; }
};

} // namespace moyal
