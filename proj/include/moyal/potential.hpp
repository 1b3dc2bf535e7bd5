#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "moyal/errors.hpp"
#include "moyal/grid.hpp"

namespace moyal {

/// One-dimensional potential V(x). Analytic kinds evaluate anywhere; tabulated
/// values live on a grid and are extended beyond the box by their boundary
/// value (periodic grids make that the least-artifact continuation).
struct PotentialSpec {
    enum class Kind { free, linear, harmonic, quartic, double_well, tabulated };

    Kind kind = Kind::free;
    double slope = 0.0;       // linear: V = slope*x
    double omega = 0.0;       // harmonic: V = omega^2 x^2 / 2
    double lambda = 0.0;      // quartic: V = lambda x^4
    double well_a = 0.0;      // double well: V = well_a x^4 - well_b x^2
    double well_b = 0.0;
    GridSpec1D table_grid;
    std::vector<double> table;

    static PotentialSpec free_particle() { return {}; }

    static PotentialSpec linear(double s) {
        require_finite(s, "slope");
        PotentialSpec v;
        v.kind = Kind::linear;
        v.slope = s;
        return v;
    }

    static PotentialSpec harmonic(double omega) {
        require_finite(omega, "omega");
        PotentialSpec v;
        v.kind = Kind::harmonic;
        v.omega = omega;
        return v;
    }

    static PotentialSpec quartic(double lambda) {
        require_finite(lambda, "lambda");
        PotentialSpec v;
        v.kind = Kind::quartic;
        v.lambda = lambda;
        return v;
    }

    static PotentialSpec double_well(double a, double b) {
        require_finite(a, "a");
        require_finite(b, "b");
        PotentialSpec v;
        v.kind = Kind::double_well;
        v.well_a = a;
        v.well_b = b;
        return v;
    }

    static PotentialSpec tabulated(const GridSpec1D& grid, std::vector<double> values) {
        if (values.size() != grid.n_points)
            throw InvalidParameter("tabulated potential must have one sample per grid point");
        for (double y : values)
            if (!std::isfinite(y)) throw InvalidParameter("tabulated potential has non-finite samples");
        PotentialSpec v;
        v.kind = Kind::tabulated;
        v.table_grid = grid;
        v.table = std::move(values);
        return v;
    }

    double operator()(double x) const {
        switch (kind) {
            case Kind::free: return 0.0;
            case Kind::linear: return slope * x;
            case Kind::harmonic: return 0.5 * omega * omega * x * x;
            case Kind::quartic: return lambda * x * x * x * x;
            case Kind::double_well: return well_a * x * x * x * x - well_b * x * x;
            case Kind::tabulated: return eval_table(x);
        }
        return 0.0;
    }

    /// dV/dx, used by kernel cross-checks (analytic kinds only).
    double derivative(double x) const {
        switch (kind) {
            case Kind::free: return 0.0;
            case Kind::linear: return slope;
            case Kind::harmonic: return omega * omega * x;
            case Kind::quartic: return 4.0 * lambda * x * x * x;
            case Kind::double_well: return 4.0 * well_a * x * x * x - 2.0 * well_b * x;
            case Kind::tabulated:
                throw InvalidParameter("tabulated potential has no analytic derivative");
        }
        return 0.0;
    }

    std::string name() const {
        switch (kind) {
            case Kind::free: return "free";
            case Kind::linear: return "linear";
            case Kind::harmonic: return "harmonic";
            case Kind::quartic: return "quartic";
            case Kind::double_well: return "double_well";
            case Kind::tabulated: return "tabulated";
        }
        return "?";
    }

private:
    static void require_finite(double v, const char* what) {
        if (!std::isfinite(v)) throw InvalidParameter(std::string("potential parameter ") + what + " not finite");
    }

    double eval_table(double x) const {
        const double dx = table_grid.dx();
        const double u = (x - table_grid.x_min) / dx;
        if (u <= 0.0) return table.front();
        if (u >= static_cast<double>(table.size() - 1)) return table.back();
        const std::size_t i = static_cast<std::size_t>(u);
        const double w = u - static_cast<double>(i);
        return (1.0 - w) * table[i] + w * table[i + 1];
    }
};

} // namespace moyal
