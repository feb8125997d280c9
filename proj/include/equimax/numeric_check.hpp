#pragma once

// Floating-point verification/falsification of the equidistribution
// identity
//
//   max{X_1..X_{n-1}} + X_n/n  =d=  max{X_1..X_n}
//
// in cdf form: P(lhs <= x) = integral_0^x n f(ny) F(x-y)^(n-1) dy, compared
// against F(x)^n on a grid. The cdf form costs one quadrature per grid point
// but avoids evaluating the density of the maximum near 0, where F^(n-2)
// underflows. A discrepancy clearly above the quadrature budget is a genuine
// distributional inequality, not noise; the reporting threshold is
// 100 * tolerance.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "equimax/density.hpp"
#include "equimax/quadrature.hpp"
#include "equimax/report.hpp"

namespace equimax {

struct LhsCdfResult {
    double value = 0.0;
    bool converged = true;
};

inline LhsCdfResult lhs_cdf_result(const DensityModel& model, int n, double x, double tol) {
    if (n < 2) {
        throw std::domain_error("lhs_cdf: requires n >= 2");
    }
    if (!(x >= 0.0)) {
        throw std::domain_error("lhs_cdf: x must be >= 0");
    }
    if (x == 0.0) {
        return {0.0, true};
    }
    const double dn = static_cast<double>(n);
    const auto integrand = [&](double y) {
        const double fy = model.pdf(dn * y);
        if (fy == 0.0) {
            return 0.0;  // skip the cdf factor where the density vanishes
        }
        return dn * fy * std::pow(model.cdf(x - y), n - 1);
    };
    const QuadratureResult q = integrate(integrand, 0.0, x, tol);
    return {q.value, q.converged};
}

// cdf of max{X_1..X_{n-1}} + X_n/n at x, to quadrature tolerance `tol`.
inline double lhs_cdf(const DensityModel& model, int n, double x, double tol) {
    return lhs_cdf_result(model, n, x, tol).value;
}

struct DiscrepancyCurve {
    DensityModel model;
    int n = 2;
    std::vector<double> grid;
    std::vector<double> lhs_cdf;
    std::vector<double> rhs_cdf;
    std::vector<std::size_t> quadrature_failures;  // grid indices that hit the depth limit
    double max_abs_discrepancy = 0.0;
    double quadrature_tolerance = 0.0;

    // A discrepancy this far above the quadrature budget cannot be noise.
    bool identity_falsified() const { return max_abs_discrepancy > 100.0 * quadrature_tolerance; }
};

// Default grid end: the 0.999 quantile of max{X_1..X_n}, i.e. F^{-1}(0.999^(1/n)).
inline double default_xmax(const DensityModel& model, int n) {
    return model.quantile(std::pow(0.999, 1.0 / static_cast<double>(n)));
}

inline DiscrepancyCurve discrepancy_curve(const DensityModel& model, int n, double x_max,
                                          std::size_t grid_points, double tol) {
    if (n < 2) {
        throw std::domain_error("discrepancy_curve: requires n >= 2");
    }
    if (grid_points < 2) {
        throw std::domain_error("discrepancy_curve: needs at least 2 grid points");
    }
    if (!(x_max > 0.0)) {
        throw std::domain_error("discrepancy_curve: x_max must be positive");
    }
    DiscrepancyCurve curve{model, n, {}, {}, {}, {}, 0.0, tol};
    curve.grid.reserve(grid_points);
    curve.lhs_cdf.reserve(grid_points);
    curve.rhs_cdf.reserve(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double x = x_max * static_cast<double>(i) / static_cast<double>(grid_points - 1);
        const LhsCdfResult lhs = lhs_cdf_result(model, n, x, tol);
        const double rhs = std::pow(model.cdf(x), n);
        curve.grid.push_back(x);
        curve.lhs_cdf.push_back(lhs.value);
        curve.rhs_cdf.push_back(rhs);
        if (!lhs.converged) {
            curve.quadrature_failures.push_back(i);
        }
        curve.max_abs_discrepancy = std::max(curve.max_abs_discrepancy, std::abs(lhs.value - rhs));
    }
    return curve;
}

// CSV export: x, lhs_cdf, rhs_cdf, discrepancy. Header row mandatory.
inline void write_curve_csv(const DiscrepancyCurve& curve, std::ostream& os) {
    os << "x,lhs_cdf,rhs_cdf,discrepancy\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        os << format_double17(curve.grid[i]) << ',' << format_double17(curve.lhs_cdf[i]) << ','
           << format_double17(curve.rhs_cdf[i]) << ','
           << format_double17(curve.lhs_cdf[i] - curve.rhs_cdf[i]) << '\n';
    }
}

}  // namespace equimax
