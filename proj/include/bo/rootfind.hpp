#pragma once

#include <utility>
#include <vector>

#include "bo/rational_data.hpp"

namespace bo {

/// Classified multiset of critical points of h'(.; t, x) = 0.
struct CriticalPointSet {
    std::vector<std::pair<double, int>> real_roots;  // (y, multiplicity), ascending in y
    std::vector<std::pair<cplx, int>> upper_roots;   // Im > 0 member of each conjugate pair
    double t = 0.0, x = 0.0;

    int total_multiplicity() const {
        int m = 0;
        for (const auto& [y, k] : real_roots) m += k;
        for (const auto& [z, k] : upper_roots) m += 2 * k;
        return m;
    }
};

/// Monic polynomial (ascending coefficients, degree 2N+1) whose roots are the
/// critical points of h: (z-x) prod_n (z-p_n)(z-p_n*) + 2t sum_n [...] after
/// clearing denominators of h' = 0.
std::vector<cplx> characteristic_poly(const RationalIC& ic, double t, double x);

/// All roots of a monic complex polynomial by Aberth simultaneous iteration.
/// Coefficients ascending; coeffs.back() must be nonzero.
std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs);

/// Roots of characteristic_poly, Newton-polished, clustered within
/// cluster_tol into multiple roots, snapped to the real axis, and separated
/// into real and upper-half-plane members.
CriticalPointSet all_critical_points(const RationalIC& ic, double t, double x,
                                     double cluster_tol = 1e-6);

/// Residual of the pole/critical-point sum relation:
/// | x + sum(p_n + p_n*) - sum over roots (with multiplicity, conjugates included) |.
double pole_sum_residual(const CriticalPointSet& set, const RationalIC& ic, double x);

} // namespace bo
