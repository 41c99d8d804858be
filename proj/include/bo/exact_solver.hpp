#pragma once

#include <vector>

#include "bo/contour.hpp"
#include "bo/rational_data.hpp"

namespace bo {

/// Family of integration contours for the determinant formula.
/// W[0] runs from infinity*e^{3 i pi/4} to infinity*e^{-i pi/4}; W[n] (n >= 1)
/// is a loop that begins and ends at infinity*e^{3 i pi/4} and encircles the
/// pole p_n once positively, and no other pole.
struct ContourFamily {
    std::vector<ContourPath> W;
};

/// One evaluated solution sample.
struct SolutionSample {
    double t = 0.0, x = 0.0, eps = 0.0;
    double u = 0.0;
    double cond_estimate = 0.0; ///< Hadamard bound of the scaled B over |det B|
};

/// Scaled matrices of contour integrals: row j uses contour W[j-1]; column 1
/// of A integrates u0(z) e^{-i h/eps}, column 1 of B integrates e^{-i h/eps},
/// and columns k >= 2 of both integrate e^{-i h/eps}/(z - p_{k-1}). Each row
/// of A and B shares one scale factor (so the determinant ratio is exact);
/// the removed factor is recorded as row_log_scale (natural log).
struct AssembledSystem {
    std::vector<std::vector<cplx>> A, B;
    std::vector<double> row_log_scale;
};

/// Default contour construction for (t, x): W[0] descends from
/// infinity*e^{3 i pi/4} onto the real axis left of every real critical
/// point, runs along the axis past the right-most one, and exits at
/// -i pi/4; W[n] is a hairpin from infinity*e^{3 i pi/4} around p_n with
/// clearance. Tail decay and windings are verified numerically; failing
/// configurations are re-steered up to 3 times before NoAdmissibleContour.
ContourFamily build_contours(const RationalIC& ic, double t, double x, double eps);

/// Contour integrals of the family assembled into the two matrices.
/// Throws QuadratureFailure when a row integral cannot be resolved.
AssembledSystem assemble_matrices(const RationalIC& ic, double t, double x, double eps,
                                  const ContourFamily& fam, double tol = 1e-12);

/// Determinant of a small dense complex matrix by partially pivoted
/// elimination (sizes here are at most 11).
cplx det_small(std::vector<std::vector<cplx>> M);

/// u = 2 Re(det A/det B) evaluated on a caller-supplied family (used by the
/// contour-invariance checks). Throws DenominatorTiny when |det B| falls
/// below 1e-12 of its Hadamard bound.
SolutionSample solve_with_family(const RationalIC& ic, double t, double x, double eps,
                                 const ContourFamily& fam);

/// Full evaluation at one point. Preconditions: t > 0, eps >= 2^{-10}
/// (documented double-precision floor, DomainExceeded below), and
/// -i c_n not within 1e-12 of eps*N for any n (ResonantEpsilon).
SolutionSample solve_point(const RationalIC& ic, double t, double x, double eps);

/// Deterministic parallel map of solve_point over xs; results in input
/// order, bitwise identical to serial evaluation. Per-point failures are
/// aggregated (with indices) into one Error.
std::vector<SolutionSample> solve_grid(const RationalIC& ic, double t,
                                       const std::vector<double>& xs, double eps);

/// Caps the number of worker threads solve_grid may use (0 restores the
/// default: hardware concurrency, at most 16). Takes effect on the next call.
void set_solver_threads(unsigned n);

} // namespace bo
