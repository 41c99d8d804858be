#pragma once

#include <complex>
#include <string>
#include <vector>

#include "bo/contour.hpp"

namespace bo {

/// Rational initial data u0(x) = sum_n [ c_n/(x - p_n) + conj(c_n)/(x - conj(p_n)) ].
/// Only the upper-half-plane poles p_n (Im p_n > 0) and their residues c_n are
/// stored; the conjugate half is implicit, which makes u0 real on the real axis
/// by construction.
struct RationalIC {
    std::vector<cplx> poles;    // p_n, Im > 0, pairwise distinct
    std::vector<cplx> residues; // c_n

    std::size_t size() const { return poles.size(); }

    /// Throws Error if the data violates the invariants (sizes, Im p_n > 0,
    /// duplicate poles, zero residues).
    void validate() const;

    /// Default clearance radius around pole n used by path checks.
    double pole_clearance(std::size_t n) const;

    /// Parse from a JSON string of the form
    /// {"poles": [[re,im],...], "residues": [[re,im],...]}.
    static RationalIC from_json(const std::string& text);
    std::string to_json() const;
};

/// u0(z); throws PoleProximity if z is within 1e-14-grade distance of a pole.
cplx eval_u0(const RationalIC& ic, cplx z);

/// d^order/dz^order u0(z), order in 0..4, evaluated exactly from the
/// partial-fraction form.
cplx eval_u0_deriv(const RationalIC& ic, cplx z, int order);

/// h'(z; t, x) = (z - x)/(2t) + u0(z). Throws NonpositiveTime if t <= 0.
cplx eval_hprime(const RationalIC& ic, double t, double x, cplx z);

/// Value of h(z; t, x) = (z-x)^2/(4t) + sum_n [c_n Log(z-p_n) + conj(c_n) Log(z-conj(p_n))]
/// with all logarithms on the principal branch.
cplx eval_h_principal(const RationalIC& ic, double t, double x, cplx z);

/// closed-form integral of u0 over a real segment [a, b] (no quadrature):
/// sum_n 2 Re( c_n [Log(b - p_n) - Log(a - p_n)] ), valid because y - p_n
/// stays in the lower half-plane for real y.
double integral_u0_real(const RationalIC& ic, double a, double b);

/// A phase value transported continuously along a path.
struct PhasePoint {
    cplx z;
    cplx h;
    /// Winding record (in turns) per upper pole, then per conjugate pole:
    /// size 2N, entry n is (arg(z - p_n) change since the path start)/(2 pi).
    std::vector<double> winding;
};

/// Continuous analytic continuation of h along straight segments.
/// Seeded with the principal-branch value of h at z0; each advance() step
/// moves along the straight chord to the next point, updating every log term
/// by the principal log of the ratio (exact for straight chords, which never
/// subtend an angle >= pi at any point off the segment).
class PhaseTracker {
public:
    PhaseTracker(const RationalIC& ic, double t, double x, cplx z0);

    /// Move along the straight segment from the current position to z1.
    /// Throws PathTooCloseToPole if the chord passes within `clearance` of a
    /// pole (clearance <= 0 means use the per-pole default).
    void advance(cplx z1, double clearance = 0.0);

    cplx z() const { return z_; }
    cplx h() const;
    /// Re(-i h)/eps convenience (magnitude exponent of exp(-i h / eps)).
    double exponent(double eps) const;
    PhasePoint point() const;

    const RationalIC& data() const { return *ic_; }
    double t() const { return t_; }
    double x() const { return x_; }

private:
    const RationalIC* ic_;
    double t_, x_;
    cplx z_;
    std::vector<cplx> logs_;  // continued log(z - q) per centre (poles then conjugates)
    std::vector<cplx> logs0_; // principal values at the seed (for winding records)
};

/// h values at every node of `path` (tails excluded), transported continuously
/// from the principal value at the first node.
std::vector<PhasePoint> accumulate_phase(const RationalIC& ic, double t, double x,
                                         const ContourPath& path);

} // namespace bo
