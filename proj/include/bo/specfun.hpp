#pragma once

#include <array>
#include <complex>
#include <utility>
#include <vector>

#include "bo/contour.hpp"

namespace bo {

/// Pearcey-type integral value with its X-derivative bundle; every consumer
/// of tau receives the derivatives so the third-order ODE residual is always
/// checkable.
struct PearceyEval {
    double T = 0.0, X = 0.0;
    cplx tau, tau_X, tau_XX, tau_XXX;
    /// The stored values are the true ones divided by e^{log_scale}.
    /// log_scale is 0 whenever the true values fit comfortably in doubles;
    /// it is nonzero only in the far regime where |tau| itself would
    /// over- or underflow. All downstream consumers use ratios or the
    /// (linear) ODE, so the scale cancels.
    double log_scale = 0.0;

    /// |4 tau_XXX + 2 T tau_X - i X tau| on the scaled values (scale cancels
    /// in the linear ODE).
    double ode_residual() const;
    /// log |tau| including the scale.
    double log_abs_tau() const;
};

/// Ai(z) and Ai'(z) for complex z, |z| <= 50: Maclaurin series for |z| <= 4.5,
/// saddle-routed contour integral otherwise. Throws DomainExceeded beyond 50.
std::pair<cplx, cplx> airy(cplx z);

namespace detail {
/// The two evaluation branches, exposed for overlap self-tests.
std::pair<cplx, cplx> airy_series(cplx z);
std::pair<cplx, cplx> airy_contour(cplx z);
} // namespace detail

/// n-th zero of Ai on the negative axis, a_1 > a_2 > ...; n in 1..64 served
/// from an immutable memoized table.
double airy_zero(int n);

/// tau(T, X): integral of e^{i(zeta^4 - T zeta^2 - X zeta)} from
/// infinity*e^{-7 i pi/8} to infinity*e^{-3 i pi/8}, with first three
/// X-derivatives. depth sets the quadrature tolerance 10^{-depth}.
/// Documented domain |T|, |X| <= 50; the far regime is served through the
/// scaled representation (log_scale) up to a hard limit of 1500.
PearceyEval pearcey_tau(double T, double X, int depth = 10);

/// Universal catastrophe profile U = -2 Im(tau_X / tau) with its first two
/// X-derivatives. Throws ZeroDivisor if |tau| <= 1e-12.
struct ProfileU {
    double U = 0.0, U_X = 0.0, U_XX = 0.0;
};
ProfileU profile_U(double T, double X, int depth = 10);

/// Grid scan of |tau| with local refinement around the smallest values.
struct TauScanResult {
    double min_abs = 0.0;
    double argmin_T = 0.0, argmin_X = 0.0;
    double min_abs_neg_X = 0.0; ///< minimum restricted to X < 0
    double min_abs_pos_X = 0.0; ///< minimum restricted to X > 0
};
TauScanResult tau_min_scan(double T_min, double T_max, double X_min, double X_max, int grid,
                           int depth = 6);

/// Self-tests of the two Wronskian identities; residuals only, no asserts.
struct WronskianReport {
    double airy_V_max_residual = 0.0;    ///< max |V(X) - e^{7 i pi/12}/(2 pi)| over 10 X
    double quartic_max_residual = 0.0;   ///< max Prop-style Wronskian mismatch over 5 (alpha, beta)
};
WronskianReport wronskian_checks();

/// Generic quartic-phase contour integral used by the Pearcey/Wronskian
/// machinery: moments m_j = int zeta^j e^{i(zeta^4 + a2 zeta^2 + a1 zeta)}
/// for j = 0..3 along the two-ray path junction -> infinity at angles
/// theta_in (incoming) and theta_out (outgoing).
std::array<cplx, 4> quartic_contour(cplx a2, cplx a1, double theta_in, double theta_out,
                                    cplx junction, double tol);

} // namespace bo
