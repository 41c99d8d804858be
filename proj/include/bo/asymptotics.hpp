#pragma once

#include <functional>

#include "bo/caustic.hpp"
#include "bo/rational_data.hpp"

namespace bo {

/// Soliton-edge evaluation context: a soliton frame with its phase constant.
/// The constant is computed by two independent routes (finite sum over the
/// frame's upper roots, and a principal-value integral of the edge weight);
/// the two agree to quadrature accuracy wherever the frame is valid.
struct SolitonEdgeApprox {
    EdgeFrame frame;
    double lambda = 0.0;
    double eps = 0.0;
};

/// Harmonic-edge evaluation context with the phase correction constant.
struct HarmonicEdgeApprox {
    EdgeFrame frame;
    double Lambda = 0.0;
    double eps = 0.0;
};

/// Phase constant at the soliton edge (primary route): the imaginary part of
/// sum_j 1/(y_d - z_j) - sum_n 1/(y_d - p_n) over the frame's upper complex
/// critical points z_j and the upper poles p_n, with y_d the double root.
/// Throws FrameIncomplete if the frame is not a soliton frame or its root
/// inventory is inconsistent with the pole count.
double lambda_soliton(const RationalIC& ic, const EdgeFrame& frame);

/// Verification route for lambda: (1/2pi) int_0^inf [w(y_d + s) - w(y_d - s)]
/// ds/s with w = d/dy log g and g the positive edge weight below.
double lambda_soliton_pv(const RationalIC& ic, const EdgeFrame& frame, double tol = 1e-10);

/// Positive rational weight at an edge frame,
///   g(y) = (y + 2 t u0(y) - x_e) / ((y + 2 t u_simple - x_e)(y + 2 t u_double - x_e)^2),
/// evaluated through its equivalent root-product form
///   prod_j |y - z_j|^2 / prod_n |y - p_n|^2,
/// which is smooth and strictly positive on the real line.
double edge_weight_g(const RationalIC& ic, const EdgeFrame& frame, double y);

/// d/dy log g at real y (closed form from the root-product representation).
double edge_weight_dlog_g(const RationalIC& ic, const EdgeFrame& frame, double y);

/// Phase correction at the harmonic edge (primary route): argument sums
/// [sum_j arg(z_j - y_d) - sum_n arg(y_d - p_n)] minus the same expression
/// at the simple root. Throws FrameIncomplete on a non-harmonic frame.
double Lambda_harmonic(const RationalIC& ic, const EdgeFrame& frame);

/// Verification route for Lambda: difference of the two principal-value
/// integrals (1/2pi) int_0^inf ln(g(y + s)/g(y - s)) ds/s at y = y_double
/// and y = y_simple.
double Lambda_harmonic_pv(const RationalIC& ic, const EdgeFrame& frame, double tol = 1e-10);

/// The Lorentzian soliton profile L(xi; c) = 2c/(c^2 xi^2 + 1).
double soliton_profile_L(double xi, double c);

/// Soliton-edge approximation
///   u_simple + L(eps^{-1/3} k_s Ai(X_s)/Ai'(X_s) + 2 t lambda; c).
/// At a zero of Ai' the fraction diverges and the L term vanishes; that
/// limiting value is used there.
double soliton_edge_approx(const RationalIC& ic, const EdgeFrame& frame, double lambda,
                           double X_s, double eps);

/// Soliton-train form: u_simple + sum_{n=1}^{n_terms} L(eps^{-1/3} k_s (X_s - a_n)
/// + 2 t lambda; c) over the Airy zeros a_n. Truncating the series after
/// n_terms drops a tail bounded by C eps^{2/3} n_terms^{-1/3}: term n is
/// O(eps^{2/3} (X_s - a_n)^{-2}) and a_n ~ -n^{2/3}, so the tail sums like
/// integral n^{-4/3}.
double soliton_train_approx(const RationalIC& ic, const EdgeFrame& frame, double lambda,
                            double X_s, double eps, int n_terms);

/// Center offset of the n-th soliton:
///   x_0^{(n)} = x_s + eps^{2/3} k_s a_n - 2 eps t lambda.
double soliton_offset(const RationalIC& ic, const EdgeFrame& frame, double lambda,
                      double eps, int n);

/// Leading harmonic-edge phase
///   Theta = (u_2 - u_h)(x - x_h) + (u_2^2 - u_h^2) t + int_{y_h}^{y_2} u0(y) dy,
/// with the initial-data integral in closed form (log antiderivatives).
double harmonic_phase_Theta(const RationalIC& ic, const EdgeFrame& frame, double x);

/// Harmonic-edge approximation
///   u_2 + eps^{1/6} sqrt(2(u_2 - u_h)/(pi k_h)) cos(Theta/eps + phi) / |Ai(e^{i pi/3} X_h)|
/// with phi = arg Ai(e^{i pi/3} X_h) - 5 pi/12 + Lambda. The caller passes x
/// and X_h redundantly; they must satisfy X_h = (x - x_h)/(k_h eps^{2/3}) to
/// 1e-9 or InconsistentCoordinates is thrown.
double harmonic_edge_approx(const RationalIC& ic, const EdgeFrame& frame, double Lambda,
                            double x, double X_h, double eps);

/// Catastrophe-frame sample: the approximate value and the physical point the
/// scaled coordinates (T, X) map to.
struct CatastropheSample {
    double u = 0.0, t = 0.0, x = 0.0;
};

/// Gradient-catastrophe approximation: maps (T, X, eps) to
///   t = t_c + k^2 eps^{1/2} T,  x = x_c + 2 u_c (t - t_c) + k eps^{3/4} X
/// and evaluates u = u_c + eps^{1/4} U(T, X)/k.
CatastropheSample catastrophe_approx(const RationalIC& ic, const CatastrophePoint& cp,
                                     double T, double X, double eps);

/// One classical saddle-point term
///   e^{i phi} sqrt(2 pi eps/|hpp|) e^{-i h/eps} f
/// where phi is the steepest-descent passage angle determined by hpp, chosen
/// in (-pi/2, pi/2] (left-to-right traversal).
cplx saddle_term(cplx h_val, cplx hpp, cplx f_val, double eps);

/// Classical steepest-descent approximation of the axis contour integral
/// int e^{-i h/eps} f dz: saddle terms summed over the real critical points
/// of h(.; t, x). Requires every critical point simple and the real ones
/// (the crossed saddles) pairwise separated by >= 10 eps^{1/3}
/// (SaddleTooClose otherwise). Cross-check only.
cplx steepest_descent_reference(const RationalIC& ic, double t, double x, double eps,
                                const std::function<cplx(cplx)>& f);

} // namespace bo
