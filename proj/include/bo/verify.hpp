#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bo/caustic.hpp"
#include "bo/rational_data.hpp"
#include "bo/specfun.hpp"

namespace bo {

enum class Regime { soliton, harmonic, catastrophe, burgers };

Regime regime_from_string(const std::string& name);
std::string regime_to_string(Regime r);

/// Max-error table of a convergence experiment over a dyadic eps ladder.
struct ErrorTable {
    Regime regime = Regime::soliton;
    std::vector<double> eps_values;
    std::vector<double> max_errors;
    std::vector<double> ratios; ///< ratios[i] = max_errors[i]/max_errors[i+1]
    std::vector<double> runtime_s;

    /// Derived column is always rebuilt from max_errors.
    void recompute_ratios();
    /// Ratio of the first to the last max error (overall shrink factor).
    double first_to_last_ratio() const;
    std::string to_csv() const;
};

/// Max |exact - approximation| on a window in the regime's scaled coordinate,
/// for each eps in eps_list (must be decreasing).
///  - soliton: t = t_or_T, window in X_s, compares against the edge formula;
///  - harmonic: t = t_or_T, window in X_h;
///  - catastrophe: T = t_or_T, window in X, compares the rescaled error
///    |k eps^{-1/4}(u - u_c) - U(T, X)|;
///  - burgers: t = t_or_T (pre-catastrophe), window in x, compares against
///    the characteristic solution.
ErrorTable convergence_experiment(const RationalIC& ic, Regime regime, double t_or_T,
                                  std::pair<double, double> window,
                                  const std::vector<double>& eps_list, int grid_points = 121);

/// Residual of the nonlocal string equation
///   X - 2 U T + 4 U^3 - 6 U |D_X|U - 3 |D_X|U^2 - 4 U_XX
/// at (T, X), with |D_X|g = -(1/pi) PV int g'(y) dy/(y - X). The principal
/// value runs over [-L_cut, L_cut] on exact integrand values; outside, the
/// integrands are replaced by their algebraic large-|Y| substitutions
/// U_X ~ -(1/12)(|Y|/4)^{-2/3} and 2 U U_X ~ sgn(Y)(1/6)(|Y|/4)^{-1/3} and
/// integrated in closed series form. Requires L_cut >= |X| + 2.
double string_equation_residual(double T, double X, double L_cut = 100.0, double tol = 1e-7);

/// Residuals of the exact coupled system satisfied by
/// Lambda = 2 i d/dX log tau, U = Re Lambda, V = Im Lambda:
///   r1 = X + U T - U^3/2 + (3/2) U V^2 + 3 (U V)_X + 2 U_XX
///   r2 = V T - (3/2) U^2 V + V^3/2 - 3 U U_X + 3 V V_X + 2 V_XX.
std::pair<double, double> coupled_system_residual(double T, double X);

/// Product formula Delta(w, p) for the two Cauchy-type determinants below;
/// w has N+1 entries, p has N. Throws DegenerateInput on size mismatch or an
/// exact w_i = p_j collision.
cplx cauchy_delta(const std::vector<cplx>& w, const std::vector<cplx>& p);

/// Relative residuals of the two determinant identities: the numerical
/// determinant with first column all ones (r0) resp. w_i (r1) against
/// Delta and Delta * (sum w - sum p).
struct CauchyResiduals {
    double r0 = 0.0, r1 = 0.0;
};
CauchyResiduals cauchy_identity_check(const std::vector<cplx>& w, const std::vector<cplx>& p);

/// Aggregate identity-suite report. Scan data is evidence, not pass/fail.
struct VerifyReport {
    unsigned seed = 0;
    double pole_sum_max = 0.0;          ///< 100 random data/point draws
    double lambda_dual_max = 0.0;       ///< 20 soliton frames, two routes
    double Lambda_dual_max = 0.0;       ///< 20 harmonic frames, two routes
    double dispersion_max = 0.0;        ///< -omega + 2 u_2 kappa - kappa|kappa|
    double airy_V_residual = 0.0;
    double quartic_wronskian_residual = 0.0;
    double tau_ode_max = 0.0;           ///< 25-point grid, normalized
    double tau_origin_residual = 0.0;   ///< against sqrt(2) Gamma(5/4) e^{-i pi/8}
    double cauchy_max = 0.0;            ///< battery N = 1..5
    double contour_invariance_max = 0.0;
    TauScanResult scan;                 ///< evidence-grade nonvanishing data

    bool passed() const;
    std::string to_json() const;
};

/// Runs the full identity suite with the given RNG seed (logged in the
/// report; every randomized check is reproducible from it).
VerifyReport full_verify(unsigned seed = 12345);

} // namespace bo
