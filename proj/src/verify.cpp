#include "bo/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bo/asymptotics.hpp"
#include "bo/errors.hpp"
#include "bo/exact_solver.hpp"
#include "bo/quadrature.hpp"
#include "bo/rootfind.hpp"

namespace bo {

namespace {

const double kPi = 3.141592653589793238462643383279502884;

double now_s() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

} // namespace

Regime regime_from_string(const std::string& name) {
    if (name == "soliton") return Regime::soliton;
    if (name == "harmonic") return Regime::harmonic;
    if (name == "catastrophe") return Regime::catastrophe;
    if (name == "burgers") return Regime::burgers;
    throw DomainExceeded("unknown regime: " + name);
}

std::string regime_to_string(Regime r) {
    switch (r) {
    case Regime::soliton: return "soliton";
    case Regime::harmonic: return "harmonic";
    case Regime::catastrophe: return "catastrophe";
    case Regime::burgers: return "burgers";
    }
    return "?";
}

void ErrorTable::recompute_ratios() {
    ratios.clear();
    for (std::size_t i = 0; i + 1 < max_errors.size(); ++i)
        ratios.push_back(max_errors[i] / max_errors[i + 1]);
}

double ErrorTable::first_to_last_ratio() const {
    if (max_errors.size() < 2) throw DomainExceeded("need at least two eps values");
    return max_errors.front() / max_errors.back();
}

std::string ErrorTable::to_csv() const {
    std::ostringstream os;
    os << "regime,eps,max_error,ratio_to_next,runtime_s\n";
    os.precision(12);
    for (std::size_t i = 0; i < eps_values.size(); ++i) {
        os << regime_to_string(regime) << ',' << eps_values[i] << ',' << max_errors[i] << ',';
        if (i < ratios.size()) os << ratios[i];
        os << ',' << runtime_s[i] << '\n';
    }
    return os.str();
}

ErrorTable convergence_experiment(const RationalIC& ic, Regime regime, double t_or_T,
                                  std::pair<double, double> window,
                                  const std::vector<double>& eps_list, int grid_points) {
    if (eps_list.size() < 2) throw DomainExceeded("eps_list needs at least two values");
    for (std::size_t i = 0; i + 1 < eps_list.size(); ++i)
        if (!(eps_list[i] > eps_list[i + 1]))
            throw DomainExceeded("eps_list must be decreasing");
    if (grid_points < 2) throw DomainExceeded("grid_points must be at least 2");

    ErrorTable table;
    table.regime = regime;
    std::vector<double> coords(grid_points);
    for (int i = 0; i < grid_points; ++i)
        coords[i] = window.first + (window.second - window.first) * i / (grid_points - 1);

    // regime-specific fixed data, computed once and shared across eps
    EdgeFrame fr;
    double lam = 0.0;
    CatastrophePoint cp;
    std::vector<double> U_of_X;
    std::vector<double> burgers_ref;
    if (regime == Regime::soliton || regime == Regime::harmonic) {
        fr = edge_frame(ic, t_or_T,
                        regime == Regime::soliton ? EdgeKind::soliton : EdgeKind::harmonic);
        lam = regime == Regime::soliton ? lambda_soliton(ic, fr) : Lambda_harmonic(ic, fr);
    } else if (regime == Regime::catastrophe) {
        cp = find_catastrophe(ic);
        for (double X : coords) U_of_X.push_back(profile_U(t_or_T, X).U);
    } else {
        cp = find_catastrophe(ic);
        if (!(t_or_T < cp.t_c)) throw DomainExceeded("burgers regime requires t < t_c");
        for (double x : coords) {
            auto b = burgers_branches(ic, t_or_T, x);
            if (b.size() != 1) throw OnCaustic("multivalued region in burgers regime");
            burgers_ref.push_back(b[0]);
        }
    }

    for (double eps : eps_list) {
        const double t0 = now_s();
        double worst = 0.0;
        try {
            if (regime == Regime::soliton || regime == Regime::harmonic) {
                std::vector<double> xs;
                const double scale = fr.k_edge * std::pow(eps, 2.0 / 3.0);
                for (double X : coords) xs.push_back(fr.x_edge + scale * X);
                auto grid = solve_grid(ic, t_or_T, xs, eps);
                for (int i = 0; i < grid_points; ++i) {
                    const double approx =
                        regime == Regime::soliton
                            ? soliton_edge_approx(ic, fr, lam, coords[i], eps)
                            : harmonic_edge_approx(ic, fr, lam, xs[i], coords[i], eps);
                    worst = std::max(worst, std::abs(grid[i].u - approx));
                }
            } else if (regime == Regime::catastrophe) {
                const double t = cp.t_c + cp.k * cp.k * std::sqrt(eps) * t_or_T;
                std::vector<double> xs;
                for (double X : coords)
                    xs.push_back(cp.x_c + 2.0 * cp.u_c * (t - cp.t_c) +
                                 cp.k * std::pow(eps, 0.75) * X);
                auto grid = solve_grid(ic, t, xs, eps);
                for (int i = 0; i < grid_points; ++i) {
                    const double rescaled =
                        cp.k * std::pow(eps, -0.25) * (grid[i].u - cp.u_c);
                    worst = std::max(worst, std::abs(rescaled - U_of_X[i]));
                }
            } else {
                auto grid = solve_grid(ic, t_or_T, coords, eps);
                for (int i = 0; i < grid_points; ++i)
                    worst = std::max(worst, std::abs(grid[i].u - burgers_ref[i]));
            }
        } catch (const Error& e) {
            throw Error(std::string("convergence_experiment at eps=") + std::to_string(eps) +
                        ": " + e.what());
        }
        table.eps_values.push_back(eps);
        table.max_errors.push_back(worst);
        table.runtime_s.push_back(now_s() - t0);
    }
    table.recompute_ratios();
    return table;
}

namespace {

/// Memoized U-profile samples along a fixed-T line (quadrature nodes repeat
/// across the several integrals of one residual evaluation).
struct UCache {
    double T;
    int depth;
    std::map<double, ProfileU> vals;
    const ProfileU& at(double y) {
        auto it = vals.find(y);
        if (it == vals.end()) it = vals.emplace(y, profile_U(T, y, depth)).first;
        return it->second;
    }
};

/// Closed series for the tail part of PV int f(y)/(y - X) dy over
/// |y| > L with f(y) = c |y|^{-alpha} (even_f) or c sgn(y) |y|^{-alpha}:
/// expanding 1/(y -+ X) in powers of X/y gives
///   2 c sum_{k odd (even_f) / k even} X^k L^{-alpha-k} / (alpha + k).
double hilbert_tail_series(double c, double alpha, bool even_f, double X, double L) {
    double sum = 0.0;
    const double q = X / L;
    double Xk = even_f ? q : 1.0; // (X/L)^k starting at the first used k
    for (int k = even_f ? 1 : 0; k < 400; k += 2) {
        const double term = Xk / (alpha + k);
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum) + 1e-300) break;
        Xk *= q * q;
    }
    return 2.0 * c * std::pow(L, -alpha) * sum;
}

} // namespace

double string_equation_residual(double T, double X, double L_cut, double tol) {
    if (!(L_cut >= std::abs(X) + 2.0))
        throw DomainExceeded("string_equation_residual requires L_cut >= |X| + 2");
    UCache cache{T, 8, {}};
    auto f_ux = [&](double y) { return cache.at(y).U_X; };
    auto f_uux = [&](double y) {
        const ProfileU& p = cache.at(y);
        return 2.0 * p.U * p.U_X;
    };
    auto hilbert = [&](const std::function<double(double)>& f, double c_tail, double alpha,
                       bool even_f) {
        const double w = 1.0;
        auto g = [&](double y) { return f(y) / (y - X); };
        double total = principal_value(g, X, w, tol);
        total += integrate_real(g, -L_cut, X - w, tol);
        total += integrate_real(g, X + w, L_cut, tol);
        total += hilbert_tail_series(c_tail, alpha, even_f, X, L_cut);
        return -total / kPi;
    };
    const double HU = hilbert(f_ux, -std::pow(4.0, 2.0 / 3.0) / 12.0, 2.0 / 3.0, true);
    const double HU2 = hilbert(f_uux, std::pow(4.0, 1.0 / 3.0) / 6.0, 1.0 / 3.0, false);
    const ProfileU& p0 = cache.at(X);
    return X - 2.0 * p0.U * T + 4.0 * p0.U * p0.U * p0.U - 6.0 * p0.U * HU - 3.0 * HU2 -
           4.0 * p0.U_XX;
}

std::pair<double, double> coupled_system_residual(double T, double X) {
    const PearceyEval ev = pearcey_tau(T, X);
    const double bundle = std::max({std::abs(ev.tau), std::abs(ev.tau_X),
                                    std::abs(ev.tau_XX), std::abs(ev.tau_XXX)});
    if (std::abs(ev.tau) <= 1e-12 * bundle)
        throw ZeroDivisor("coupled_system_residual: |tau| vanishes at this (T, X)");
    const cplx I(0.0, 1.0);
    const cplx r1 = ev.tau_X / ev.tau;
    const cplx r2 = ev.tau_XX / ev.tau;
    const cplx r3 = ev.tau_XXX / ev.tau;
    const cplx Lam = 2.0 * I * r1;
    const cplx Lam_X = 2.0 * I * (r2 - r1 * r1);
    const cplx Lam_XX = 2.0 * I * (r3 - 3.0 * r2 * r1 + 2.0 * r1 * r1 * r1);
    const double U = Lam.real(), V = Lam.imag();
    const double U_X = Lam_X.real(), V_X = Lam_X.imag();
    const double U_XX = Lam_XX.real(), V_XX = Lam_XX.imag();
    const double e1 = X + U * T - 0.5 * U * U * U + 1.5 * U * V * V +
                      3.0 * (U_X * V + U * V_X) + 2.0 * U_XX;
    const double e2 = V * T - 1.5 * U * U * V + 0.5 * V * V * V - 3.0 * U * U_X +
                      3.0 * V * V_X + 2.0 * V_XX;
    return {e1, e2};
}

cplx cauchy_delta(const std::vector<cplx>& w, const std::vector<cplx>& p) {
    const std::size_t N = p.size();
    if (w.size() != N + 1) throw DegenerateInput("cauchy_delta: need |w| = |p| + 1");
    for (const cplx& wi : w)
        for (const cplx& pj : p)
            if (wi == pj) throw DegenerateInput("cauchy_delta: w_i equals p_j");
    cplx num(1.0, 0.0), den(1.0, 0.0);
    // index convention: w_0..w_N, p_1..p_N map to w[i], p[j-1]
    for (std::size_t i = 2; i <= N; ++i)
        for (std::size_t j = 1; j < i; ++j)
            num *= (w[i] - w[j]) * (p[j - 1] - p[i - 1]);
    for (std::size_t i = 0; i <= N; ++i)
        for (std::size_t j = 1; j <= N; ++j) den *= w[i] - p[j - 1];
    cplx delta = num / den;
    for (std::size_t i = 1; i <= N; ++i) delta *= w[i] - w[0];
    if (N % 2 == 1) delta = -delta;
    return delta;
}

CauchyResiduals cauchy_identity_check(const std::vector<cplx>& w, const std::vector<cplx>& p) {
    const std::size_t N = p.size();
    const cplx delta = cauchy_delta(w, p);
    std::vector<std::vector<cplx>> M0(N + 1, std::vector<cplx>(N + 1));
    auto M1 = M0;
    for (std::size_t i = 0; i <= N; ++i) {
        M0[i][0] = cplx(1.0, 0.0);
        M1[i][0] = w[i];
        for (std::size_t j = 1; j <= N; ++j) M0[i][j] = M1[i][j] = 1.0 / (w[i] - p[j - 1]);
    }
    cplx sums(0.0, 0.0);
    for (const cplx& wi : w) sums += wi;
    for (const cplx& pj : p) sums -= pj;
    const double scale0 = std::max(std::abs(delta), 1e-300);
    const double scale1 = std::max(std::abs(delta * sums), scale0);
    CauchyResiduals out;
    out.r0 = std::abs(det_small(M0) - delta) / scale0;
    out.r1 = std::abs(det_small(M1) - delta * sums) / scale1;
    return out;
}

bool VerifyReport::passed() const {
    return pole_sum_max <= 1e-9 && lambda_dual_max <= 1e-8 && Lambda_dual_max <= 1e-8 &&
           dispersion_max <= 1e-12 && airy_V_residual <= 1e-9 &&
           quartic_wronskian_residual <= 1e-7 && tau_ode_max <= 1e-8 &&
           tau_origin_residual <= 1e-9 && cauchy_max <= 1e-9 &&
           contour_invariance_max <= 1e-8;
}

std::string VerifyReport::to_json() const {
    nlohmann::json j;
    j["seed"] = seed;
    j["pole_sum_max"] = pole_sum_max;
    j["lambda_dual_max"] = lambda_dual_max;
    j["Lambda_dual_max"] = Lambda_dual_max;
    j["dispersion_max"] = dispersion_max;
    j["airy_V_residual"] = airy_V_residual;
    j["quartic_wronskian_residual"] = quartic_wronskian_residual;
    j["tau_ode_max"] = tau_ode_max;
    j["tau_origin_residual"] = tau_origin_residual;
    j["cauchy_max"] = cauchy_max;
    j["contour_invariance_max"] = contour_invariance_max;
    j["tau_scan"] = {{"min_abs", scan.min_abs},
                     {"argmin_T", scan.argmin_T},
                     {"argmin_X", scan.argmin_X},
                     {"min_abs_neg_X", scan.min_abs_neg_X},
                     {"min_abs_pos_X", scan.min_abs_pos_X}};
    j["passed"] = passed();
    return j.dump(2);
}

namespace {

RationalIC random_ic(std::mt19937& rng) {
    std::uniform_int_distribution<int> nd(1, 4);
    std::uniform_real_distribution<double> re(-2.0, 2.0), im(0.4, 2.0), mag(0.3, 1.5),
        ang(0.0, 2.0 * kPi);
    for (;;) {
        const int N = nd(rng);
        RationalIC ic;
        for (int n = 0; n < N; ++n) {
            ic.poles.emplace_back(re(rng), im(rng));
            ic.residues.push_back(std::polar(mag(rng), ang(rng)));
        }
        bool ok = true;
        for (int a = 0; a < N && ok; ++a)
            for (int b = a + 1; b < N; ++b)
                if (std::abs(ic.poles[a] - ic.poles[b]) < 0.2) ok = false;
        if (ok) return ic;
    }
}

} // namespace

VerifyReport full_verify(unsigned seed) {
    VerifyReport rep;
    rep.seed = seed;
    std::mt19937 rng(seed);

    // pole/critical-point sum relation on random data and points
    {
        std::uniform_real_distribution<double> td(0.1, 3.0), xd(-5.0, 5.0);
        for (int i = 0; i < 100; ++i) {
            const RationalIC ic = random_ic(rng);
            const double t = td(rng), x = xd(rng);
            const auto set = all_critical_points(ic, t, x);
            rep.pole_sum_max = std::max(rep.pole_sum_max, pole_sum_residual(set, ic, x));
        }
    }

    // dual-formula phase constants and the dispersion identity on edge frames
    {
        const RationalIC lor{{cplx(0.0, 1.0)}, {cplx(0.0, -1.0)}};
        const RationalIC two{{cplx(0.0, 1.0), cplx(3.0, 2.0)},
                             {cplx(0.0, -1.0), cplx(0.1, -0.6)}};
        for (const RationalIC* ic : {&lor, &two}) {
            const double tc = find_catastrophe(*ic).t_c;
            for (int i = 0; i < 10; ++i) {
                const double t = tc * (1.15 + 0.12 * i);
                auto fs = edge_frame(*ic, t, EdgeKind::soliton);
                rep.lambda_dual_max =
                    std::max(rep.lambda_dual_max,
                             std::abs(lambda_soliton(*ic, fs) - lambda_soliton_pv(*ic, fs)));
                auto fh = edge_frame(*ic, t, EdgeKind::harmonic);
                rep.Lambda_dual_max =
                    std::max(rep.Lambda_dual_max,
                             std::abs(Lambda_harmonic(*ic, fh) - Lambda_harmonic_pv(*ic, fh)));
                rep.dispersion_max =
                    std::max(rep.dispersion_max,
                             std::abs(-fh.omega + 2.0 * fh.u_simple * fh.kappa -
                                      fh.kappa * std::abs(fh.kappa)));
            }
        }
    }

    // special-function self-tests
    {
        const auto wr = wronskian_checks();
        rep.airy_V_residual = wr.airy_V_max_residual;
        rep.quartic_wronskian_residual = wr.quartic_max_residual;
        for (double T : {-2.0, -1.0, 0.0, 1.0, 2.0})
            for (double X : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
                const auto ev = pearcey_tau(T, X);
                rep.tau_ode_max = std::max(rep.tau_ode_max,
                                           ev.ode_residual() / (1.0 + std::abs(ev.tau)));
            }
        const cplx origin_expect =
            std::sqrt(2.0) * std::tgamma(1.25) * std::polar(1.0, -kPi / 8.0);
        rep.tau_origin_residual = std::abs(pearcey_tau(0.0, 0.0).tau - origin_expect);
        rep.scan = tau_min_scan(-2.0, 2.0, -2.0, 2.0, 21, 6);
    }

    // Cauchy determinant battery
    {
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (int N = 1; N <= 5; ++N)
            for (int rep_i = 0; rep_i < 4; ++rep_i) {
                std::vector<cplx> w, p;
                for (int i = 0; i <= N; ++i) w.emplace_back(u(rng), u(rng));
                for (int i = 0; i < N; ++i) p.emplace_back(u(rng), u(rng) + 2.5);
                const auto r = cauchy_identity_check(w, p);
                rep.cauchy_max = std::max({rep.cauchy_max, r.r0, r.r1});
            }
    }

    // contour-invariance probe of the determinant ratio
    {
        const RationalIC lor{{cplx(0.0, 1.0)}, {cplx(0.0, -1.0)}};
        const double t = 2.0, x = 3.0, eps = 1.0 / 64.0;
        auto fam = build_contours(lor, t, x, eps);
        const auto base = solve_with_family(lor, t, x, eps, fam);
        ContourFamily pert = fam;
        int sgn = 1;
        for (auto& path : pert.W)
            for (std::size_t i = 1; i + 1 < path.nodes.size(); ++i) {
                path.nodes[i] += cplx(0.02 * sgn, 0.08 * sgn);
                sgn = -sgn;
            }
        const auto moved = solve_with_family(lor, t, x, eps, pert);
        rep.contour_invariance_max = std::abs(moved.u - base.u);
    }

    return rep;
}

} // namespace bo
