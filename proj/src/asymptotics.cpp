#include "bo/asymptotics.hpp"

#include <cmath>
#include <complex>

#include "bo/errors.hpp"
#include "bo/quadrature.hpp"
#include "bo/rootfind.hpp"
#include "bo/specfun.hpp"

namespace bo {

namespace {

const double kPi = 3.141592653589793238462643383279502884;

void check_frame(const RationalIC& ic, const EdgeFrame& fr, EdgeKind want) {
    if (fr.kind != want)
        throw FrameIncomplete("edge frame has the wrong kind for this operation");
    if (!(fr.t > 0.0) || !(fr.k_edge > 0.0))
        throw FrameIncomplete("edge frame missing t or k_edge");
    // 2N+1 critical points = double root (x2) + simple root + N-1 conjugate pairs
    if (fr.upper_roots.size() + 1 != ic.size())
        throw FrameIncomplete("edge frame upper-root inventory does not match the pole count");
}

/// (1/2pi) int_0^inf [f(y0 + s) - f(y0 - s)] ds/s for odd-part integrands
/// decaying like 1/s^2; the difference quotient is smooth at s = 0.
double halfline_odd_integral(const std::function<double(double)>& f, double y0, double span,
                             double tol) {
    auto phi = [&](double s) {
        const double ss = std::max(s, 1e-12);
        return (f(y0 + ss) - f(y0 - ss)) / ss;
    };
    const double S = std::max(10.0, 4.0 * span);
    const double core = integrate_real(phi, 0.0, S, tol);
    const double tail = integrate_real_tail_log(phi, S, tol);
    return (core + tail) / (2.0 * kPi);
}

double geometry_span(const RationalIC& ic, const EdgeFrame& fr) {
    double span = 1.0 + std::abs(fr.y_double) + std::abs(fr.y_simple);
    for (const cplx& p : ic.poles) span = std::max(span, 2.0 * std::abs(p));
    for (const cplx& z : fr.upper_roots) span = std::max(span, 2.0 * std::abs(z));
    return span;
}

} // namespace

double lambda_soliton(const RationalIC& ic, const EdgeFrame& frame) {
    check_frame(ic, frame, EdgeKind::soliton);
    cplx sum(0.0, 0.0);
    for (const cplx& z : frame.upper_roots) sum += 1.0 / (frame.y_double - z);
    for (const cplx& p : ic.poles) sum -= 1.0 / (frame.y_double - p);
    return sum.imag();
}

double lambda_soliton_pv(const RationalIC& ic, const EdgeFrame& frame, double tol) {
    check_frame(ic, frame, EdgeKind::soliton);
    auto w = [&](double y) { return edge_weight_dlog_g(ic, frame, y); };
    return halfline_odd_integral(w, frame.y_double, geometry_span(ic, frame), tol);
}

double edge_weight_g(const RationalIC& ic, const EdgeFrame& frame, double y) {
    double g = 1.0;
    for (const cplx& z : frame.upper_roots) g *= std::norm(y - z);
    for (const cplx& p : ic.poles) g /= std::norm(y - p);
    return g;
}

double edge_weight_dlog_g(const RationalIC& ic, const EdgeFrame& frame, double y) {
    double w = 0.0;
    for (const cplx& z : frame.upper_roots) w += 2.0 * (y - z.real()) / std::norm(y - z);
    for (const cplx& p : ic.poles) w -= 2.0 * (y - p.real()) / std::norm(y - p);
    return w;
}

double Lambda_harmonic(const RationalIC& ic, const EdgeFrame& frame) {
    check_frame(ic, frame, EdgeKind::harmonic);
    auto half = [&](double y) {
        double s = 0.0;
        for (const cplx& z : frame.upper_roots) s += std::arg(z - y);
        for (const cplx& p : ic.poles) s -= std::arg(cplx(y) - p);
        return s;
    };
    return half(frame.y_double) - half(frame.y_simple);
}

double Lambda_harmonic_pv(const RationalIC& ic, const EdgeFrame& frame, double tol) {
    check_frame(ic, frame, EdgeKind::harmonic);
    auto lng = [&](double y) { return std::log(edge_weight_g(ic, frame, y)); };
    const double span = geometry_span(ic, frame);
    return halfline_odd_integral(lng, frame.y_double, span, tol) -
           halfline_odd_integral(lng, frame.y_simple, span, tol);
}

double soliton_profile_L(double xi, double c) { return 2.0 * c / (c * c * xi * xi + 1.0); }

double soliton_edge_approx(const RationalIC& ic, const EdgeFrame& frame, double lambda,
                           double X_s, double eps) {
    check_frame(ic, frame, EdgeKind::soliton);
    if (!(eps > 0.0)) throw DomainExceeded("eps must be positive");
    const auto [ai, aip] = airy(cplx(X_s));
    double lterm = 0.0;
    if (aip.real() != 0.0) {
        const double xi =
            std::pow(eps, -1.0 / 3.0) * frame.k_edge * (ai.real() / aip.real()) +
            2.0 * frame.t * lambda;
        lterm = soliton_profile_L(xi, frame.c);
    }
    // at a zero of Ai' the fraction diverges and the profile term vanishes
    return frame.u_simple + lterm;
}

double soliton_train_approx(const RationalIC& ic, const EdgeFrame& frame, double lambda,
                            double X_s, double eps, int n_terms) {
    check_frame(ic, frame, EdgeKind::soliton);
    if (n_terms < 1) throw DomainExceeded("n_terms must be at least 1");
    const double pre = std::pow(eps, -1.0 / 3.0) * frame.k_edge;
    double u = frame.u_simple;
    for (int n = 1; n <= n_terms; ++n) {
        const double xi = pre * (X_s - airy_zero(n)) + 2.0 * frame.t * lambda;
        u += soliton_profile_L(xi, frame.c);
    }
    return u;
}

double soliton_offset(const RationalIC& ic, const EdgeFrame& frame, double lambda, double eps,
                      int n) {
    check_frame(ic, frame, EdgeKind::soliton);
    return frame.x_edge + std::pow(eps, 2.0 / 3.0) * frame.k_edge * airy_zero(n) -
           2.0 * eps * frame.t * lambda;
}

double harmonic_phase_Theta(const RationalIC& ic, const EdgeFrame& frame, double x) {
    check_frame(ic, frame, EdgeKind::harmonic);
    const double u2 = frame.u_simple, uh = frame.u_double;
    return (u2 - uh) * (x - frame.x_edge) + (u2 * u2 - uh * uh) * frame.t +
           integral_u0_real(ic, frame.y_double, frame.y_simple);
}

double harmonic_edge_approx(const RationalIC& ic, const EdgeFrame& frame, double Lambda,
                            double x, double X_h, double eps) {
    check_frame(ic, frame, EdgeKind::harmonic);
    if (!(eps > 0.0)) throw DomainExceeded("eps must be positive");
    const double X_from_x = (x - frame.x_edge) / (frame.k_edge * std::pow(eps, 2.0 / 3.0));
    if (std::abs(X_h - X_from_x) > 1e-9)
        throw InconsistentCoordinates("X_h does not match (x - x_h)/(k_h eps^{2/3})");
    const cplx rot = std::polar(1.0, kPi / 3.0);
    const auto [ai, aip] = airy(rot * X_h);
    (void)aip;
    const double theta = harmonic_phase_Theta(ic, frame, x);
    const double phi = std::arg(ai) - 5.0 * kPi / 12.0 + Lambda;
    const double amp = std::pow(eps, 1.0 / 6.0) *
                       std::sqrt(2.0 * frame.kappa / (kPi * frame.k_edge)) / std::abs(ai);
    return frame.u_simple + amp * std::cos(theta / eps + phi);
}

CatastropheSample catastrophe_approx(const RationalIC& ic, const CatastrophePoint& cp,
                                     double T, double X, double eps) {
    (void)ic;
    if (!(eps > 0.0)) throw DomainExceeded("eps must be positive");
    CatastropheSample s;
    s.t = cp.t_c + cp.k * cp.k * std::sqrt(eps) * T;
    s.x = cp.x_c + 2.0 * cp.u_c * (s.t - cp.t_c) + cp.k * std::pow(eps, 0.75) * X;
    s.u = cp.u_c + std::pow(eps, 0.25) * profile_U(T, X).U / cp.k;
    return s;
}

cplx saddle_term(cplx h_val, cplx hpp, cplx f_val, double eps) {
    if (std::abs(hpp) == 0.0) throw ZeroDivisor("vanishing second derivative at a saddle");
    double phi = -kPi / 4.0 - 0.5 * std::arg(hpp);
    while (phi <= -kPi / 2.0) phi += kPi;
    while (phi > kPi / 2.0) phi -= kPi;
    return std::polar(1.0, phi) * std::sqrt(2.0 * kPi * eps / std::abs(hpp)) *
           std::exp(cplx(0.0, -1.0) * h_val / eps) * f_val;
}

cplx steepest_descent_reference(const RationalIC& ic, double t, double x, double eps,
                                const std::function<cplx(cplx)>& f) {
    const auto set = all_critical_points(ic, t, x);
    std::vector<cplx> all;
    for (const auto& [y, m] : set.real_roots) {
        if (m != 1) throw SaddleTooClose("multiple real critical point");
        all.emplace_back(y);
    }
    for (const auto& [z, m] : set.upper_roots) {
        if (m != 1) throw SaddleTooClose("multiple complex critical point");
        all.push_back(z);
        all.push_back(std::conj(z));
    }
    // the separation requirement applies to the saddles the axis contour
    // actually crosses (the real ones); complex pairs only need simplicity
    const double min_sep = 10.0 * std::cbrt(eps);
    for (std::size_t i = 0; i < set.real_roots.size(); ++i)
        for (std::size_t j = i + 1; j < set.real_roots.size(); ++j)
            if (std::abs(set.real_roots[i].first - set.real_roots[j].first) < min_sep)
                throw SaddleTooClose("real critical points closer than 10 eps^{1/3}");
    (void)all;
    cplx sum(0.0, 0.0);
    for (const auto& [y, m] : set.real_roots) {
        (void)m;
        const cplx zeta(y);
        const cplx h = eval_h_principal(ic, t, x, zeta);
        const cplx hpp = 1.0 / (2.0 * t) + eval_u0_deriv(ic, zeta, 1);
        sum += saddle_term(h, hpp, f(zeta), eps);
    }
    return sum;
}

} // namespace bo
