#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <queue>
#include <vector>

#include "bo/contour.hpp"
#include "bo/errors.hpp"

namespace bo {

/// Result of a quadrature with an a-posteriori error estimate.
struct QuadResult {
    cplx value{0.0, 0.0};
    double error = 0.0;
};

namespace gk15 {
// 15-point Kronrod rule with embedded 7-point Gauss rule on [-1, 1].
inline constexpr std::array<double, 8> nodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr std::array<double, 8> wk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr std::array<double, 4> wg = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};
} // namespace gk15

/// Magnitude used for error control; overload point for vector-valued rules.
inline double quad_mag(const cplx& v) { return std::abs(v); }
inline double quad_mag(double v) { return std::abs(v); }
template <typename T, std::size_t K>
double quad_mag(const std::array<T, K>& v) {
    double m = 0.0;
    for (const auto& e : v) m = std::max(m, quad_mag(e));
    return m;
}

/// One Gauss-Kronrod panel over the straight segment a -> b in the complex
/// plane. Value type V must support += and scalar *; f maps cplx -> V.
template <typename V, typename F>
void gk15_panel(F&& f, cplx a, cplx b, V& kronrod, double& err) {
    const cplx mid = 0.5 * (a + b);
    const cplx half = 0.5 * (b - a);
    V resk{}, resg{};
    for (std::size_t i = 0; i < 8; ++i) {
        const double xi = gk15::nodes[i];
        V fv = f(mid + half * xi);
        if (xi != 0.0) {
            V fm = f(mid - half * xi);
            fv += fm;
        }
        V term = fv;
        term *= gk15::wk[i];
        resk += term;
        if (i % 2 == 1 || i == 7) {
            V gterm = fv;
            gterm *= gk15::wg[i / 2];
            resg += gterm;
        }
    }
    resk *= half;
    resg *= half;
    V diff = resk;
    diff -= resg;
    err = quad_mag(diff);
    if (!std::isfinite(err) || !std::isfinite(quad_mag(resk)))
        throw NonFiniteIntegrand("non-finite value in quadrature panel");
    kronrod = resk;
}

/// Adaptive Gauss-Kronrod integration over a straight segment; splits panels
/// by estimated-error ranking until the total estimate is below tol.
template <typename V, typename F>
V integrate_segment_adaptive(F&& f, cplx a, cplx b, double tol, double& err_out,
                             int max_panels = 4000, int initial_panels = 1) {
    struct Panel {
        cplx a, b;
        V val;
        double err;
        bool operator<(const Panel& o) const { return err < o.err; }
    };
    std::priority_queue<Panel> q;
    V total{};
    double total_err = 0.0;
    initial_panels = std::max(1, initial_panels);
    for (int i = 0; i < initial_panels; ++i) {
        const cplx pa = a + (b - a) * (double(i) / initial_panels);
        const cplx pb = a + (b - a) * (double(i + 1) / initial_panels);
        Panel p{pa, pb, V{}, 0.0};
        gk15_panel(f, pa, pb, p.val, p.err);
        total += p.val;
        total_err += p.err;
        q.push(std::move(p));
    }
    int panels = initial_panels;
    while (total_err > tol && !q.empty()) {
        if (panels >= max_panels)
            throw MaxSubdivision("adaptive quadrature exceeded panel budget");
        Panel worst = q.top();
        q.pop();
        total -= worst.val;
        total_err -= worst.err;
        const cplx mid = 0.5 * (worst.a + worst.b);
        for (int half = 0; half < 2; ++half) {
            Panel p{half == 0 ? worst.a : mid, half == 0 ? mid : worst.b, V{}, 0.0};
            gk15_panel(f, p.a, p.b, p.val, p.err);
            total += p.val;
            total_err += p.err;
            q.push(std::move(p));
        }
        ++panels;
    }
    err_out = total_err;
    return total;
}

/// Integrate f along the finite polyline of `path` (tails, if any, are the
/// caller's responsibility or handled by integrate_contour below when decay
/// can be probed).
QuadResult integrate_polyline(const std::function<cplx(cplx)>& f, const ContourPath& path,
                              double tol);

/// Integrate f along `path`, including declared semi-infinite tails (which
/// must decay; probed empirically).
QuadResult integrate_contour(const std::function<cplx(cplx)>& f, const ContourPath& path,
                             double tol);

/// Integral of f over the ray anchor + r e^{i direction}, r in (0, inf).
/// Truncation radius found by empirical decay probing; throws NoDecayDetected
/// if |f| fails to decay along the ray.
cplx integrate_tail(const std::function<cplx(cplx)>& f, cplx anchor, double direction,
                    double tol);

/// Real-axis adaptive quadrature.
double integrate_real(const std::function<double(double)>& f, double a, double b, double tol);

/// Integral of f over [s0, inf) via the substitution s = e^u with empirical
/// truncation (for integrands ~ C/s^2 at infinity).
double integrate_real_tail_log(const std::function<double(double)>& f, double s0, double tol);

/// Principal value of the singular part: integrates the symmetric-pair
/// combination g(y0+s) + g(y0-s) over s in (0, half_width]. The caller adds
/// the ordinary integral outside [y0-half_width, y0+half_width].
/// Throws PoleOrderTooHigh when g(y)(y-y0) does not extend continuously.
double principal_value(const std::function<double(double)>& g, double y0, double half_width,
                       double tol);

} // namespace bo
