#include "bo/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace bo {

QuadResult integrate_polyline(const std::function<cplx(cplx)>& f, const ContourPath& path,
                              double tol) {
    if (!path.valid()) throw Error("integrate_polyline: invalid path");
    QuadResult r;
    const std::size_t segs = path.nodes.size() - 1;
    if (segs == 0) return r;
    const double seg_tol = tol / double(segs);
    for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
        double err = 0.0;
        r.value += integrate_segment_adaptive<cplx>(f, path.nodes[i], path.nodes[i + 1],
                                                    seg_tol, err);
        r.error += err;
    }
    return r;
}

cplx integrate_tail(const std::function<cplx(cplx)>& f, cplx anchor, double direction,
                    double tol) {
    const cplx dir = std::polar(1.0, direction);
    // Empirical decay probe: |f| sampled at geometrically growing radii (two
    // nearby radii each, to dodge accidental zeros of an oscillatory f).
    auto probe = [&](double r) {
        return std::max(std::abs(f(anchor + r * dir)), std::abs(f(anchor + 1.07 * r * dir)));
    };
    double R = 1.0;
    double prev = probe(R), prev2 = prev;
    bool ok = false;
    for (int k = 0; k < 60; ++k) {
        R *= 1.5;
        const double cur = probe(R);
        if (cur * std::max(1.0, R) < 0.1 * tol && cur <= prev && prev <= prev2) {
            ok = true;
            break;
        }
        prev2 = prev;
        prev = cur;
    }
    if (!ok) throw NoDecayDetected("integrate_tail: no decay detected along ray");
    double err = 0.0;
    return integrate_segment_adaptive<cplx>(f, anchor, anchor + R * dir, tol, err);
}

QuadResult integrate_contour(const std::function<cplx(cplx)>& f, const ContourPath& path,
                             double tol) {
    QuadResult r = integrate_polyline(f, path, tol);
    if (path.tail_in) {
        // tail arrives from infinity: integral from infinity to anchor is
        // minus the outgoing ray integral.
        r.value -= integrate_tail(f, path.tail_in->anchor, path.tail_in->direction, tol);
        r.error += tol;
    }
    if (path.tail_out) {
        r.value += integrate_tail(f, path.tail_out->anchor, path.tail_out->direction, tol);
        r.error += tol;
    }
    return r;
}

double integrate_real(const std::function<double(double)>& f, double a, double b, double tol) {
    auto fc = [&](cplx z) -> cplx { return cplx(f(z.real()), 0.0); };
    double err = 0.0;
    return integrate_segment_adaptive<cplx>(fc, cplx(a), cplx(b), tol, err).real();
}

double integrate_real_tail_log(const std::function<double(double)>& f, double s0, double tol) {
    if (!(s0 > 0.0)) throw Error("integrate_real_tail_log: s0 must be positive");
    // s = e^u; integral becomes \int f(e^u) e^u du, truncated when the
    // integrand is negligible and decreasing.
    auto g = [&](double u) {
        const double s = std::exp(u);
        return f(s) * s;
    };
    double U = std::log(s0);
    double prev2 = std::abs(g(U)), prev = prev2;
    double Uend = U;
    bool ok = false;
    for (int k = 0; k < 80; ++k) {
        Uend += 1.0;
        const double cur = std::abs(g(Uend));
        if (cur < 0.1 * tol && cur <= prev && prev <= prev2) {
            ok = true;
            break;
        }
        prev2 = prev;
        prev = cur;
    }
    if (!ok) throw NoDecayDetected("integrate_real_tail_log: integrand does not decay");
    return integrate_real(g, U, Uend, tol);
}

double principal_value(const std::function<double(double)>& g, double y0, double half_width,
                       double tol) {
    if (!(half_width > 0.0)) throw Error("principal_value: half_width must be positive");
    auto sym = [&](double s) { return g(y0 + s) + g(y0 - s); };
    // The symmetric pair extends continuously through s = 0 only for a simple
    // pole; detect higher-order singularities by sampling near 0.
    const double s1 = 1e-6 * half_width, s2 = 1e-3 * half_width;
    const double v1 = std::abs(sym(s1)), v2 = std::abs(sym(s2));
    if (v1 > 1e3 * (v2 + 1.0))
        throw PoleOrderTooHigh("principal_value: symmetric pair diverges at the pole");
    return integrate_real(sym, 0.0, half_width, tol);
}

} // namespace bo
