#include "bo/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <optional>

#include "bo/errors.hpp"
#include "bo/quadrature.hpp"
#include "bo/rootfind.hpp"
#include "bo/vecn.hpp"

namespace bo {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
const cplx kI(0.0, 1.0);

// ---------------------------------------------------------------------------
// Airy function
// ---------------------------------------------------------------------------

// Ai(0) = 3^{-2/3}/Gamma(2/3), Ai'(0) = -3^{-1/3}/Gamma(1/3)
double ai0() { return std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0); }
double aip0() { return -std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0); }

} // namespace

namespace detail {

std::pair<cplx, cplx> airy_series(cplx z) {
    if (z == cplx(0.0)) return {cplx(ai0()), cplx(aip0())};
    // Taylor coefficients of w'' = z w from (w, w')(0) = (Ai(0), Ai'(0)):
    // (m+2)(m+1) c_{m+2} = c_{m-1}, c_2 = 0.
    std::vector<double> c{ai0(), aip0(), 0.0};
    cplx w(0.0), dw(0.0);
    cplx zpow(1.0); // z^m
    int quiet = 0;
    for (int m = 0; m < 400; ++m) {
        if (m >= int(c.size())) c.push_back(c[m - 3] / (double(m) * double(m - 1)));
        const cplx term = c[m] * zpow;
        w += term;
        if (m >= 1) dw += double(m) * c[m] * zpow / z;
        const double mag = std::abs(term) * (1.0 + double(m));
        quiet = (mag < 1e-18 * (1.0 + std::abs(w))) ? quiet + 1 : 0;
        if (quiet >= 6) break;
        zpow *= z;
    }
    return {w, dw};
}

std::pair<cplx, cplx> airy_contour(cplx z) {
    // Ai(z) = (1/2 pi i) int e^{zeta^3/3 - z zeta} d zeta from infinity at
    // angle -pi/3 to infinity at angle +pi/3; route the path through the
    // saddle(s) +-sqrt(z) of phi = zeta^3/3 - z zeta.
    const auto phi = [&](cplx zeta) { return zeta * zeta * zeta / 3.0 - z * zeta; };
    const cplx w = std::sqrt(z); // principal branch, Re w >= 0
    std::vector<cplx> saddles{w};
    // The second saddle joins the descent chain only past the transition rays
    // arg z = +-2 pi/3; before that, threading it would force the connector
    // over a ridge between the saddles.
    if (std::abs(std::arg(z)) > 2.0 * kPi / 3.0 - 0.05) saddles.push_back(-w);
    std::sort(saddles.begin(), saddles.end(),
              [](cplx a, cplx b) { return a.imag() != b.imag() ? a.imag() < b.imag()
                                                              : a.real() < b.real(); });
    double ref = -1e300;
    for (cplx s : saddles) ref = std::max(ref, phi(s).real());

    // Walk a straight descent leg until either the truncation level is
    // reached or Re phi turns back up (the straight line eventually leaves
    // the curved valley); report the endpoint and whether the level was met.
    const auto descend = [&](cplx from, cplx dir, bool& reached) {
        double u = 0.2, prev_u = 0.0;
        double prev = phi(from).real();
        for (int it = 0; it < 200; ++it) {
            const double f = phi(from + u * dir).real();
            if (f <= ref - 45.0) {
                reached = true;
                return from + u * dir;
            }
            if (f > prev) {
                reached = false;
                return from + prev_u * dir;
            }
            prev = f;
            prev_u = u;
            u *= 1.2;
        }
        reached = false;
        return from + prev_u * dir;
    };
    // Outer endpoints must sit at the truncation level; finish the descent
    // along the asymptotic valley direction, where Re phi ~ -r^3/3.
    const auto finish_outer = [&](cplx from, double valley_angle) {
        const cplx dir = std::polar(1.0, valley_angle);
        double u = 0.2;
        for (int it = 0; it < 240; ++it) {
            if (phi(from + u * dir).real() <= ref - 45.0) return from + u * dir;
            u *= 1.2;
        }
        throw QuadratureFailure("airy_contour: no decay along valley direction");
    };

    struct SaddleSeg {
        cplx s, end_a, end_b; // the two ends of the straight descent leg
        bool reached_a = false, reached_b = false;
    };
    std::vector<SaddleSeg> segs;
    for (cplx s : saddles) {
        double theta = 0.5 * (kPi - std::arg(2.0 * s));
        const cplx dir = std::polar(1.0, theta);
        SaddleSeg sg;
        sg.s = s;
        sg.end_a = descend(s, -dir, sg.reached_a);
        sg.end_b = descend(s, dir, sg.reached_b);
        segs.push_back(sg);
    }

    std::vector<cplx> nodes;
    if (segs.size() == 1) {
        auto& sg = segs[0];
        // orient bottom to top
        if (sg.end_a.imag() > sg.end_b.imag()) {
            std::swap(sg.end_a, sg.end_b);
            std::swap(sg.reached_a, sg.reached_b);
        }
        if (!sg.reached_a) nodes.push_back(finish_outer(sg.end_a, -kPi / 3.0));
        nodes.push_back(sg.end_a);
        nodes.push_back(sg.s);
        nodes.push_back(sg.end_b);
        if (!sg.reached_b) nodes.push_back(finish_outer(sg.end_b, kPi / 3.0));
    } else {
        // Choose which ends face each other: the connector chord must run
        // through the shared valley, not over the ridge between the saddles.
        const auto chord_max = [&](cplx a, cplx b) {
            double m = -1e300;
            for (int j = 0; j <= 32; ++j)
                m = std::max(m, phi(a + (b - a) * (double(j) / 32.0)).real());
            return m;
        };
        auto& A = segs[0];
        auto& B = segs[1];
        // make end_b of A and end_a of B the connector ends
        if (chord_max(A.end_a, B.end_a) < chord_max(A.end_b, B.end_a) &&
            chord_max(A.end_a, B.end_b) < chord_max(A.end_b, B.end_b)) {
            std::swap(A.end_a, A.end_b);
            std::swap(A.reached_a, A.reached_b);
        }
        if (chord_max(A.end_b, B.end_b) < chord_max(A.end_b, B.end_a)) {
            std::swap(B.end_a, B.end_b);
            std::swap(B.reached_a, B.reached_b);
        }
        if (!A.reached_a) nodes.push_back(finish_outer(A.end_a, -kPi / 3.0));
        nodes.push_back(A.end_a);
        nodes.push_back(A.s);
        nodes.push_back(A.end_b);
        nodes.push_back(B.end_a);
        nodes.push_back(B.s);
        nodes.push_back(B.end_b);
        if (!B.reached_b) nodes.push_back(finish_outer(B.end_b, kPi / 3.0));
    }

    VecC<2> total{};
    const auto f = [&](cplx zeta) {
        const cplx e = std::exp(phi(zeta) - ref);
        return VecC<2>{{e, -zeta * e}};
    };
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
        // seed the panel count from the sampled oscillation of Im phi
        double osc = 0.0;
        cplx prev = phi(nodes[k]);
        for (int j = 1; j <= 8; ++j) {
            const cplx p = phi(nodes[k] + (nodes[k + 1] - nodes[k]) * (double(j) / 8.0));
            osc += std::abs(p.imag() - prev.imag());
            prev = p;
        }
        const int panels = std::clamp(int(osc / (4.0 * kPi)) + 1, 1, 400);
        double err = 0.0;
        total += integrate_segment_adaptive<VecC<2>>(f, nodes[k], nodes[k + 1], 1e-13, err,
                                                     8000, panels);
    }
    const cplx scale = std::exp(cplx(ref)) / (2.0 * kPi * kI);
    return {scale * total.v[0], scale * total.v[1]};
}

} // namespace detail

std::pair<cplx, cplx> airy(cplx z) {
    // The series loses digits to cancellation near the positive real axis
    // (Ai is recessive there); hand off to the saddle contour early.
    const double r = std::abs(z);
    if (r <= 4.5) return detail::airy_series(z);
    if (r <= 50.0 * (1.0 + 1e-12)) return detail::airy_contour(z);
    throw DomainExceeded("airy: |z| > 50");
}

double airy_zero(int n) {
    if (n < 1 || n > 64) throw DomainExceeded("airy_zero: n must be in 1..64");
    static std::vector<double> table;
    static std::once_flag once;
    std::call_once(once, [] {
        table.resize(64);
        for (int k = 1; k <= 64; ++k) {
            // asymptotic seed, then Newton on Ai along the real axis
            const double t = 3.0 * kPi * (4.0 * k - 1.0) / 8.0;
            double x = -std::pow(t, 2.0 / 3.0) * (1.0 + 5.0 / (48.0 * t * t));
            for (int it = 0; it < 40; ++it) {
                auto [a, ap] = airy(cplx(x));
                const double step = a.real() / ap.real();
                x -= step;
                if (std::abs(step) < 1e-14 * (1.0 + std::abs(x))) break;
            }
            table[k - 1] = x;
        }
    });
    return table[n - 1];
}

// ---------------------------------------------------------------------------
// Quartic-phase contours
// ---------------------------------------------------------------------------

namespace {

// q(zeta) = zeta^4 + a2 zeta^2 + a1 zeta; integrand e^{i q};
// E = log|e^{i q}| = -Im q is the exposure field steering path selection.
struct QPhase {
    cplx a2, a1;
    cplx q(cplx z) const {
        const cplx z2 = z * z;
        return z2 * z2 + a2 * z2 + a1 * z;
    }
    double E(cplx z) const { return -q(z).imag(); }
};

// March outward along anchor + u e^{i theta} until the exposure has dropped
// `drop` below its running maximum for three consecutive probes.
// Returns the truncation radius.
double probe_ray(const QPhase& P, cplx anchor, double theta, double drop) {
    const cplx dir = std::polar(1.0, theta);
    double u = 0.08 * (1.0 + std::abs(anchor));
    double maxE = P.E(anchor);
    int below = 0;
    for (int it = 0; it < 400; ++it) {
        const double e = P.E(anchor + u * dir);
        maxE = std::max(maxE, e);
        below = (e <= maxE - drop) ? below + 1 : 0;
        if (below >= 3) return u;
        u *= 1.12;
    }
    throw QuadratureFailure("quartic contour: no decay along ray");
}

// Maximum exposure over the polyline, sampled densely (used both to rank
// candidate paths and as the normalization of the integrand).
double sampled_max_exposure(const QPhase& P, const std::vector<cplx>& nodes) {
    double m = -1e300;
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k)
        for (int j = 0; j <= 64; ++j)
            m = std::max(m, P.E(nodes[k] + (nodes[k + 1] - nodes[k]) * (double(j) / 64.0)));
    return m;
}

// Moments int zeta^j e^{i q(zeta) - s} d zeta, j = 0..3, along the polyline.
VecC<4> integrate_nodes(const QPhase& P, const std::vector<cplx>& nodes, double s,
                        double tol) {
    const auto f = [&](cplx z) {
        const cplx e = std::exp(kI * P.q(z) - s);
        VecC<4> v{};
        v.v[0] = e;
        v.v[1] = z * e;
        v.v[2] = z * z * e;
        v.v[3] = z * z * z * e;
        return v;
    };
    const std::size_t nseg = nodes.size() - 1;
    VecC<4> total{};
    for (std::size_t k = 0; k < nseg; ++k) {
        double osc = 0.0;
        double prev = P.q(nodes[k]).real();
        for (int j = 1; j <= 12; ++j) {
            const double re =
                P.q(nodes[k] + (nodes[k + 1] - nodes[k]) * (double(j) / 12.0)).real();
            osc += std::abs(re - prev);
            prev = re;
        }
        const int panels = std::clamp(int(osc / (4.0 * kPi)) + 1, 1, 2000);
        double err = 0.0;
        total += integrate_segment_adaptive<VecC<4>>(f, nodes[k], nodes[k + 1],
                                                     tol / double(nseg), err, 30000, panels);
    }
    return total;
}

struct PathCandidate {
    std::vector<cplx> nodes;
    double exposure = 0.0;
};

// Straight two-ray path through the given junction.
PathCandidate straight_candidate(const QPhase& P, cplx junction, double theta_in,
                                 double theta_out) {
    const double r_in = probe_ray(P, junction, theta_in, 50.0);
    const double r_out = probe_ray(P, junction, theta_out, 50.0);
    PathCandidate c;
    c.nodes = {junction + r_in * std::polar(1.0, theta_in), junction,
               junction + r_out * std::polar(1.0, theta_out)};
    c.exposure = sampled_max_exposure(P, c.nodes);
    return c;
}

// Continue the steepest-descent curve of the exposure field from the last
// node of `nodes` until E <= target_E. grad E = -i conj(q'), so the downhill
// direction is i conj(q'). Returns false on stagnation.
bool trace_flow(const QPhase& P, std::vector<cplx>& nodes, double target_E) {
    const auto dir = [&](cplx w) -> std::optional<cplx> {
        const cplx qp = 4.0 * w * w * w + 2.0 * P.a2 * w + P.a1;
        const double m = std::abs(qp);
        if (m < 1e-300) return std::nullopt;
        return kI * std::conj(qp) / m;
    };
    cplx z = nodes.back();
    for (int it = 0; it < 3000; ++it) {
        const double e = P.E(z);
        if (e <= target_E) return true;
        const auto d1 = dir(z);
        if (!d1) return false;
        const cplx qp = 4.0 * z * z * z + 2.0 * P.a2 * z + P.a1;
        const cplx qpp = 12.0 * z * z + 2.0 * P.a2;
        const double want = std::max(0.5, (e - target_E) / 20.0);
        // curvature cap: near a saddle the curve bends on the scale |q'|/|q''|
        double h = std::min(want / std::abs(qp), 0.05 * (1.0 + std::abs(z)));
        if (std::abs(qpp) > 1e-300)
            h = std::min(h, 0.2 * std::abs(qp) / std::abs(qpp));
        const auto d2 = dir(z + 0.5 * h * *d1);
        if (!d2) return false;
        z += h * *d2;
        nodes.push_back(z);
    }
    return false;
}

// Path along the two traced descent curves of a saddle, closed by the
// asymptotic rays; needed when a complex saddle dominates and straight rays
// from it cross exponentially high ground.
std::optional<PathCandidate> traced_candidate(const QPhase& P, cplx s, double theta_in,
                                              double theta_out) {
    const cplx qpp = 12.0 * s * s + 2.0 * P.a2;
    if (std::abs(qpp) < 1e-8) return std::nullopt;
    double theta_c = 0.5 * (0.5 * kPi - std::arg(qpp));
    const double e0 = P.E(s);
    const double seed_off = 1e-3 * (1.0 + std::abs(s));
    // orient the first branch toward the outgoing valley so the usual
    // assignment is tried first
    if (std::cos(theta_c - theta_out) < std::cos(theta_c + kPi - theta_out))
        theta_c += kPi;
    std::vector<cplx> cA{s + seed_off * std::polar(1.0, theta_c)};
    std::vector<cplx> cB{s + seed_off * std::polar(1.0, theta_c + kPi)};
    if (!trace_flow(P, cA, e0 - 55.0) || !trace_flow(P, cB, e0 - 55.0))
        return std::nullopt;
    // validate a closure ray: its sampled exposure must stay well below the
    // saddle, otherwise the curve drained into the wrong valley
    const auto ray_ok = [&](cplx anchor, double theta, double& r_out) {
        const cplx dir = std::polar(1.0, theta);
        double u = 0.05 * (1.0 + std::abs(anchor));
        double maxE = P.E(anchor);
        int below = 0;
        for (int it = 0; it < 400; ++it) {
            const double e = P.E(anchor + u * dir);
            maxE = std::max(maxE, e);
            if (maxE > e0 - 25.0) return false;
            below = (e <= maxE - 50.0) ? below + 1 : 0;
            if (below >= 3) {
                r_out = u;
                return true;
            }
            u *= 1.12;
        }
        return false;
    };
    // Near a tall saddle the curve end at e0 - 55 may still sit high on the
    // mountain; keep descending in deepening stages until a straight closure
    // ray toward the target valley stays low all the way out.
    const auto closable = [&](std::vector<cplx>& curve, double theta, double& r) {
        double target = e0 - 55.0;
        for (int stage = 0; stage < 5; ++stage) {
            if (ray_ok(curve.back(), theta, r)) return true;
            target -= 400.0 * std::pow(4.0, stage);
            if (!trace_flow(P, curve, target)) return false;
        }
        return ray_ok(curve.back(), theta, r);
    };
    double r_in = 0.0, r_out = 0.0;
    std::vector<cplx>* curve_out = &cA;
    std::vector<cplx>* curve_in = &cB;
    if (!(closable(*curve_in, theta_in, r_in) && closable(*curve_out, theta_out, r_out))) {
        std::swap(curve_in, curve_out);
        if (!(closable(*curve_in, theta_in, r_in) && closable(*curve_out, theta_out, r_out)))
            return std::nullopt;
    }
    PathCandidate cand;
    cand.nodes.push_back(curve_in->back() + r_in * std::polar(1.0, theta_in));
    for (auto it = curve_in->rbegin(); it != curve_in->rend(); ++it) cand.nodes.push_back(*it);
    cand.nodes.push_back(s);
    for (cplx w : *curve_out) cand.nodes.push_back(w);
    cand.nodes.push_back(curve_out->back() + r_out * std::polar(1.0, theta_out));
    // short traced segments are already on the curve; coarse sampling suffices
    double m = e0;
    for (std::size_t k = 0; k + 1 < cand.nodes.size(); ++k)
        for (int j = 0; j <= 8; ++j)
            m = std::max(m, P.E(cand.nodes[k] +
                                (cand.nodes[k + 1] - cand.nodes[k]) * (double(j) / 8.0)));
    cand.exposure = m;
    return cand;
}

// Best path (minimal sampled exposure) from junction 0, all saddles of q,
// and bent variants at each saddle.
PathCandidate select_path(const QPhase& P, double theta_in, double theta_out,
                          bool saddle_candidates) {
    std::vector<PathCandidate> cands;
    cands.push_back(straight_candidate(P, cplx(0.0), theta_in, theta_out));
    if (saddle_candidates) {
        // saddles: roots of q' = 4 zeta^3 + 2 a2 zeta + a1
        const auto saddles = poly_roots({P.a1, 2.0 * P.a2, cplx(0.0), cplx(4.0)});
        for (cplx s : saddles) {
            try {
                cands.push_back(straight_candidate(P, s, theta_in, theta_out));
            } catch (const QuadratureFailure&) {
            }
            if (auto b = traced_candidate(P, s, theta_in, theta_out)) cands.push_back(*b);
        }
    }
    return *std::min_element(cands.begin(), cands.end(),
                             [](const PathCandidate& a, const PathCandidate& b) {
                                 return a.exposure < b.exposure;
                             });
}

} // namespace

std::array<cplx, 4> quartic_contour(cplx a2, cplx a1, double theta_in, double theta_out,
                                    cplx junction, double tol) {
    const QPhase P{a2, a1};
    PathCandidate c;
    try {
        c = straight_candidate(P, junction, theta_in, theta_out);
    } catch (const QuadratureFailure&) {
        throw;
    }
    const double s = c.exposure;
    VecC<4> m;
    try {
        m = integrate_nodes(P, c.nodes, s, tol);
    } catch (const MaxSubdivision& e) {
        throw QuadratureFailure(std::string("quartic_contour: ") + e.what());
    }
    const cplx scale = std::exp(cplx(s));
    return {scale * m.v[0], scale * m.v[1], scale * m.v[2], scale * m.v[3]};
}

double PearceyEval::ode_residual() const {
    return std::abs(4.0 * tau_XXX + 2.0 * T * tau_X - kI * X * tau);
}

double PearceyEval::log_abs_tau() const { return log_scale + std::log(std::abs(tau)); }

PearceyEval pearcey_tau(double T, double X, int depth) {
    if (std::abs(T) > 1500.0 || std::abs(X) > 1500.0)
        throw DomainExceeded("pearcey_tau: |T| or |X| beyond 1500");
    const QPhase P{cplx(-T), cplx(-X)};
    const double theta_in = -7.0 * kPi / 8.0, theta_out = -3.0 * kPi / 8.0;
    // For small parameters the origin junction is already well conditioned;
    // beyond that the dominant saddle must carry the path.
    const bool saddle_candidates = std::max(std::abs(T), std::abs(X)) > 8.0;
    PathCandidate c = select_path(P, theta_in, theta_out, saddle_candidates);
    const double s = c.exposure;
    VecC<4> m;
    try {
        m = integrate_nodes(P, c.nodes, s, std::pow(10.0, -depth));
    } catch (const MaxSubdivision& e) {
        throw QuadratureFailure(std::string("pearcey_tau: ") + e.what());
    }
    PearceyEval out;
    out.T = T;
    out.X = X;
    out.tau = m.v[0];
    out.tau_X = -kI * m.v[1];
    out.tau_XX = -m.v[2];
    out.tau_XXX = kI * m.v[3];
    out.log_scale = s;
    if (std::abs(s) < 600.0) {
        const double e = std::exp(s);
        out.tau *= e;
        out.tau_X *= e;
        out.tau_XX *= e;
        out.tau_XXX *= e;
        out.log_scale = 0.0;
    }
    return out;
}

ProfileU profile_U(double T, double X, int depth) {
    const PearceyEval ev = pearcey_tau(T, X, depth);
    // relative test: in the far regime the whole derivative bundle shares a
    // tiny common scale, so compare |tau| against that scale, not against 1
    const double bundle = std::max({std::abs(ev.tau), std::abs(ev.tau_X),
                                    std::abs(ev.tau_XX), std::abs(ev.tau_XXX)});
    if (std::abs(ev.tau) <= 1e-12 * bundle)
        throw ZeroDivisor("profile_U: |tau| vanishes at this (T, X)");
    const cplx r1 = ev.tau_X / ev.tau;
    const cplx r2 = ev.tau_XX / ev.tau;
    const cplx r3 = ev.tau_XXX / ev.tau;
    ProfileU out;
    out.U = -2.0 * r1.imag();
    out.U_X = -2.0 * (r2 - r1 * r1).imag();
    out.U_XX = -2.0 * (r3 - 3.0 * r2 * r1 + 2.0 * r1 * r1 * r1).imag();
    return out;
}

TauScanResult tau_min_scan(double T_min, double T_max, double X_min, double X_max, int grid,
                           int depth) {
    if (grid < 2) throw Error("tau_min_scan: grid must be >= 2");
    struct Pt {
        double log_abs, T, X;
    };
    const auto eval_log = [&](double T, double X) {
        const PearceyEval ev = pearcey_tau(T, X, depth);
        return ev.log_abs_tau();
    };
    std::vector<Pt> pts;
    pts.reserve(std::size_t(grid) * std::size_t(grid));
    for (int i = 0; i < grid; ++i) {
        const double T = T_min + (T_max - T_min) * double(i) / (grid - 1);
        for (int j = 0; j < grid; ++j) {
            const double X = X_min + (X_max - X_min) * double(j) / (grid - 1);
            pts.push_back({eval_log(T, X), T, X});
        }
    }
    const double dT = (T_max - T_min) / (grid - 1);
    const double dX = (X_max - X_min) / (grid - 1);

    double best = 1e300, best_T = 0.0, best_X = 0.0;
    double best_neg = 1e300, best_pos = 1e300;
    const auto consider = [&](double l, double T, double X) {
        if (l < best) {
            best = l;
            best_T = T;
            best_X = X;
        }
        if (X < 0.0) best_neg = std::min(best_neg, l);
        if (X > 0.0) best_pos = std::min(best_pos, l);
    };
    for (const auto& p : pts) consider(p.log_abs, p.T, p.X);

    // refine around the three smallest grid values
    std::vector<Pt> ranked = pts;
    std::partial_sort(ranked.begin(), ranked.begin() + std::min<std::size_t>(3, ranked.size()),
                      ranked.end(), [](const Pt& a, const Pt& b) { return a.log_abs < b.log_abs; });
    for (std::size_t r = 0; r < std::min<std::size_t>(3, ranked.size()); ++r) {
        double cT = ranked[r].T, cX = ranked[r].X;
        double hT = 0.6 * dT, hX = 0.6 * dX;
        for (int level = 0; level < 2; ++level) {
            double loc_best = 1e300, loc_T = cT, loc_X = cX;
            for (int i = -2; i <= 2; ++i)
                for (int j = -2; j <= 2; ++j) {
                    const double T = std::clamp(cT + hT * i / 2.0, T_min, T_max);
                    const double X = std::clamp(cX + hX * j / 2.0, X_min, X_max);
                    const double l = eval_log(T, X);
                    consider(l, T, X);
                    if (l < loc_best) {
                        loc_best = l;
                        loc_T = T;
                        loc_X = X;
                    }
                }
            cT = loc_T;
            cX = loc_X;
            hT *= 0.25;
            hX *= 0.25;
        }
    }
    TauScanResult out;
    out.min_abs = std::exp(best);
    out.argmin_T = best_T;
    out.argmin_X = best_X;
    out.min_abs_neg_X = std::exp(best_neg);
    out.min_abs_pos_X = std::exp(best_pos);
    return out;
}

WronskianReport wronskian_checks() {
    WronskianReport rep;
    // (a) the Airy cross combination V(X) is a constant, e^{7 i pi/12}/(2 pi)
    const cplx rot_p = std::polar(1.0, kPi / 3.0);
    const cplx rot_m = std::polar(1.0, -kPi / 3.0);
    const cplx const_V = std::polar(1.0, 7.0 * kPi / 12.0) / (2.0 * kPi);
    for (double X : {-3.5, -2.0, -1.0, -0.5, 0.0, 0.7, 1.3, 2.0, 2.6, 3.2}) {
        const auto [am, apm] = airy(rot_m * X);
        const auto [ap, app] = airy(rot_p * X);
        const cplx V = std::polar(1.0, -kPi / 4.0) * apm * ap -
                       std::polar(1.0, 5.0 * kPi / 12.0) * am * app;
        rep.airy_V_max_residual = std::max(rep.airy_V_max_residual, std::abs(V - const_V));
    }
    // (b) the quartic-phase Wronskian in beta of the two endpoint choices
    // collapses to a single rotated quartic integral
    const double th0 = -7.0 * kPi / 8.0;
    const std::vector<std::pair<cplx, cplx>> params = {
        {cplx(0.5), cplx(1.0, -1.0)},       {cplx(0.0), cplx(1.0)},
        {cplx(1.0), cplx(0.0, 0.5)},        {cplx(-0.7), cplx(0.3, 0.2)},
        {cplx(0.4), cplx(-0.6, 0.8)},
    };
    for (const auto& [alpha, beta] : params) {
        const auto mP = quartic_contour(alpha, beta, th0, kPi / 8.0, cplx(0.0), 1e-12);
        const auto mQ = quartic_contour(alpha, beta, th0, 5.0 * kPi / 8.0, cplx(0.0), 1e-12);
        const cplx Pv = mP[0], dPv = kI * mP[1];
        const cplx Qv = mQ[0], dQv = kI * mQ[1];
        const cplx W = Pv * dQv - Qv * dPv;
        const cplx rot = std::polar(1.0, -3.0 * kPi / 4.0);
        const auto mR =
            quartic_contour(-kI * alpha, rot * beta, th0, -3.0 * kPi / 8.0, cplx(0.0), 1e-12);
        const cplx rhs = std::sqrt(kPi / 2.0) * std::exp(-kI * alpha * alpha / 2.0) * mR[0];
        rep.quartic_max_residual = std::max(rep.quartic_max_residual, std::abs(W - rhs));
    }
    return rep;
}

} // namespace bo
