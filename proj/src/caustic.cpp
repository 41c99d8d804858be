#include "bo/caustic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "bo/errors.hpp"

namespace bo {

namespace {

double u0_real(const RationalIC& ic, double y, int order) {
    return eval_u0_deriv(ic, cplx(y), order).real();
}

// Solve 1 + 2 t u0'(y) = 0 by damped Newton from y0.
double newton_double_root(const RationalIC& ic, double t, double y0) {
    double y = y0;
    for (int it = 0; it < 60; ++it) {
        const double g = 1.0 + 2.0 * t * u0_real(ic, y, 1);
        const double dg = 2.0 * t * u0_real(ic, y, 2);
        if (std::abs(dg) < 1e-300) break;
        double step = g / dg;
        // keep steps bounded to avoid jumping to another branch
        const double cap = 0.25 * (1.0 + std::abs(y));
        if (std::abs(step) > cap) step = std::copysign(cap, step);
        y -= step;
        if (std::abs(step) < 1e-14 * (1.0 + std::abs(y))) return y;
    }
    const double res = std::abs(1.0 + 2.0 * t * u0_real(ic, y, 1));
    if (res > 1e-9) throw ContinuationStall("double-root Newton failed to converge");
    return y;
}

// March the double-root branch y(t) from the cusp to the requested time.
double march_branch(const RationalIC& ic, const CatastrophePoint& cp, double t, EdgeKind kind) {
    if (!(t > cp.t_c)) throw OffBranch("edge frames require t > t_c");
    const double uppp = u0_real(ic, cp.y_c, 3);
    const double sgn = (kind == EdgeKind::soliton) ? -1.0 : 1.0;
    double tcur = cp.t_c + std::min(1e-6, 0.5 * (t - cp.t_c));
    double y = cp.y_c + sgn * std::sqrt(tcur - cp.t_c) / (cp.t_c * std::sqrt(uppp));
    y = newton_double_root(ic, tcur, y);
    while (tcur < t) {
        const double step = std::min(0.2 * (tcur - cp.t_c), t - tcur);
        tcur += step;
        y = newton_double_root(ic, tcur, y);
    }
    return y;
}

} // namespace

std::vector<CatastrophePoint> find_catastrophe_candidates(const RationalIC& ic) {
    double radius = 0.0;
    for (const auto& p : ic.poles)
        radius = std::max(radius, std::abs(p.real()) + std::abs(p.imag()));
    radius = 10.0 * (1.0 + radius);
    const int grid = 20000;
    std::vector<CatastrophePoint> out;
    double yprev = -radius, fprev = u0_real(ic, yprev, 2);
    for (int i = 1; i <= grid; ++i) {
        const double y = -radius + 2.0 * radius * double(i) / grid;
        const double f = u0_real(ic, y, 2);
        if (fprev == 0.0 || f * fprev < 0.0) {
            // bisection then Newton on u0''
            double a = yprev, b = y, fa = fprev;
            for (int it = 0; it < 60; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = u0_real(ic, m, 2);
                if (fm == 0.0) { a = b = m; break; }
                if (fm * fa < 0.0) b = m;
                else { a = m; fa = fm; }
            }
            double yc = 0.5 * (a + b);
            for (int it = 0; it < 20; ++it) {
                const double f2 = u0_real(ic, yc, 2);
                const double f3 = u0_real(ic, yc, 3);
                if (std::abs(f3) < 1e-300) break;
                const double step = f2 / f3;
                yc -= step;
                if (std::abs(step) < 1e-15 * (1.0 + std::abs(yc))) break;
            }
            const double up = u0_real(ic, yc, 1);
            const double uppp = u0_real(ic, yc, 3);
            if (up < 0.0 && uppp > 0.0) {
                CatastrophePoint cp;
                cp.y_c = yc;
                cp.t_c = -1.0 / (2.0 * up);
                cp.x_c = yc - u0_real(ic, yc, 0) / up;
                cp.u_c = u0_real(ic, yc, 0);
                cp.k = std::pow(2.0 / 3.0, 0.25) * cp.t_c * std::pow(uppp, 0.25);
                out.push_back(cp);
            }
        }
        yprev = y;
        fprev = f;
    }
    std::sort(out.begin(), out.end(),
              [](const CatastrophePoint& a, const CatastrophePoint& b) { return a.t_c < b.t_c; });
    return out;
}

CatastrophePoint find_catastrophe(const RationalIC& ic) {
    auto cands = find_catastrophe_candidates(ic);
    if (cands.empty())
        throw NoCatastrophe("no real inflection of u0 with u0' < 0 and u0''' > 0");
    return cands.front();
}

EdgeFrame edge_frame(const RationalIC& ic, double t, EdgeKind kind) {
    const CatastrophePoint cp = find_catastrophe(ic);
    const double yd = march_branch(ic, cp, t, kind);
    EdgeFrame fr;
    fr.kind = kind;
    fr.t = t;
    fr.y_double = yd;
    fr.x_edge = yd + 2.0 * t * u0_real(ic, yd, 0);
    fr.u_double = u0_real(ic, yd, 0);
    const double upp = u0_real(ic, yd, 2);
    if (kind == EdgeKind::soliton) {
        if (!(upp < 0.0)) throw OffBranch("soliton edge requires u0''(y_double) < 0");
        fr.k_edge = 2.0 * t * std::cbrt(-0.5 * upp);
    } else {
        if (!(upp > 0.0)) throw OffBranch("harmonic edge requires u0''(y_double) > 0");
        fr.k_edge = 2.0 * t * std::cbrt(0.5 * upp);
    }

    // classify the critical points at (t, x_edge) and strip the double root
    auto set = all_critical_points(ic, t, fr.x_edge, 1e-6);
    std::vector<std::pair<double, int>> reals;
    int removed = 0;
    for (const auto& [y, m] : set.real_roots) {
        if (std::abs(y - yd) < 1e-4 * (1.0 + std::abs(yd))) removed += m;
        else reals.emplace_back(y, m);
    }
    std::vector<std::pair<cplx, int>> uppers;
    for (const auto& [z, m] : set.upper_roots) {
        if (std::abs(z - cplx(yd)) < 1e-4 * (1.0 + std::abs(yd))) removed += 2 * m;
        else uppers.emplace_back(z, m);
    }
    if (removed != 2)
        throw OffBranch("double root not identified at the edge (too close to the cusp?)");
    if (reals.size() != 1 || reals[0].second != 1)
        throw OffBranch("expected exactly one simple real root besides the double root");
    fr.y_simple = reals[0].first;
    fr.u_simple = u0_real(ic, fr.y_simple, 0);
    for (const auto& [z, m] : uppers)
        for (int i = 0; i < m; ++i) fr.upper_roots.push_back(z);

    if (kind == EdgeKind::soliton) {
        if (!(fr.y_double < fr.y_simple))
            throw OffBranch("soliton edge requires the double root left of the simple root");
        fr.c = 2.0 * (fr.u_double - fr.u_simple);
        if (!(fr.c > 0.0)) throw OffBranch("soliton amplitude must be positive");
    } else {
        if (!(fr.y_double > fr.y_simple))
            throw OffBranch("harmonic edge requires the double root right of the simple root");
        fr.kappa = fr.u_simple - fr.u_double;
        fr.omega = fr.u_simple * fr.u_simple - fr.u_double * fr.u_double;
        if (!(fr.kappa > 0.0)) throw OffBranch("harmonic edge requires u_simple > u_double");
    }

    // characteristic residuals
    if (std::abs(fr.x_edge - fr.y_double - 2.0 * t * fr.u_double) > 1e-9 ||
        std::abs(fr.x_edge - fr.y_simple - 2.0 * t * fr.u_simple) > 1e-8 ||
        std::abs(1.0 + 2.0 * t * u0_real(ic, fr.y_double, 1)) > 1e-9)
        throw OffBranch("edge frame residuals out of tolerance");
    return fr;
}

EdgeCurves trace_edges(const RationalIC& ic, const CatastrophePoint& cp, double t_max,
                       int steps) {
    if (!(t_max > cp.t_c)) throw Error("trace_edges: t_max must exceed t_c");
    if (steps < 2) throw Error("trace_edges: steps must be >= 2");
    EdgeCurves curves;
    for (EdgeKind kind : {EdgeKind::harmonic, EdgeKind::soliton}) {
        auto& samples = (kind == EdgeKind::harmonic) ? curves.harmonic : curves.soliton;
        auto& frames = (kind == EdgeKind::harmonic) ? curves.harmonic_frames : curves.soliton_frames;
        for (int i = 1; i <= steps; ++i) {
            // quadratic clustering toward the cusp where x' has the sqrt law
            const double frac = double(i) / steps;
            const double t = cp.t_c + (t_max - cp.t_c) * frac * frac;
            const double y = march_branch(ic, cp, t, kind);
            samples.push_back({t, y + 2.0 * t * u0_real(ic, y, 0), y});
            if (t - cp.t_c > 1e-3 * (t_max - cp.t_c)) {
                try {
                    frames.push_back(edge_frame(ic, t, kind));
                } catch (const OffBranch&) {
                    // near-cusp frames are legitimately unavailable
                }
            }
        }
    }
    return curves;
}

std::vector<double> burgers_branches(const RationalIC& ic, double t, double x) {
    if (t == 0.0) return {u0_real(ic, x, 0)};
    if (t < 0.0) throw NonpositiveTime("burgers_branches: t must be >= 0");
    auto set = all_critical_points(ic, t, x);
    std::vector<double> out;
    for (const auto& [y, m] : set.real_roots) {
        if (m > 1) throw OnCaustic("(t, x) lies on the caustic locus (multiple real root)");
        out.push_back(u0_real(ic, y, 0));
    }
    for (std::size_t i = 1; i < set.real_roots.size(); ++i)
        if (set.real_roots[i].first - set.real_roots[i - 1].first < 1e-7)
            throw OnCaustic("(t, x) within tolerance of the caustic locus");
    std::sort(out.begin(), out.end());
    if (out.size() % 2 == 0) throw OnCaustic("even branch count: frame is degenerate");
    return out;
}

double weak_limit_ubar(const RationalIC& ic, double t, double x) {
    const auto branches = burgers_branches(ic, t, x);
    double s = 0.0;
    double sign = 1.0;
    for (double b : branches) {
        s += sign * b;
        sign = -sign;
    }
    return s;
}

std::string edge_curve_csv(const std::vector<EdgeFrame>& frames) {
    std::ostringstream os;
    os.precision(15);
    os << "t,x_edge,y_double,y_simple,u_double,u_simple,k_edge\n";
    for (const auto& fr : frames)
        os << fr.t << ',' << fr.x_edge << ',' << fr.y_double << ',' << fr.y_simple << ','
           << fr.u_double << ',' << fr.u_simple << ',' << fr.k_edge << '\n';
    return os.str();
}

} // namespace bo
