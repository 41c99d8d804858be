#include "bo/exact_solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "bo/errors.hpp"
#include "bo/quadrature.hpp"
#include "bo/rootfind.hpp"

namespace bo {

namespace {

const double kPi = 3.141592653589793238462643383279502884;
const cplx kI(0.0, 1.0);

// ---------------------------------------------------------------------------
// Phase helpers
// ---------------------------------------------------------------------------

// Continuation increment of h along the single straight chord z0 -> z1
// (principal logs of endpoint ratios; exact because a chord never subtends an
// angle >= pi at a point off the chord).
cplx delta_h(const RationalIC& ic, double t, double x, cplx z0, cplx z1) {
    cplx d = ((z1 - x) * (z1 - x) - (z0 - x) * (z0 - x)) / (4.0 * t);
    for (std::size_t n = 0; n < ic.size(); ++n) {
        const cplx p = ic.poles[n], c = ic.residues[n];
        d += c * std::log((z1 - p) / (z0 - p));
        d += std::conj(c) * std::log((z1 - std::conj(p)) / (z0 - std::conj(p)));
    }
    return d;
}

// Magnitude exponent of e^{-i h / eps}: Re(-i h)/eps = Im(h)/eps.
double exponent_of(cplx h, double eps) { return h.imag() / eps; }

// Distance from point q to the ray anchor + r e^{i theta}, r >= 0.
double dist_point_ray(cplx q, cplx anchor, double theta) {
    const cplx d = std::polar(1.0, theta);
    const cplx w = q - anchor;
    const double proj = w.real() * d.real() + w.imag() * d.imag();
    if (proj <= 0.0) return std::abs(w);
    return std::abs(w - proj * d);
}

// ---------------------------------------------------------------------------
// Dynamic-length complex vector for multi-moment quadrature
// ---------------------------------------------------------------------------

struct DVec {
    std::vector<cplx> v;
    DVec& operator+=(const DVec& o) {
        if (v.size() < o.v.size()) v.resize(o.v.size());
        for (std::size_t i = 0; i < o.v.size(); ++i) v[i] += o.v[i];
        return *this;
    }
    DVec& operator-=(const DVec& o) {
        if (v.size() < o.v.size()) v.resize(o.v.size());
        for (std::size_t i = 0; i < o.v.size(); ++i) v[i] -= o.v[i];
        return *this;
    }
    DVec& operator*=(double s) {
        for (auto& e : v) e *= s;
        return *this;
    }
    DVec& operator*=(cplx s) {
        for (auto& e : v) e *= s;
        return *this;
    }
};

double quad_mag(const DVec& x) {
    double m = 0.0;
    for (const auto& e : x.v) m = std::max(m, std::abs(e));
    return m;
}

// ---------------------------------------------------------------------------
// Row integration
// ---------------------------------------------------------------------------

// One path node with its continued phase value.
struct HNode {
    cplx z;
    cplx h;
};

struct RowIntegrals {
    std::vector<cplx> vals; // [int u0 e, int e, int e/(z-p_1), ...]
    double log_norm = 0.0;  // true values = vals * e^{log_norm}
};

// Truncated tail nodes along anchor + r e^{i theta}, with continued h,
// ordered outward from the anchor; also updates the running exponent max.
std::vector<HNode> tail_nodes(const RationalIC& ic, double t, double x, double eps,
                              cplx anchor, cplx h_anchor, double theta, double& exp_max) {
    std::vector<HNode> out;
    double r = 1.0;
    int below = 0;
    for (int k = 0; k < 60; ++k) {
        const cplx z = anchor + r * std::polar(1.0, theta);
        const cplx h = h_anchor + delta_h(ic, t, x, anchor, z);
        out.push_back({z, h});
        const double e = exponent_of(h, eps);
        exp_max = std::max(exp_max, e);
        below = (e <= exp_max - 45.0) ? below + 1 : 0;
        if (below >= 2) return out;
        r *= 2.0;
    }
    throw QuadratureFailure("exact solver: no decay detected along a contour tail");
}

RowIntegrals integrate_row(const RationalIC& ic, double t, double x, double eps,
                           const ContourPath& path, double tol) {
    const std::size_t N = ic.size();
    const auto pts = accumulate_phase(ic, t, x, path);

    // interior exponent maximum sampled densely along every chord
    double s = -1e300;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        s = std::max(s, exponent_of(pts[i].h, eps));
        if (i + 1 < pts.size()) {
            for (int q = 1; q < 16; ++q) {
                const cplx z = pts[i].z + (pts[i + 1].z - pts[i].z) * (double(q) / 16.0);
                s = std::max(s, exponent_of(pts[i].h + delta_h(ic, t, x, pts[i].z, z), eps));
            }
        }
    }

    std::vector<HNode> chain;
    if (path.tail_in) {
        auto tin = tail_nodes(ic, t, x, eps, pts.front().z, pts.front().h,
                              path.tail_in->direction, s);
        for (auto it = tin.rbegin(); it != tin.rend(); ++it) chain.push_back(*it);
    }
    for (const auto& p : pts) chain.push_back({p.z, p.h});
    if (path.tail_out) {
        auto tout = tail_nodes(ic, t, x, eps, pts.back().z, pts.back().h,
                               path.tail_out->direction, s);
        for (const auto& n : tout) chain.push_back(n);
    }

    const auto weight = [&](cplx z) {
        DVec w;
        w.v.resize(N + 2);
        w.v[0] = eval_u0(ic, z);
        w.v[1] = 1.0;
        for (std::size_t n = 0; n < N; ++n) w.v[2 + n] = 1.0 / (z - ic.poles[n]);
        return w;
    };

    DVec total;
    total.v.resize(N + 2);
    const std::size_t nseg = chain.size() - 1;
    for (std::size_t k = 0; k < nseg; ++k) {
        const cplx za = chain[k].z, zb = chain[k + 1].z;
        const cplx ha = chain[k].h;
        if (za == zb) continue;
        const auto f = [&](cplx z) {
            const cplx h = ha + delta_h(ic, t, x, za, z);
            DVec w = weight(z);
            w *= std::exp(-kI * h / eps - s);
            return w;
        };
        // initial panel count from the sampled oscillation of Re(h)/eps
        double osc = 0.0;
        double prev = ha.real();
        for (int j = 1; j <= 16; ++j) {
            const cplx z = za + (zb - za) * (double(j) / 16.0);
            const double re = (ha + delta_h(ic, t, x, za, z)).real();
            osc += std::abs(re - prev);
            prev = re;
        }
        const int panels = std::clamp(int(osc / (2.0 * kPi * eps)) + 1, 1, 60000);
        // error floor: summed Gauss-Kronrod defects of highly panelled
        // oscillatory segments bottom out at roundoff per panel
        const double tol_seg = std::max(tol / double(nseg), 1e-15 * double(panels));
        double err = 0.0;
        try {
            total += integrate_segment_adaptive<DVec>(f, za, zb, tol_seg, err,
                                                      std::max(100000, 6 * panels), panels);
        } catch (const MaxSubdivision& e) {
            throw QuadratureFailure(std::string("exact solver row integral: ") + e.what());
        }
    }
    return {total.v, s};
}

// ---------------------------------------------------------------------------
// Contour construction
// ---------------------------------------------------------------------------

// Base geometric scale around pole n: distance within which no other pole or
// conjugate sits (capped by the distance to the real axis).
double pole_scale(const RationalIC& ic, std::size_t n) {
    double d = ic.poles[n].imag();
    for (std::size_t m = 0; m < ic.size(); ++m) {
        if (m != n) d = std::min(d, 0.5 * std::abs(ic.poles[n] - ic.poles[m]));
        d = std::min(d, 0.5 * std::abs(ic.poles[n] - std::conj(ic.poles[m])));
    }
    return d;
}

// Exponent of e^{-i h} (eps-independent shape check): the decay invariant
// requires strictly decreasing values at probe radii 5, 10, 20 along each
// declared tail.
bool tail_decays(const RationalIC& ic, double t, double x, cplx anchor, double theta) {
    const cplx h0 = eval_h_principal(ic, t, x, anchor);
    double prev = 1e300;
    for (double r : {5.0, 10.0, 20.0}) {
        const cplx z = anchor + r * std::polar(1.0, theta);
        const double e = (h0 + delta_h(ic, t, x, anchor, z)).imag();
        if (e >= prev) return false;
        prev = e;
    }
    return true;
}

// Minimum acceptable distance from a tail ray to the poles it could pass.
bool ray_clear(const RationalIC& ic, cplx anchor, double theta, bool upper_half) {
    for (std::size_t m = 0; m < ic.size(); ++m) {
        const cplx q = upper_half ? ic.poles[m] : std::conj(ic.poles[m]);
        if (dist_point_ray(q, anchor, theta) < 0.4 * pole_scale(ic, m)) return false;
    }
    return true;
}

ContourPath make_w0(const RationalIC& ic, double t, double x) {
    const auto crit = all_critical_points(ic, t, x);
    if (crit.real_roots.empty())
        throw NoAdmissibleContour("no real critical point to anchor W0");
    const double yL = crit.real_roots.front().first;
    const double yR = crit.real_roots.back().first;
    for (int attempt = 0; attempt < 3; ++attempt) {
        const double m = 0.5 * std::pow(3.0, attempt);
        const double a_in = std::min(yL, x) - m;
        const double a_out = std::max(yR, x) + m;
        if (!ray_clear(ic, cplx(a_in), 3.0 * kPi / 4.0, true)) continue;
        if (!ray_clear(ic, cplx(a_out), -kPi / 4.0, false)) continue;
        if (!tail_decays(ic, t, x, cplx(a_in), 3.0 * kPi / 4.0)) continue;
        if (!tail_decays(ic, t, x, cplx(a_out), -kPi / 4.0)) continue;
        ContourPath p;
        p.nodes.push_back(cplx(a_in));
        for (const auto& [y, mult] : crit.real_roots)
            if (y > a_in + 1e-9 && y < a_out - 1e-9) p.nodes.push_back(cplx(y));
        p.nodes.push_back(cplx(a_out));
        p.tail_in = Tail{cplx(a_in), 3.0 * kPi / 4.0};
        p.tail_out = Tail{cplx(a_out), -kPi / 4.0};
        return p;
    }
    throw NoAdmissibleContour("W0 steering failed after 3 configurations");
}

ContourPath make_wn(const RationalIC& ic, double t, double x, std::size_t n) {
    const cplx p = ic.poles[n];
    // largest radius that keeps every other pole and every conjugate pole
    // strictly outside the loop (windings stay delta_{nm})
    double R_max = 1e300;
    for (std::size_t m = 0; m < ic.size(); ++m) {
        if (m != n) R_max = std::min(R_max, 0.8 * std::abs(p - ic.poles[m]));
        R_max = std::min(R_max, 0.8 * std::abs(p - std::conj(ic.poles[m])));
    }
    // conditioning: the loop integral is dominated by saddle-level
    // contributions far below the loop's own exponent maximum unless the
    // loop exponent is as low as the geometry permits; pick the admissible
    // radius with minimal sampled max of Im h on the circle
    double best_R = -1.0, best_e = 1e300;
    const auto try_radius = [&](double R) {
        const cplx a0 = p + R * std::polar(1.0, 3.0 * kPi / 4.0);
        for (std::size_t m = 0; m < ic.size(); ++m) {
            if (m == n) continue;
            if (dist_point_ray(ic.poles[m], a0, 3.0 * kPi / 4.0) < 0.4 * pole_scale(ic, m))
                return;
        }
        if (!tail_decays(ic, t, x, a0, 3.0 * kPi / 4.0)) return;
        double emax = -1e300;
        for (int k = 0; k < 64; ++k) {
            const cplx z = p + R * std::polar(1.0, 2.0 * kPi * k / 64.0);
            emax = std::max(emax, eval_h_principal(ic, t, x, z).imag());
        }
        if (emax < best_e) {
            best_e = emax;
            best_R = R;
        }
    };
    for (double fac : {0.95, 0.8, 0.65, 0.5, 0.35, 0.22, 0.12}) try_radius(fac * R_max);
    // refine around the coarse winner: the loop exponent maximum is within a
    // few units of its continuous minimum only near the optimal radius, and
    // every unit saved is a unit of cancellation the quadrature need not
    // resolve
    for (int pass = 0; pass < 3 && best_R > 0.0; ++pass) {
        const double center = best_R;
        const double span = 0.35 / (pass + 1);
        for (int k = -4; k <= 4; ++k) {
            if (k == 0) continue;
            const double R = center * (1.0 + span * k / 4.0);
            if (R > 0.95 * R_max || R < 0.01 * R_max) continue;
            try_radius(R);
        }
    }
    if (best_R < 0.0)
        throw NoAdmissibleContour("W_n steering failed over all configurations");
    const double R = best_R;
    const cplx a0 = p + R * std::polar(1.0, 3.0 * kPi / 4.0);
    ContourPath path;
    // positively oriented 24-gon around p, starting and ending at a0
    for (int k = 0; k <= 24; ++k)
        path.nodes.push_back(p + R * std::polar(1.0, 3.0 * kPi / 4.0 + 2.0 * kPi * k / 24.0));
    path.tail_in = Tail{a0, 3.0 * kPi / 4.0};
    path.tail_out = Tail{a0, 3.0 * kPi / 4.0};
    path.clearance = 0.05 * R;
    return path;
}

void check_windings(const RationalIC& ic, double t, double x, const ContourFamily& fam) {
    const std::size_t N = ic.size();
    for (std::size_t j = 0; j < fam.W.size(); ++j) {
        const auto pts = accumulate_phase(ic, t, x, fam.W[j]);
        const auto& w = pts.back().winding;
        for (std::size_t m = 0; m < 2 * N; ++m) {
            const double expect = (j >= 1 && m == j - 1) ? 1.0 : 0.0;
            const double slack = (j == 0) ? 0.75 : 0.25; // W0 is an open path
            if (std::abs(w[m] - expect) > slack)
                throw NoAdmissibleContour("contour winding check failed");
        }
    }
}

} // namespace

ContourFamily build_contours(const RationalIC& ic, double t, double x, double eps) {
    ic.validate();
    if (t <= 0.0) throw NonpositiveTime("build_contours requires t > 0");
    (void)eps;
    ContourFamily fam;
    fam.W.push_back(make_w0(ic, t, x));
    for (std::size_t n = 0; n < ic.size(); ++n) fam.W.push_back(make_wn(ic, t, x, n));
    check_windings(ic, t, x, fam);
    return fam;
}

AssembledSystem assemble_matrices(const RationalIC& ic, double t, double x, double eps,
                                  const ContourFamily& fam, double tol) {
    const std::size_t N = ic.size();
    if (fam.W.size() != N + 1)
        throw NoAdmissibleContour("contour family size does not match the data");
    AssembledSystem sys;
    sys.A.resize(N + 1);
    sys.B.resize(N + 1);
    sys.row_log_scale.resize(N + 1);
    for (std::size_t j = 0; j <= N; ++j) {
        const auto row = integrate_row(ic, t, x, eps, fam.W[j], tol);
        double M = 0.0;
        for (const auto& v : row.vals) M = std::max(M, std::abs(v));
        if (!(M > 0.0) || !std::isfinite(M))
            throw QuadratureFailure("row of contour integrals vanished or overflowed");
        sys.A[j].resize(N + 1);
        sys.B[j].resize(N + 1);
        sys.A[j][0] = row.vals[0] / M;
        sys.B[j][0] = row.vals[1] / M;
        for (std::size_t k = 1; k <= N; ++k) sys.A[j][k] = sys.B[j][k] = row.vals[1 + k] / M;
        sys.row_log_scale[j] = row.log_norm + std::log(M);
    }
    return sys;
}

cplx det_small(std::vector<std::vector<cplx>> M) {
    const std::size_t n = M.size();
    cplx det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
        if (piv != c) {
            std::swap(M[piv], M[c]);
            det = -det;
        }
        if (M[c][c] == cplx(0.0)) return cplx(0.0);
        det *= M[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const cplx f = M[r][c] / M[c][c];
            for (std::size_t k = c; k < n; ++k) M[r][k] -= f * M[c][k];
        }
    }
    return det;
}

SolutionSample solve_with_family(const RationalIC& ic, double t, double x, double eps,
                                 const ContourFamily& fam) {
    const auto sys = assemble_matrices(ic, t, x, eps, fam);
    const cplx dA = det_small(sys.A);
    const cplx dB = det_small(sys.B);
    double hadamard = 1.0;
    for (const auto& row : sys.B) {
        double nrm = 0.0;
        for (const auto& e : row) nrm += std::norm(e);
        hadamard *= std::sqrt(nrm);
    }
    if (std::abs(dB) < 1e-12 * hadamard)
        throw DenominatorTiny("scaled |det B| below the conditioning floor");
    SolutionSample out;
    out.t = t;
    out.x = x;
    out.eps = eps;
    out.u = 2.0 * (dA / dB).real();
    out.cond_estimate = hadamard / std::abs(dB);
    if (!std::isfinite(out.u))
        throw QuadratureFailure("solution value is not finite");
    return out;
}

namespace {
std::atomic<unsigned> g_solver_threads{0};
} // namespace

void set_solver_threads(unsigned n) { g_solver_threads.store(n); }

SolutionSample solve_point(const RationalIC& ic, double t, double x, double eps) {
    ic.validate();
    if (t <= 0.0) throw NonpositiveTime("solve_point requires t > 0");
    if (!(eps > 0.0)) throw DomainExceeded("solve_point requires eps > 0");
    if (eps < std::ldexp(1.0, -10) - 1e-13)
        throw DomainExceeded("eps below the validated floor 2^-10");
    for (std::size_t n = 0; n < ic.size(); ++n) {
        const cplx w = -kI * ic.residues[n];
        const double m = std::round(w.real() / eps);
        if (m >= 1.0 && std::abs(w - m * eps) <= 1e-12)
            throw ResonantEpsilon("-i c_n lies in eps * N for some n");
    }
    return solve_with_family(ic, t, x, eps, build_contours(ic, t, x, eps));
}

std::vector<SolutionSample> solve_grid(const RationalIC& ic, double t,
                                       const std::vector<double>& xs, double eps) {
    std::vector<SolutionSample> out(xs.size());
    std::vector<std::pair<std::size_t, std::string>> failures;
    std::mutex mu;
    std::atomic<std::size_t> next{0};
    unsigned hw = g_solver_threads.load();
    if (hw == 0) hw = std::min(std::max(1u, std::thread::hardware_concurrency()), 16u);
    const unsigned nthreads = std::min<std::size_t>(hw, std::max<std::size_t>(1, xs.size()));
    const auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= xs.size()) return;
            try {
                out[i] = solve_point(ic, t, xs[i], eps);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lk(mu);
                failures.emplace_back(i, e.what());
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < nthreads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (!failures.empty()) {
        std::sort(failures.begin(), failures.end());
        std::ostringstream msg;
        msg << "solve_grid: " << failures.size() << " point(s) failed:";
        for (const auto& [i, what] : failures) msg << " [" << i << "] " << what << ";";
        throw Error(msg.str());
    }
    return out;
}

} // namespace bo
