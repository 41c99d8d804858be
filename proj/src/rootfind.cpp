#include "bo/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "bo/errors.hpp"

namespace bo {

namespace {

// polynomial product, ascending coefficients
std::vector<cplx> poly_mul(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    std::vector<cplx> c(a.size() + b.size() - 1, cplx(0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

void poly_add_scaled(std::vector<cplx>& a, const std::vector<cplx>& b, cplx s) {
    if (a.size() < b.size()) a.resize(b.size(), cplx(0.0));
    for (std::size_t j = 0; j < b.size(); ++j) a[j] += s * b[j];
}

// Horner evaluation of p and p' (ascending coefficients).
std::pair<cplx, cplx> poly_eval2(const std::vector<cplx>& c, cplx z) {
    cplx p = 0.0, dp = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[i];
    }
    return {p, dp};
}

} // namespace

std::vector<cplx> characteristic_poly(const RationalIC& ic, double t, double x) {
    if (!(t > 0.0)) throw NonpositiveTime("characteristic_poly: t must be positive");
    const std::size_t N = ic.size();
    // (z - x) * prod_n (z - p_n)(z - p_n*)
    std::vector<cplx> result{cplx(-x), cplx(1.0)};
    for (std::size_t n = 0; n < N; ++n) {
        const cplx p = ic.poles[n];
        // (z - p)(z - p*) = z^2 - 2 Re(p) z + |p|^2, real coefficients
        result = poly_mul(result, {cplx(std::norm(p)), cplx(-2.0 * p.real()), cplx(1.0)});
    }
    // + 2t sum_n [ c_n (z - p_n*) + c_n* (z - p_n) ] * prod_{m != n} (z - p_m)(z - p_m*)
    for (std::size_t n = 0; n < N; ++n) {
        std::vector<cplx> qn{cplx(1.0)};
        for (std::size_t m = 0; m < N; ++m) {
            if (m == n) continue;
            const cplx p = ic.poles[m];
            qn = poly_mul(qn, {cplx(std::norm(p)), cplx(-2.0 * p.real()), cplx(1.0)});
        }
        const cplx c = ic.residues[n], p = ic.poles[n];
        // c (z - p*) + c* (z - p) = 2 Re(c) z - 2 Re(c p*)
        const std::vector<cplx> lin{cplx(-2.0 * (c * std::conj(p)).real()),
                                    cplx(2.0 * c.real())};
        poly_add_scaled(result, poly_mul(qn, lin), cplx(2.0 * t));
    }
    // assembled from real-coefficient factors; enforce exact realness
    double max_im = 0.0;
    for (auto& cf : result) {
        max_im = std::max(max_im, std::abs(cf.imag()));
        cf = cplx(cf.real(), 0.0);
    }
    if (max_im > 1e-12)
        throw Error("characteristic_poly: assembly produced non-real coefficients");
    return result;
}

std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs) {
    if (coeffs.size() < 2) throw Error("poly_roots: degree must be >= 1");
    std::vector<cplx> c = coeffs;
    const cplx lead = c.back();
    if (lead == cplx(0.0)) throw Error("poly_roots: zero leading coefficient");
    for (auto& v : c) v /= lead;
    const std::size_t deg = c.size() - 1;
    double maxc = 0.0;
    for (std::size_t i = 0; i < deg; ++i) maxc = std::max(maxc, std::abs(c[i]));
    const double r0 = 1.0 + maxc;
    std::vector<cplx> z(deg);
    for (std::size_t k = 0; k < deg; ++k)
        z[k] = std::polar(r0, 2.0 * M_PI * double(k) / double(deg) + 0.4);

    const int max_iter = 500;
    for (int it = 0; it < max_iter; ++it) {
        double max_step = 0.0;
        for (std::size_t k = 0; k < deg; ++k) {
            auto [p, dp] = poly_eval2(c, z[k]);
            if (p == cplx(0.0)) continue;
            cplx newton = (dp != cplx(0.0)) ? p / dp : cplx(1e-3);
            cplx s = 0.0;
            for (std::size_t j = 0; j < deg; ++j)
                if (j != k) s += 1.0 / (z[k] - z[j]);
            const cplx denom = 1.0 - newton * s;
            cplx step = (std::abs(denom) > 1e-300) ? newton / denom : newton;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = newton;
            z[k] -= step;
            max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[k])));
        }
        if (max_step < 1e-14) return z;
    }
    // Multiple roots stall at the attainable cluster radius; accept if the
    // residuals are small relative to the coefficient scale.
    double scale = 0.0;
    for (const auto& v : c) scale = std::max(scale, std::abs(v));
    for (const auto& zk : z) {
        auto [p, dp] = poly_eval2(c, zk);
        (void)dp;
        const double zb = std::max(1.0, std::abs(zk));
        double zpow = 1.0;
        for (std::size_t i = 0; i < deg; ++i) zpow *= zb;
        if (std::abs(p) > 1e-8 * scale * zpow)
            throw SolverDivergence("poly_roots: Aberth iteration did not converge");
    }
    return z;
}

CriticalPointSet all_critical_points(const RationalIC& ic, double t, double x,
                                     double cluster_tol) {
    const auto coeffs = characteristic_poly(ic, t, x);
    std::vector<cplx> roots = poly_roots(coeffs);
    const std::size_t M = roots.size();

    // Newton-polish simple roots on the polynomial (multiplicity-aware steps
    // are applied after clustering below would be circular; instead polish
    // only roots that are well-separated from all others).
    for (std::size_t k = 0; k < M; ++k) {
        double sep = 1e300;
        for (std::size_t j = 0; j < M; ++j)
            if (j != k) sep = std::min(sep, std::abs(roots[k] - roots[j]));
        if (sep < 10.0 * cluster_tol) continue;
        for (int it = 0; it < 4; ++it) {
            auto [p, dp] = poly_eval2(coeffs, roots[k]);
            if (std::abs(dp) < 1e-300) break;
            roots[k] -= p / dp;
        }
    }

    // Union-find clustering at cluster_tol.
    std::vector<std::size_t> parent(M);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::size_t i = 0; i < M; ++i)
        for (std::size_t j = i + 1; j < M; ++j)
            if (std::abs(roots[i] - roots[j]) < cluster_tol) parent[find(i)] = find(j);

    struct Cluster {
        cplx centroid;
        int mult;
    };
    std::vector<Cluster> clusters;
    for (std::size_t rep = 0; rep < M; ++rep) {
        if (find(rep) != rep) continue;
        cplx sum = 0.0;
        int cnt = 0;
        for (std::size_t i = 0; i < M; ++i)
            if (find(i) == rep) {
                sum += roots[i];
                ++cnt;
            }
        clusters.push_back({sum / double(cnt), cnt});
    }

    // Multiplicity-aware Newton polish of a cluster centroid. Near multiple
    // roots the residual sits at the rounding-noise floor, where raw Newton
    // steps random-walk; keep the best iterate by |P| and never move farther
    // than a few cluster radii from the centroid.
    auto polish = [&](cplx z0, int mult) {
        cplx best = z0, z = z0;
        double best_res = std::abs(poly_eval2(coeffs, z0).first);
        const double leash = 20.0 * cluster_tol;
        for (int it = 0; it < 30; ++it) {
            auto [p, dp] = poly_eval2(coeffs, z);
            if (std::abs(dp) < 1e-300) break;
            const cplx step = double(mult) * p / dp;
            z -= step;
            if (std::abs(z - z0) > leash) break;
            const double res = std::abs(poly_eval2(coeffs, z).first);
            if (res < best_res) {
                best_res = res;
                best = z;
            }
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
        }
        return best;
    };

    CriticalPointSet set;
    set.t = t;
    set.x = x;
    for (auto& cl : clusters) {
        if (std::abs(cl.centroid.imag()) < cluster_tol) {
            // snap to the real axis and polish along it
            const cplx z = polish(cplx(cl.centroid.real(), 0.0), cl.mult);
            set.real_roots.emplace_back(z.real(), cl.mult);
        } else if (cl.centroid.imag() > 0.0) {
            set.upper_roots.emplace_back(polish(cl.centroid, cl.mult), cl.mult);
        }
        // lower-half clusters are the implicit conjugates; dropped
    }
    std::sort(set.real_roots.begin(), set.real_roots.end());
    std::sort(set.upper_roots.begin(), set.upper_roots.end(),
              [](const auto& a, const auto& b) { return a.first.real() < b.first.real(); });

    if (set.total_multiplicity() != int(M))
        throw SolverDivergence("all_critical_points: conjugate pairing failed");
    return set;
}

double pole_sum_residual(const CriticalPointSet& set, const RationalIC& ic, double x) {
    double lhs = x;
    for (const auto& p : ic.poles) lhs += 2.0 * p.real();
    double rhs = 0.0;
    for (const auto& [y, m] : set.real_roots) rhs += double(m) * y;
    for (const auto& [z, m] : set.upper_roots) rhs += double(m) * 2.0 * z.real();
    return std::abs(lhs - rhs);
}

} // namespace bo
