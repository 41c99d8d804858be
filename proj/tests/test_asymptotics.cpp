#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "bo/asymptotics.hpp"
#include "bo/caustic.hpp"
#include "bo/errors.hpp"
#include "bo/exact_solver.hpp"
#include "bo/quadrature.hpp"
#include "bo/rational_data.hpp"
#include "bo/specfun.hpp"

using namespace bo;

namespace {
const double kPi = 3.141592653589793238462643383279502884;
RationalIC lorentzian() { return RationalIC{{cplx(0.0, 1.0)}, {cplx(0.0, -1.0)}}; }
RationalIC two_pole() {
    return RationalIC{{cplx(0.0, 1.0), cplx(3.0, 2.0)}, {cplx(0.0, -1.0), cplx(0.1, -0.6)}};
}
} // namespace

TEST_CASE("lambda at the soliton edge") {
    SUBCASE("two-method agreement, Lorentzian t = 2") {
        auto ic = lorentzian();
        auto fr = edge_frame(ic, 2.0, EdgeKind::soliton);
        const double primary = lambda_soliton(ic, fr);
        const double pv = lambda_soliton_pv(ic, fr);
        CHECK(std::abs(primary - pv) <= 1e-8);
        // closed form for this data: -1/(y_d^2 + 1)
        CHECK(primary ==
              doctest::Approx(-1.0 / (fr.y_double * fr.y_double + 1.0)).epsilon(1e-10));
    }
    SUBCASE("two-method agreement, two-pole data") {
        auto ic = two_pole();
        auto cp = find_catastrophe(ic);
        auto fr = edge_frame(ic, cp.t_c * 1.3, EdgeKind::soliton);
        CHECK(std::abs(lambda_soliton(ic, fr) - lambda_soliton_pv(ic, fr)) <= 1e-8);
    }
    SUBCASE("edge weight positive on 50 sample points") {
        auto ic = two_pole();
        auto fr = edge_frame(ic, find_catastrophe(ic).t_c * 1.3, EdgeKind::soliton);
        for (int i = 0; i < 50; ++i) {
            const double y = -12.0 + 24.0 * i / 49.0;
            CHECK(edge_weight_g(ic, fr, y) > 0.0);
        }
    }
    SUBCASE("wrong frame kind rejected") {
        auto ic = lorentzian();
        auto fr = edge_frame(ic, 2.0, EdgeKind::harmonic);
        CHECK_THROWS_AS((void)lambda_soliton(ic, fr), FrameIncomplete);
    }
}

TEST_CASE("soliton edge formula structure") {
    auto ic = lorentzian();
    auto fr = edge_frame(ic, 2.0, EdgeKind::soliton);
    const double lambda = lambda_soliton(ic, fr);
    const double eps = 1.0 / 64.0;
    SUBCASE("at an Airy zero the profile argument reduces to 2 t lambda") {
        const double expect =
            fr.u_simple + soliton_profile_L(2.0 * fr.t * lambda, fr.c);
        CHECK(soliton_edge_approx(ic, fr, lambda, airy_zero(1), eps) ==
              doctest::Approx(expect).epsilon(1e-9));
    }
    SUBCASE("profile peak height") { CHECK(soliton_profile_L(0.0, fr.c) == 2.0 * fr.c); }
    SUBCASE("matches the exact solution near the edge") {
        for (double Xs : {-2.5, -1.0, 0.0}) {
            const double x = fr.x_edge + fr.k_edge * std::pow(eps, 2.0 / 3.0) * Xs;
            const double exact = solve_point(ic, 2.0, x, eps).u;
            const double approx = soliton_edge_approx(ic, fr, lambda, Xs, eps);
            CHECK(std::abs(exact - approx) < 0.30); // O(eps^{1/3}) regime
        }
    }
}

TEST_CASE("soliton train and offsets") {
    auto ic = lorentzian();
    auto fr = edge_frame(ic, 2.0, EdgeKind::soliton);
    const double lambda = lambda_soliton(ic, fr);
    SUBCASE("train vs single formula shrinks like eps^{2/3}") {
        // the prefactor of the eps^{2/3} difference is ~40 for this data
        // (driven by (2 t lambda)^3/k^2), so test the scaling law directly
        auto worst_diff = [&](double eps) {
            double worst = 0.0;
            for (double Xs = -4.0; Xs <= 0.0; Xs += 0.002) {
                const double a = soliton_edge_approx(ic, fr, lambda, Xs, eps);
                const double b = soliton_train_approx(ic, fr, lambda, Xs, eps, 40);
                worst = std::max(worst, std::abs(a - b));
            }
            return worst;
        };
        const double w1 = worst_diff(1.0 / 2048.0);
        const double w2 = worst_diff(1.0 / 16384.0);
        CHECK(w1 <= 100.0 * std::pow(1.0 / 2048.0, 2.0 / 3.0));
        CHECK(w1 / w2 >= 3.0); // factor 8 in eps -> factor 4 in eps^{2/3}
        CHECK(w1 / w2 <= 6.0);
    }
    SUBCASE("offsets are ordered") {
        const double eps = 1.0 / 256.0;
        for (int n = 1; n < 6; ++n)
            CHECK(soliton_offset(ic, fr, lambda, eps, n) >
                  soliton_offset(ic, fr, lambda, eps, n + 1));
    }
    SUBCASE("re-centered single soliton near an offset") {
        const double eps = 1.0 / 256.0;
        const int n = 2;
        const double x0 = soliton_offset(ic, fr, lambda, eps, n);
        for (double dx : {-2.0 * eps, 0.0, 1.5 * eps}) {
            const double x = x0 + dx;
            const double Xs = (x - fr.x_edge) / (fr.k_edge * std::pow(eps, 2.0 / 3.0));
            const double train = soliton_train_approx(ic, fr, lambda, Xs, eps, 40);
            const double single =
                fr.u_simple + soliton_profile_L(dx / eps, fr.c);
            CHECK(std::abs(train - single) < 5.0 * std::pow(eps, 2.0 / 3.0));
        }
    }
}

TEST_CASE("harmonic phase and Lambda") {
    auto ic = lorentzian();
    auto fr = edge_frame(ic, 2.0, EdgeKind::harmonic);
    SUBCASE("first term vanishes at the edge") {
        const double u2 = fr.u_simple, uh = fr.u_double;
        const double expect =
            (u2 * u2 - uh * uh) * fr.t + integral_u0_real(ic, fr.y_double, fr.y_simple);
        CHECK(harmonic_phase_Theta(ic, fr, fr.x_edge) == doctest::Approx(expect));
    }
    SUBCASE("x-derivative is kappa") {
        const double h = 1e-6;
        const double fd = (harmonic_phase_Theta(ic, fr, fr.x_edge + h) -
                           harmonic_phase_Theta(ic, fr, fr.x_edge - h)) /
                          (2.0 * h);
        CHECK(fd == doctest::Approx(fr.kappa).epsilon(1e-8));
        CHECK(fr.kappa > 0.0);
    }
    SUBCASE("closed-form initial-data integral vs quadrature") {
        const double quad = integrate_real([&](double y) { return eval_u0(ic, cplx(y)).real(); },
                                           fr.y_double, fr.y_simple, 1e-12);
        CHECK(std::abs(integral_u0_real(ic, fr.y_double, fr.y_simple) - quad) <= 1e-10);
    }
    SUBCASE("Lambda two-method agreement") {
        CHECK(std::abs(Lambda_harmonic(ic, fr) - Lambda_harmonic_pv(ic, fr)) <= 1e-8);
        auto ic2 = two_pole();
        auto fr2 = edge_frame(ic2, find_catastrophe(ic2).t_c * 1.3, EdgeKind::harmonic);
        CHECK(std::abs(Lambda_harmonic(ic2, fr2) - Lambda_harmonic_pv(ic2, fr2)) <= 1e-8);
    }
    SUBCASE("half-line log identity") {
        // (1/2pi) int_0^inf ln(((y+s)^2+1)/((y-s)^2+1)) ds/s = pi/2 + arg(y - i)
        for (double y : {0.0, 0.7, -1.3}) {
            auto f = [&](double s) {
                const double sp = (y + s) * (y + s) + 1.0, sm = (y - s) * (y - s) + 1.0;
                return std::log(sp / sm) / std::max(s, 1e-12);
            };
            const double val = (integrate_real(f, 0.0, 50.0, 1e-11) +
                                integrate_real_tail_log(f, 50.0, 1e-11)) /
                               (2.0 * kPi);
            CHECK(val == doctest::Approx(kPi / 2.0 + std::arg(cplx(y, -1.0))).epsilon(1e-7));
        }
    }
    SUBCASE("dispersion identity") {
        CHECK(std::abs(-fr.omega + 2.0 * fr.u_simple * fr.kappa -
                       fr.kappa * std::abs(fr.kappa)) <= 1e-12);
    }
}

TEST_CASE("harmonic edge approximation") {
    auto ic = lorentzian();
    auto fr = edge_frame(ic, 2.0, EdgeKind::harmonic);
    const double Lam = Lambda_harmonic(ic, fr);
    const double eps = 1.0 / 64.0;
    SUBCASE("coordinate consistency enforced") {
        CHECK_THROWS_AS(
            (void)harmonic_edge_approx(ic, fr, Lam, fr.x_edge + 0.01, 0.0, eps),
            InconsistentCoordinates);
    }
    SUBCASE("envelope growth into the oscillation zone") {
        const auto [ai, aip] = airy(std::polar(1.0, kPi / 3.0) * 30.0);
        (void)aip;
        const double envelope = 1.0 / std::abs(ai);
        const double predicted = 2.0 * std::sqrt(kPi) * std::pow(30.0, 0.25);
        CHECK(std::abs(envelope - predicted) / predicted < 0.10);
    }
    SUBCASE("matches the exact solution near the edge") {
        // the error constant grows with X_h (the oscillation turns nonlinear
        // deeper in), so the pointwise check stays near the edge at small eps
        const double eps_fine = 1.0 / 512.0;
        double worst = 0.0;
        for (double Xh : {-1.0, -0.5, 0.0}) {
            const double x = fr.x_edge + fr.k_edge * std::pow(eps_fine, 2.0 / 3.0) * Xh;
            const double exact = solve_point(ic, 2.0, x, eps_fine).u;
            const double approx = harmonic_edge_approx(ic, fr, Lam, x, Xh, eps_fine);
            worst = std::max(worst, std::abs(exact - approx));
        }
        CHECK(worst < 0.10);
    }
}

TEST_CASE("catastrophe approximation") {
    auto ic = lorentzian();
    auto cp = find_catastrophe(ic);
    SUBCASE("origin maps to the catastrophe point") {
        const double eps = 1.0 / 256.0;
        auto s = catastrophe_approx(ic, cp, 0.0, 0.0, eps);
        CHECK(s.t == doctest::Approx(cp.t_c));
        CHECK(s.x == doctest::Approx(cp.x_c));
        CHECK(s.u == doctest::Approx(cp.u_c +
                                     std::pow(eps, 0.25) * profile_U(0.0, 0.0).U / cp.k));
    }
    SUBCASE("large-X limbs approach the cube-root law") {
        const double eps = 1.0 / 256.0;
        for (double X : {40.0, -40.0}) {
            const auto s = catastrophe_approx(ic, cp, 0.0, X, eps);
            const double limb = cp.u_c - (X > 0 ? 1.0 : -1.0) * std::pow(eps, 0.25) *
                                             std::cbrt(std::abs(X) / 4.0) / cp.k;
            CHECK(std::abs(s.u - limb) / std::abs(limb - cp.u_c) <= 0.15);
        }
    }
}

TEST_CASE("steepest descent reference") {
    SUBCASE("gaussian sanity") {
        // h = -i z^2 so e^{-i h/eps} = e^{-z^2/eps}; exact integral sqrt(pi eps)
        const double eps = 1.0 / 128.0;
        const cplx v = saddle_term(cplx(0.0), cplx(0.0, -2.0), cplx(1.0), eps);
        CHECK(std::abs(v - std::sqrt(kPi * eps)) <= eps * std::sqrt(kPi * eps));
    }
    SUBCASE("axis-contour entry cross-check") {
        auto ic = lorentzian();
        const double t = 0.2, x = 0.0, eps = 1.0 / 256.0;
        auto fam = build_contours(ic, t, x, eps);
        auto sys = assemble_matrices(ic, t, x, eps, fam);
        const cplx exact_b = sys.B[0][0] * std::exp(sys.row_log_scale[0]);
        const cplx ref_b =
            steepest_descent_reference(ic, t, x, eps, [](cplx) { return cplx(1.0); });
        CHECK(std::abs(exact_b - ref_b) / std::abs(exact_b) < 1e-2);
        const cplx exact_a = sys.A[0][0] * std::exp(sys.row_log_scale[0]);
        const cplx ref_a = steepest_descent_reference(
            ic, t, x, eps, [&](cplx z) { return eval_u0(ic, z); });
        CHECK(std::abs(exact_a - ref_a) / std::abs(exact_a) < 1e-2);
    }
    SUBCASE("fails fast on the caustic") {
        auto ic = lorentzian();
        auto fr = edge_frame(ic, 2.0, EdgeKind::soliton);
        CHECK_THROWS_AS((void)steepest_descent_reference(ic, 2.0, fr.x_edge, 1.0 / 256.0,
                                                         [](cplx) { return cplx(1.0); }),
                        SaddleTooClose);
    }
}
