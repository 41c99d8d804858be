#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bo/caustic.hpp"
#include "bo/errors.hpp"

using namespace bo;

namespace {
RationalIC lorentzian() { return RationalIC{{cplx(0.0, 1.0)}, {cplx(0.0, -1.0)}}; }
const double kYc = 1.0 / std::sqrt(3.0);
const double kTc = 2.0 * std::sqrt(3.0) / 9.0;
const double kXc = std::sqrt(3.0);
} // namespace

TEST_CASE("catastrophe point of the Lorentzian") {
    auto cp = find_catastrophe(lorentzian());
    CHECK(cp.y_c == doctest::Approx(kYc).epsilon(1e-10));
    CHECK(cp.t_c == doctest::Approx(kTc).epsilon(1e-10));
    CHECK(cp.x_c == doctest::Approx(kXc).epsilon(1e-10));
    CHECK(cp.u_c == doctest::Approx(1.5).epsilon(1e-10));
    const double uppp = 27.0 * std::sqrt(3.0) / 8.0;
    CHECK(cp.k == doctest::Approx(std::pow(2.0 / 3.0, 0.25) * kTc * std::pow(uppp, 0.25))
                      .epsilon(1e-10));
    CHECK(cp.k == doctest::Approx(0.5409).epsilon(1e-3));
}

TEST_CASE("two-cusp configuration") {
    RationalIC two{{cplx(0, 1), cplx(16, 1)},
                   {cplx(1, -1), cplx(1, 1.0 / std::sqrt(2.0))}};
    auto cands = find_catastrophe_candidates(two);
    REQUIRE(cands.size() >= 2);
    bool near13 = false;
    for (const auto& cp : cands)
        if (std::abs(cp.x_c - 13.0) < 1.5) near13 = true;
    CHECK(near13);
}

TEST_CASE("negative bump breaks on its left flank") {
    // u0 = -2/(1+x^2): the admissible inflection (u0' < 0, u0''' > 0) sits at
    // y = -1/sqrt(3) by the reflection x -> -x of the positive bump
    RationalIC neg{{cplx(0.0, 1.0)}, {cplx(0.0, 1.0)}};
    auto cp = find_catastrophe(neg);
    CHECK(cp.y_c == doctest::Approx(-kYc).epsilon(1e-10));
    CHECK(cp.t_c == doctest::Approx(kTc).epsilon(1e-10));
    CHECK(cp.x_c == doctest::Approx(-kXc).epsilon(1e-10));
}

TEST_CASE("edge frames at t=2") {
    auto ic = lorentzian();
    SUBCASE("soliton frame") {
        auto fr = edge_frame(ic, 2.0, EdgeKind::soliton);
        CHECK(fr.y_double < fr.y_simple);
        CHECK(fr.c > 0.0);
        CHECK(fr.k_edge > 0.0);
        CHECK(std::abs(fr.x_edge - fr.y_double - 4.0 * fr.u_double) < 1e-9);
        CHECK(std::abs(fr.x_edge - fr.y_simple - 4.0 * fr.u_simple) < 1e-8);
        CHECK(fr.upper_roots.empty()); // N = 1: no remaining complex roots
        CHECK(fr.c == doctest::Approx(2.0 * (fr.u_double - fr.u_simple)));
    }
    SUBCASE("harmonic frame and dispersion identity") {
        auto fr = edge_frame(ic, 2.0, EdgeKind::harmonic);
        CHECK(fr.y_double > fr.y_simple);
        CHECK(fr.kappa > 0.0);
        CHECK(std::abs(-fr.omega + 2.0 * fr.u_simple * fr.kappa -
                       fr.kappa * std::abs(fr.kappa)) < 1e-12);
    }
    SUBCASE("edges are ordered x_h < x_s") {
        auto fh = edge_frame(ic, 2.0, EdgeKind::harmonic);
        auto fs = edge_frame(ic, 2.0, EdgeKind::soliton);
        CHECK(fh.x_edge < fs.x_edge);
    }
    SUBCASE("group velocities by central difference") {
        const double dt = 1e-5;
        for (EdgeKind kind : {EdgeKind::soliton, EdgeKind::harmonic}) {
            auto fm = edge_frame(ic, 2.0 - dt, kind);
            auto fp = edge_frame(ic, 2.0 + dt, kind);
            auto f0 = edge_frame(ic, 2.0, kind);
            const double slope = (fp.x_edge - fm.x_edge) / (2.0 * dt);
            CHECK(slope == doctest::Approx(2.0 * f0.u_double).epsilon(1e-6));
        }
    }
}

TEST_CASE("edge tracing from the cusp") {
    auto ic = lorentzian();
    auto cp = find_catastrophe(ic);
    auto curves = trace_edges(ic, cp, 2.0, 60);
    REQUIRE(!curves.harmonic.empty());
    REQUIRE(!curves.soliton.empty());
    SUBCASE("curves emanate from the cusp") {
        CHECK(std::abs(curves.harmonic.front().x - cp.x_c) < 2e-2);
        CHECK(std::abs(curves.soliton.front().x - cp.x_c) < 2e-2);
    }
    SUBCASE("cusp asymptotics") {
        const double uppp = 27.0 * std::sqrt(3.0) / 8.0;
        for (double dt : {1e-4, 5e-4, 1e-3}) {
            const double t = cp.t_c + dt;
            const double ref = (2.0 / 3.0) * std::pow(dt, 1.5) /
                               (cp.t_c * cp.t_c * std::sqrt(uppp));
            // harmonic edge: minus branch; soliton edge: plus branch
            const double xh = [&] {
                auto f = edge_frame(ic, t, EdgeKind::harmonic);
                return f.x_edge;
            }();
            const double xs = [&] {
                auto f = edge_frame(ic, t, EdgeKind::soliton);
                return f.x_edge;
            }();
            const double devh = xh - cp.x_c - 2.0 * cp.u_c * dt;
            const double devs = xs - cp.x_c - 2.0 * cp.u_c * dt;
            CHECK(devh == doctest::Approx(-ref).epsilon(0.10));
            CHECK(devs == doctest::Approx(ref).epsilon(0.10));
        }
    }
    SUBCASE("refinement stability at matching times") {
        auto fine = trace_edges(ic, cp, 2.0, 120);
        // every second sample of the fine trace shares its t with the coarse one
        for (std::size_t i = 0; i < curves.soliton.size(); ++i) {
            const auto& c = curves.soliton[i];
            const auto& f = fine.soliton[2 * i + 1];
            CHECK(std::abs(c.t - f.t) < 1e-12);
            CHECK(std::abs(c.x - f.x) < 1e-8);
        }
    }
    SUBCASE("csv export shape") {
        auto csv = edge_curve_csv(curves.soliton_frames);
        CHECK(csv.rfind("t,x_edge,", 0) == 0);
        CHECK(std::count(csv.begin(), csv.end(), '\n') ==
              long(curves.soliton_frames.size()) + 1);
    }
}

TEST_CASE("burgers branches and weak limit") {
    auto ic = lorentzian();
    SUBCASE("single branch before the catastrophe") {
        auto b = burgers_branches(ic, 0.1, 0.0);
        REQUIRE(b.size() == 1);
        CHECK(weak_limit_ubar(ic, 0.1, 0.0) == doctest::Approx(b[0]));
    }
    SUBCASE("three branches inside the caustic") {
        auto fh = edge_frame(ic, 2.0, EdgeKind::harmonic);
        auto fs = edge_frame(ic, 2.0, EdgeKind::soliton);
        const double x = 0.5 * (fh.x_edge + fs.x_edge);
        auto b = burgers_branches(ic, 2.0, x);
        REQUIRE(b.size() == 3);
        CHECK(b[0] < b[1]);
        CHECK(b[1] < b[2]);
        CHECK(weak_limit_ubar(ic, 2.0, x) == doctest::Approx(b[0] - b[1] + b[2]));
    }
    SUBCASE("caustic point rejected") {
        auto fs = edge_frame(ic, 2.0, EdgeKind::soliton);
        CHECK_THROWS_AS((void)burgers_branches(ic, 2.0, fs.x_edge), OnCaustic);
    }
    SUBCASE("odd branch count across a sweep") {
        for (double x = -3.0; x <= 9.0; x += 0.37) {
            try {
                CHECK(burgers_branches(ic, 2.0, x).size() % 2 == 1);
            } catch (const OnCaustic&) {
                // permissible on the locus itself
            }
        }
    }
}
