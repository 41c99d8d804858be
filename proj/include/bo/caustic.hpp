#pragma once

#include <string>
#include <vector>

#include "bo/rational_data.hpp"
#include "bo/rootfind.hpp"

namespace bo {

/// First gradient-catastrophe point of the characteristic flow.
struct CatastrophePoint {
    double y_c = 0.0; ///< inflection of u0: u0''(y_c)=0, u0'(y_c)<0, u0'''(y_c)>0
    double t_c = 0.0; ///< -1/(2 u0'(y_c)), minimal over admissible y
    double x_c = 0.0; ///< y_c - u0(y_c)/u0'(y_c)
    double u_c = 0.0; ///< u0(y_c)
    double k = 0.0;   ///< (2/3)^{1/4} t_c u0'''(y_c)^{1/4}
};

enum class EdgeKind { soliton, harmonic };

/// Per-edge critical-point frame at a fixed time t > t_c.
struct EdgeFrame {
    EdgeKind kind = EdgeKind::soliton;
    double t = 0.0;
    double x_edge = 0.0;
    double y_double = 0.0;
    double y_simple = 0.0;
    double u_double = 0.0; ///< u0(y_double): u_s^B (soliton) or u_h^B (harmonic)
    double u_simple = 0.0; ///< u0(y_simple): u_0^B (soliton) or u_2^B (harmonic)
    double k_edge = 0.0;   ///< k_s = 2t(-u0''(y_double)/2)^{1/3} or k_h = 2t(u0''(y_double)/2)^{1/3}
    double c = 0.0;        ///< soliton amplitude 2(u_double - u_simple), soliton kind only
    double kappa = 0.0;    ///< u_simple - u_double > 0, harmonic kind only
    double omega = 0.0;    ///< u_simple^2 - u_double^2, harmonic kind only
    std::vector<cplx> upper_roots; ///< complex critical points z_{j,.}(t), Im > 0
};

struct EdgeSample {
    double t = 0.0, x = 0.0, y = 0.0;
};

struct EdgeCurves {
    std::vector<EdgeSample> harmonic; ///< (t, x_h(t), y_h(t))
    std::vector<EdgeSample> soliton;  ///< (t, x_s(t), y_s(t))
    std::vector<EdgeFrame> harmonic_frames;
    std::vector<EdgeFrame> soliton_frames;
};

/// Locates the first catastrophe point by scanning for real inflections of u0
/// with u0' < 0 and u0''' > 0 and taking the minimal breaking time.
CatastrophePoint find_catastrophe(const RationalIC& ic);

/// All admissible catastrophe candidates (ascending t_c); the first entry is
/// what find_catastrophe returns.
std::vector<CatastrophePoint> find_catastrophe_candidates(const RationalIC& ic);

/// Pseudo-arclength continuation of { x = y + 2t u0(y), 0 = 1 + 2t u0'(y) }
/// in (t, x, y) from the cusp, both branches, sampled up to t_max.
EdgeCurves trace_edges(const RationalIC& ic, const CatastrophePoint& cp, double t_max,
                       int steps);

/// Frame on the requested caustic branch at time t (t > t_c).
EdgeFrame edge_frame(const RationalIC& ic, double t, EdgeKind kind);

/// Burgers branch values u0(y) over all simple real characteristic roots,
/// sorted ascending. Throws OnCaustic when a multiple real root is present.
std::vector<double> burgers_branches(const RationalIC& ic, double t, double x);

/// Alternating sum of the Burgers branches (the weak limit).
double weak_limit_ubar(const RationalIC& ic, double t, double x);

/// CSV rows "t,x_edge,y_double,y_simple,u_double,u_simple,k_edge" for a branch.
std::string edge_curve_csv(const std::vector<EdgeFrame>& frames);

} // namespace bo
