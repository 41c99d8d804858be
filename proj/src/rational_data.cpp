#include "bo/rational_data.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "bo/errors.hpp"

namespace bo {

namespace {

constexpr double kPoleEvalTol = 1e-14;

double dist_point_segment(cplx q, cplx a, cplx b) {
    const cplx ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(q - a);
    double s = ((q.real() - a.real()) * ab.real() + (q.imag() - a.imag()) * ab.imag()) / len2;
    s = std::clamp(s, 0.0, 1.0);
    return std::abs(q - (a + s * ab));
}

} // namespace

void RationalIC::validate() const {
    if (poles.empty()) throw Error("RationalIC: empty pole list");
    if (poles.size() != residues.size())
        throw Error("RationalIC: poles and residues must have equal length");
    for (std::size_t n = 0; n < poles.size(); ++n) {
        if (!(poles[n].imag() > 0.0))
            throw Error("RationalIC: pole " + std::to_string(n) + " must have Im > 0");
        if (residues[n] == cplx(0.0, 0.0))
            throw Error("RationalIC: residue " + std::to_string(n) + " is zero");
        for (std::size_t m = 0; m < n; ++m)
            if (poles[n] == poles[m])
                throw Error("RationalIC: duplicate pole at index " + std::to_string(n));
    }
}

double RationalIC::pole_clearance(std::size_t n) const {
    return 1e-8 * (1.0 + std::abs(poles[n]));
}

RationalIC RationalIC::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    RationalIC ic;
    for (const auto& pr : j.at("poles"))
        ic.poles.emplace_back(pr.at(0).get<double>(), pr.at(1).get<double>());
    for (const auto& cr : j.at("residues"))
        ic.residues.emplace_back(cr.at(0).get<double>(), cr.at(1).get<double>());
    ic.validate();
    return ic;
}

std::string RationalIC::to_json() const {
    nlohmann::json j;
    for (const auto& p : poles) j["poles"].push_back({p.real(), p.imag()});
    for (const auto& c : residues) j["residues"].push_back({c.real(), c.imag()});
    return j.dump();
}

static void check_pole_distance(const RationalIC& ic, cplx z) {
    for (const auto& p : ic.poles) {
        if (std::abs(z - p) < kPoleEvalTol || std::abs(z - std::conj(p)) < kPoleEvalTol)
            throw PoleProximity("evaluation point within tolerance of a pole");
    }
}

cplx eval_u0(const RationalIC& ic, cplx z) {
    check_pole_distance(ic, z);
    cplx s = 0.0;
    for (std::size_t n = 0; n < ic.size(); ++n) {
        s += ic.residues[n] / (z - ic.poles[n]);
        s += std::conj(ic.residues[n]) / (z - std::conj(ic.poles[n]));
    }
    return s;
}

cplx eval_u0_deriv(const RationalIC& ic, cplx z, int order) {
    if (order < 0 || order > 4) throw Error("eval_u0_deriv: order must be in 0..4");
    check_pole_distance(ic, z);
    // d^k/dz^k 1/(z-p) = (-1)^k k! / (z-p)^{k+1}
    double fact = 1.0;
    for (int k = 1; k <= order; ++k) fact *= k;
    const double sign = (order % 2 == 0) ? 1.0 : -1.0;
    cplx s = 0.0;
    for (std::size_t n = 0; n < ic.size(); ++n) {
        cplx d1 = z - ic.poles[n];
        cplx d2 = z - std::conj(ic.poles[n]);
        cplx pw1 = d1, pw2 = d2;
        for (int k = 0; k < order; ++k) { pw1 *= d1; pw2 *= d2; }
        s += ic.residues[n] / pw1 + std::conj(ic.residues[n]) / pw2;
    }
    return sign * fact * s;
}

cplx eval_hprime(const RationalIC& ic, double t, double x, cplx z) {
    if (!(t > 0.0)) throw NonpositiveTime("eval_hprime: t must be positive");
    return (z - x) / (2.0 * t) + eval_u0(ic, z);
}

cplx eval_h_principal(const RationalIC& ic, double t, double x, cplx z) {
    if (!(t > 0.0)) throw NonpositiveTime("eval_h_principal: t must be positive");
    check_pole_distance(ic, z);
    cplx h = (z - x) * (z - x) / (4.0 * t);
    for (std::size_t n = 0; n < ic.size(); ++n) {
        h += ic.residues[n] * std::log(z - ic.poles[n]);
        h += std::conj(ic.residues[n]) * std::log(z - std::conj(ic.poles[n]));
    }
    return h;
}

double integral_u0_real(const RationalIC& ic, double a, double b) {
    // For real y the arguments y - p_n stay in the lower half-plane, so the
    // principal log is continuous along the segment and the antiderivative
    // difference is exact.
    cplx s = 0.0;
    for (std::size_t n = 0; n < ic.size(); ++n)
        s += ic.residues[n] * (std::log(cplx(b) - ic.poles[n]) - std::log(cplx(a) - ic.poles[n]));
    return 2.0 * s.real();
}

PhaseTracker::PhaseTracker(const RationalIC& ic, double t, double x, cplx z0)
    : ic_(&ic), t_(t), x_(x), z_(z0) {
    if (!(t > 0.0)) throw NonpositiveTime("PhaseTracker: t must be positive");
    const std::size_t N = ic.size();
    logs_.resize(2 * N);
    for (std::size_t n = 0; n < N; ++n) {
        logs_[n] = std::log(z0 - ic.poles[n]);
        logs_[N + n] = std::log(z0 - std::conj(ic.poles[n]));
    }
    logs0_ = logs_;
}

void PhaseTracker::advance(cplx z1, double clearance) {
    const std::size_t N = ic_->size();
    for (std::size_t n = 0; n < 2 * N; ++n) {
        const cplx q = (n < N) ? ic_->poles[n] : std::conj(ic_->poles[n - N]);
        const double clr = clearance > 0.0 ? clearance : ic_->pole_clearance(n < N ? n : n - N);
        if (dist_point_segment(q, z_, z1) < clr)
            throw PathTooCloseToPole("phase continuation segment passes within clearance of a pole");
        // A straight chord subtends an angle < pi at any point off the chord,
        // so the principal log of the endpoint ratio is the continuous
        // continuation in one exact step.
        logs_[n] += std::log((z1 - q) / (z_ - q));
    }
    z_ = z1;
}

cplx PhaseTracker::h() const {
    cplx v = (z_ - x_) * (z_ - x_) / (4.0 * t_);
    const std::size_t N = ic_->size();
    for (std::size_t n = 0; n < N; ++n) {
        v += ic_->residues[n] * logs_[n];
        v += std::conj(ic_->residues[n]) * logs_[N + n];
    }
    return v;
}

double PhaseTracker::exponent(double eps) const {
    return (cplx(0.0, -1.0) * h()).real() / eps;
}

PhasePoint PhaseTracker::point() const {
    PhasePoint pp;
    pp.z = z_;
    pp.h = h();
    pp.winding.resize(logs_.size());
    for (std::size_t n = 0; n < logs_.size(); ++n)
        pp.winding[n] = (logs_[n].imag() - logs0_[n].imag()) / (2.0 * M_PI);
    return pp;
}

std::vector<PhasePoint> accumulate_phase(const RationalIC& ic, double t, double x,
                                         const ContourPath& path) {
    if (!path.valid()) throw Error("accumulate_phase: invalid path");
    PhaseTracker tr(ic, t, x, path.nodes.front());
    std::vector<PhasePoint> out;
    out.reserve(path.nodes.size());
    out.push_back(tr.point());
    for (std::size_t i = 1; i < path.nodes.size(); ++i) {
        tr.advance(path.nodes[i], path.clearance);
        out.push_back(tr.point());
    }
    return out;
}

} // namespace bo
