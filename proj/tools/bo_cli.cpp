// Command-line front end: exact-solution sampling, caustic geometry, edge and
// catastrophe profiles, Pearcey evaluation, the identity suite, and
// convergence experiments. Tabular output is CSV with a header comment
// carrying the library version and the configuration hash; scalar reports are
// JSON.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bo/asymptotics.hpp"
#include "bo/caustic.hpp"
#include "bo/errors.hpp"
#include "bo/exact_solver.hpp"
#include "bo/rational_data.hpp"
#include "bo/specfun.hpp"
#include "bo/verify.hpp"
#include "bo/version.hpp"

namespace {

using nlohmann::json;

struct GlobalOpts {
    std::string config_path;
    std::string out_path;
    std::string format; // "csv", "json", or "" = subcommand default
    double tol = 1e-10;
    unsigned threads = 0;

    std::string config_text;  // raw bytes of the config file ("" if none)
    std::optional<json> config;
};

// FNV-1a, printed as 16 hex digits: a stable fingerprint of the exact config
// bytes so CSV artifacts can be traced back to the run that produced them.
std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void load_config(GlobalOpts& g) {
    if (g.config_path.empty()) return;
    std::ifstream in(g.config_path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + g.config_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    g.config_text = ss.str();
    g.config = json::parse(g.config_text);
}

bo::RationalIC initial_data(const GlobalOpts& g) {
    if (g.config && g.config->contains("initial_data"))
        return bo::RationalIC::from_json((*g.config)["initial_data"].dump());
    // default: the Lorentzian hump u0(x) = 2/(1 + x^2)
    return bo::RationalIC{{bo::cplx(0.0, 1.0)}, {bo::cplx(0.0, -1.0)}};
}

std::string csv_banner(const GlobalOpts& g) {
    const std::string hash = g.config_text.empty() ? "default" : fnv1a_hex(g.config_text);
    return std::string("# bo ") + bo::kLibraryVersion + " config=" + hash + "\n";
}

void emit(const GlobalOpts& g, const std::string& text, const std::string& suffix = "") {
    if (g.out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::string path = g.out_path;
    if (!suffix.empty()) {
        const auto dot = path.rfind('.');
        if (dot == std::string::npos)
            path += "_" + suffix;
        else
            path.insert(dot, "_" + suffix);
    }
    std::ofstream out(path);
    if (!out) throw CLI::ValidationError("--out", "cannot write " + path);
    out << text;
}

// Accepts "2^-6" style dyadic strings as well as plain decimal values.
double parse_eps(const std::string& s) {
    if (s.rfind("2^", 0) == 0) return std::ldexp(1.0, std::stoi(s.substr(2)));
    return std::stod(s);
}

struct XGrid {
    double lo = 0.0, hi = 0.0;
    int n = 0;
    std::vector<double> values() const {
        std::vector<double> v;
        for (int i = 0; i < n; ++i)
            v.push_back(n == 1 ? lo : lo + (hi - lo) * i / double(n - 1));
        return v;
    }
};

// "--Xgrid lo:hi:count"
XGrid parse_xgrid(const std::string& s) {
    XGrid g;
    char colon1 = 0, colon2 = 0;
    std::istringstream is(s);
    if (!(is >> g.lo >> colon1 >> g.hi >> colon2 >> g.n) || colon1 != ':' || colon2 != ':' ||
        g.n < 1)
        throw CLI::ValidationError("--Xgrid", "expected lo:hi:count with count >= 1");
    return g;
}

int depth_from_tol(double tol) {
    const int d = int(std::lround(-std::log10(std::max(tol, 1e-13))));
    return std::clamp(d, 6, 12);
}

// --- subcommand bodies ------------------------------------------------------

void run_catastrophe_point(const GlobalOpts& g) {
    const auto ic = initial_data(g);
    const auto cp = bo::find_catastrophe(ic);
    if (g.format == "csv") {
        std::ostringstream os;
        os << csv_banner(g) << "y_c,t_c,x_c,u_c,k\n";
        os.precision(15);
        os << cp.y_c << ',' << cp.t_c << ',' << cp.x_c << ',' << cp.u_c << ',' << cp.k << '\n';
        emit(g, os.str());
    } else {
        json j{{"y_c", cp.y_c}, {"t_c", cp.t_c}, {"x_c", cp.x_c}, {"u_c", cp.u_c}, {"k", cp.k}};
        emit(g, j.dump(2));
    }
}

void run_caustic(const GlobalOpts& g, double t_max, int steps) {
    const auto ic = initial_data(g);
    const auto cp = bo::find_catastrophe(ic);
    const auto curves = bo::trace_edges(ic, cp, t_max, steps);
    if (g.format == "json") {
        const auto branch = [](const std::vector<bo::EdgeFrame>& fr) {
            json arr = json::array();
            for (const auto& f : fr)
                arr.push_back({{"t", f.t},
                               {"x_edge", f.x_edge},
                               {"y_double", f.y_double},
                               {"y_simple", f.y_simple},
                               {"u_double", f.u_double},
                               {"u_simple", f.u_simple},
                               {"k_edge", f.k_edge}});
            return arr;
        };
        json j{{"soliton", branch(curves.soliton_frames)},
               {"harmonic", branch(curves.harmonic_frames)}};
        emit(g, j.dump(2));
        return;
    }
    // CSV: one file (or stdout block) per branch
    const std::string head = csv_banner(g);
    if (g.out_path.empty()) {
        emit(g, head + "# branch: soliton\n" + bo::edge_curve_csv(curves.soliton_frames) +
                    "# branch: harmonic\n" + bo::edge_curve_csv(curves.harmonic_frames));
    } else {
        emit(g, head + bo::edge_curve_csv(curves.soliton_frames), "soliton");
        emit(g, head + bo::edge_curve_csv(curves.harmonic_frames), "harmonic");
    }
}

void run_solve(const GlobalOpts& g, double t, double x_min, double x_max, int points,
               const std::string& eps_str) {
    const auto ic = initial_data(g);
    const double eps = parse_eps(eps_str);
    const auto xs = XGrid{x_min, x_max, points}.values();
    const auto grid = bo::solve_grid(ic, t, xs, eps);
    if (g.format == "json") {
        json arr = json::array();
        for (const auto& s : grid)
            arr.push_back({{"t", s.t},
                           {"x", s.x},
                           {"eps", s.eps},
                           {"u", s.u},
                           {"cond_estimate", s.cond_estimate}});
        emit(g, arr.dump(2));
        return;
    }
    std::ostringstream os;
    os << csv_banner(g) << "t,x,eps,u,cond_estimate\n";
    os.precision(15);
    for (const auto& s : grid)
        os << s.t << ',' << s.x << ',' << s.eps << ',' << s.u << ',' << s.cond_estimate << '\n';
    emit(g, os.str());
}

void run_edge(const GlobalOpts& g, const std::string& kind, double t, const std::string& eps_str,
              const std::string& xgrid_str) {
    const auto ic = initial_data(g);
    const double eps = parse_eps(eps_str);
    const auto grid_spec = parse_xgrid(xgrid_str);
    const bo::EdgeKind ek =
        kind == "soliton" ? bo::EdgeKind::soliton : bo::EdgeKind::harmonic;
    if (kind != "soliton" && kind != "harmonic")
        throw CLI::ValidationError("--kind", "expected soliton or harmonic");
    const auto frame = bo::edge_frame(ic, t, ek);
    const double phase = ek == bo::EdgeKind::soliton ? bo::lambda_soliton(ic, frame)
                                                     : bo::Lambda_harmonic(ic, frame);
    const auto Xs = grid_spec.values();
    std::vector<double> xs;
    for (double X : Xs) xs.push_back(frame.x_edge + frame.k_edge * std::pow(eps, 2.0 / 3.0) * X);
    const auto exact = bo::solve_grid(ic, t, xs, eps);
    std::ostringstream os;
    json arr = json::array();
    os << csv_banner(g) << "X,x,exact,approx,diff\n";
    os.precision(15);
    for (std::size_t i = 0; i < Xs.size(); ++i) {
        const double approx =
            ek == bo::EdgeKind::soliton
                ? bo::soliton_edge_approx(ic, frame, phase, Xs[i], eps)
                : bo::harmonic_edge_approx(ic, frame, phase, xs[i], Xs[i], eps);
        if (g.format == "json")
            arr.push_back({{"X", Xs[i]},
                           {"x", xs[i]},
                           {"exact", exact[i].u},
                           {"approx", approx},
                           {"diff", exact[i].u - approx}});
        else
            os << Xs[i] << ',' << xs[i] << ',' << exact[i].u << ',' << approx << ','
               << exact[i].u - approx << '\n';
    }
    if (g.format == "json")
        emit(g, arr.dump(2));
    else
        emit(g, os.str());
}

void run_catastrophe(const GlobalOpts& g, double T, const std::string& xgrid_str,
                     const std::string& eps_str) {
    const auto ic = initial_data(g);
    const double eps = parse_eps(eps_str);
    const auto grid_spec = parse_xgrid(xgrid_str);
    const auto cp = bo::find_catastrophe(ic);
    const auto Xs = grid_spec.values();
    std::vector<bo::CatastropheSample> approx;
    std::vector<double> xs;
    for (double X : Xs) {
        approx.push_back(bo::catastrophe_approx(ic, cp, T, X, eps));
        xs.push_back(approx.back().x);
    }
    const auto exact = bo::solve_grid(ic, approx.front().t, xs, eps);
    std::ostringstream os;
    json arr = json::array();
    os << csv_banner(g) << "X,x,exact,approx,diff\n";
    os.precision(15);
    for (std::size_t i = 0; i < Xs.size(); ++i) {
        if (g.format == "json")
            arr.push_back({{"X", Xs[i]},
                           {"x", xs[i]},
                           {"exact", exact[i].u},
                           {"approx", approx[i].u},
                           {"diff", exact[i].u - approx[i].u}});
        else
            os << Xs[i] << ',' << xs[i] << ',' << exact[i].u << ',' << approx[i].u << ','
               << exact[i].u - approx[i].u << '\n';
    }
    if (g.format == "json")
        emit(g, arr.dump(2));
    else
        emit(g, os.str());
}

void run_pearcey(const GlobalOpts& g, double T, double X) {
    const auto ev = bo::pearcey_tau(T, X, depth_from_tol(g.tol));
    const auto pu = bo::profile_U(T, X, depth_from_tol(g.tol));
    json j{{"T", T},
           {"X", X},
           {"tau_re", ev.tau.real()},
           {"tau_im", ev.tau.imag()},
           {"log_scale", ev.log_scale},
           {"U", pu.U},
           {"U_X", pu.U_X},
           {"ode_residual", ev.ode_residual()}};
    emit(g, j.dump(2));
}

int run_verify(const GlobalOpts& g, unsigned seed) {
    const auto rep = bo::full_verify(seed);
    emit(g, rep.to_json());
    return rep.passed() ? 0 : 1;
}

void run_converge(const GlobalOpts& g) {
    if (!g.config || !g.config->contains("experiments"))
        throw CLI::ValidationError("--config", "converge needs a config with \"experiments\"");
    const auto ic = initial_data(g);
    json jout = json::array();
    std::ostringstream os;
    os << csv_banner(g);
    for (const auto& ex : (*g.config)["experiments"]) {
        const auto regime = bo::regime_from_string(ex.at("regime").get<std::string>());
        const double t_or_T = ex.contains("t") ? ex.at("t").get<double>()
                                               : ex.at("T").get<double>();
        std::vector<double> eps_list;
        for (const auto& e : ex.at("eps"))
            eps_list.push_back(e.is_string() ? parse_eps(e.get<std::string>())
                                             : e.get<double>());
        const auto win = ex.at("window");
        const int pts = ex.contains("grid_points") ? ex.at("grid_points").get<int>() : 121;
        auto table = bo::convergence_experiment(
            ic, regime, t_or_T, {win.at(0).get<double>(), win.at(1).get<double>()}, eps_list,
            pts);
        if (g.format == "json") {
            json jt{{"regime", bo::regime_to_string(table.regime)},
                    {"eps", table.eps_values},
                    {"max_errors", table.max_errors},
                    {"ratios", table.ratios},
                    {"runtime_s", table.runtime_s},
                    {"first_to_last_ratio", table.first_to_last_ratio()}};
            jout.push_back(jt);
        } else {
            os << table.to_csv() << '\n';
        }
    }
    if (g.format == "json")
        emit(g, jout.dump(2));
    else
        emit(g, os.str());
}

} // namespace

int main(int argc, char** argv) {
    GlobalOpts g;
    CLI::App app{"Small-dispersion Benjamin-Ono evaluator"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand
    app.add_option("--config", g.config_path, "JSON config (initial data / experiments)");
    app.add_option("--out", g.out_path, "output path (default: stdout)");
    app.add_option("--format", g.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--tol", g.tol, "quadrature tolerance for special functions");
    app.add_option("--threads", g.threads, "worker thread cap for grid solves");

    auto* sc_cat = app.add_subcommand("catastrophe-point", "first gradient catastrophe");

    auto* sc_caustic = app.add_subcommand("caustic", "trace both caustic branches");
    double t_max = 0.0;
    int steps = 200;
    sc_caustic->add_option("--t-max", t_max, "continuation end time")->required();
    sc_caustic->add_option("--steps", steps, "continuation samples per branch");

    auto* sc_solve = app.add_subcommand("solve", "sample the exact solution on an x-grid");
    double t = 0.0, x_min = 0.0, x_max = 0.0;
    int points = 1;
    std::string eps_str = "2^-6";
    sc_solve->add_option("--t", t, "time")->required();
    sc_solve->add_option("--x-min", x_min)->required();
    sc_solve->add_option("--x-max", x_max)->required();
    sc_solve->add_option("--points", points)->required();
    sc_solve->add_option("--eps", eps_str, "dispersion parameter (accepts 2^-k)");

    auto* sc_edge = app.add_subcommand("edge", "exact vs edge approximation on an X-grid");
    std::string kind = "soliton", xgrid_str, eps_edge = "2^-6";
    double t_edge = 0.0;
    sc_edge->add_option("--kind", kind, "soliton or harmonic")->required();
    sc_edge->add_option("--t", t_edge)->required();
    sc_edge->add_option("--eps", eps_edge);
    sc_edge->add_option("--Xgrid", xgrid_str, "lo:hi:count in the scaled coordinate")
        ->required();

    auto* sc_gc = app.add_subcommand("catastrophe",
                                     "exact vs catastrophe approximation on an X-grid");
    double T_gc = 0.0;
    std::string xgrid_gc, eps_gc = "2^-6";
    sc_gc->add_option("--T", T_gc)->required();
    sc_gc->add_option("--Xgrid", xgrid_gc)->required();
    sc_gc->add_option("--eps", eps_gc);

    auto* sc_pearcey = app.add_subcommand("pearcey", "tau, U, U_X and ODE residual");
    double T_p = 0.0, X_p = 0.0;
    sc_pearcey->add_option("--T", T_p)->required();
    sc_pearcey->add_option("--X", X_p)->required();

    auto* sc_verify = app.add_subcommand("verify", "run the identity suite");
    unsigned seed = 12345;
    sc_verify->add_option("--seed", seed, "RNG seed (logged in the report)");

    auto* sc_conv = app.add_subcommand("converge", "run configured convergence experiments");

    CLI11_PARSE(app, argc, argv);

    try {
        load_config(g);
        if (g.threads > 0) bo::set_solver_threads(g.threads);
        if (sc_cat->parsed()) run_catastrophe_point(g);
        if (sc_caustic->parsed()) run_caustic(g, t_max, steps);
        if (sc_solve->parsed()) run_solve(g, t, x_min, x_max, points, eps_str);
        if (sc_edge->parsed()) run_edge(g, kind, t_edge, eps_edge, xgrid_str);
        if (sc_gc->parsed()) run_catastrophe(g, T_gc, xgrid_gc, eps_gc);
        if (sc_pearcey->parsed()) run_pearcey(g, T_p, X_p);
        if (sc_verify->parsed()) return run_verify(g, seed);
        if (sc_conv->parsed()) run_converge(g);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
