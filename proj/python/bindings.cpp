// Python bindings for the core operations: initial data, the exact solver,
// caustic geometry, the edge/catastrophe approximations, the Pearcey-type
// profile, and the verification harness.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bo/asymptotics.hpp"
#include "bo/caustic.hpp"
#include "bo/exact_solver.hpp"
#include "bo/rational_data.hpp"
#include "bo/specfun.hpp"
#include "bo/verify.hpp"
#include "bo/version.hpp"

namespace py = pybind11;
using namespace bo;

PYBIND11_MODULE(_bo, m) {
    m.doc() = "Small-dispersion Benjamin-Ono evaluation (exact solution, caustic "
              "geometry, universal edge/catastrophe profiles, verification)";
    m.attr("__version__") = kLibraryVersion;

    py::class_<RationalIC>(m, "RationalIC")
        .def(py::init([](std::vector<cplx> poles, std::vector<cplx> residues) {
                 RationalIC ic{std::move(poles), std::move(residues)};
                 ic.validate();
                 return ic;
             }),
             py::arg("poles"), py::arg("residues"))
        .def_readonly("poles", &RationalIC::poles)
        .def_readonly("residues", &RationalIC::residues)
        .def_static("from_json", &RationalIC::from_json, py::arg("text"))
        .def("to_json", &RationalIC::to_json)
        .def("__len__", &RationalIC::size);

    m.def(
        "u0", [](const RationalIC& ic, double x) { return eval_u0(ic, cplx(x)).real(); },
        py::arg("ic"), py::arg("x"), "Initial datum u0(x) on the real line");

    py::class_<SolutionSample>(m, "SolutionSample")
        .def_readonly("t", &SolutionSample::t)
        .def_readonly("x", &SolutionSample::x)
        .def_readonly("eps", &SolutionSample::eps)
        .def_readonly("u", &SolutionSample::u)
        .def_readonly("cond_estimate", &SolutionSample::cond_estimate)
        .def("__repr__", [](const SolutionSample& s) {
            return "SolutionSample(t=" + std::to_string(s.t) + ", x=" + std::to_string(s.x) +
                   ", u=" + std::to_string(s.u) + ")";
        });

    m.def("solve_point", &solve_point, py::arg("ic"), py::arg("t"), py::arg("x"),
          py::arg("eps"), "Exact solution sample u(t, x; eps)");
    m.def("solve_grid", &solve_grid, py::arg("ic"), py::arg("t"), py::arg("xs"),
          py::arg("eps"), py::call_guard<py::gil_scoped_release>(),
          "Parallel map of solve_point over an x-grid");

    py::class_<CatastrophePoint>(m, "CatastrophePoint")
        .def_readonly("y_c", &CatastrophePoint::y_c)
        .def_readonly("t_c", &CatastrophePoint::t_c)
        .def_readonly("x_c", &CatastrophePoint::x_c)
        .def_readonly("u_c", &CatastrophePoint::u_c)
        .def_readonly("k", &CatastrophePoint::k);

    m.def("find_catastrophe", &find_catastrophe, py::arg("ic"),
          "First gradient-catastrophe point of the characteristic flow");

    py::enum_<EdgeKind>(m, "EdgeKind")
        .value("soliton", EdgeKind::soliton)
        .value("harmonic", EdgeKind::harmonic);

    py::class_<EdgeFrame>(m, "EdgeFrame")
        .def_readonly("kind", &EdgeFrame::kind)
        .def_readonly("t", &EdgeFrame::t)
        .def_readonly("x_edge", &EdgeFrame::x_edge)
        .def_readonly("y_double", &EdgeFrame::y_double)
        .def_readonly("y_simple", &EdgeFrame::y_simple)
        .def_readonly("u_double", &EdgeFrame::u_double)
        .def_readonly("u_simple", &EdgeFrame::u_simple)
        .def_readonly("k_edge", &EdgeFrame::k_edge)
        .def_readonly("c", &EdgeFrame::c)
        .def_readonly("kappa", &EdgeFrame::kappa)
        .def_readonly("omega", &EdgeFrame::omega);

    m.def("edge_frame", &edge_frame, py::arg("ic"), py::arg("t"), py::arg("kind"),
          "Critical-point frame on a caustic branch at time t > t_c");
    m.def("burgers_branches", &burgers_branches, py::arg("ic"), py::arg("t"), py::arg("x"),
          "Characteristic branch values u0(y) at (t, x), ascending");
    m.def("lambda_soliton", &lambda_soliton, py::arg("ic"), py::arg("frame"),
          "Soliton-edge phase constant");
    m.def("Lambda_harmonic", &Lambda_harmonic, py::arg("ic"), py::arg("frame"),
          "Harmonic-edge phase correction");
    m.def("soliton_edge_approx", &soliton_edge_approx, py::arg("ic"), py::arg("frame"),
          py::arg("lam"), py::arg("X_s"), py::arg("eps"));
    m.def("harmonic_edge_approx", &harmonic_edge_approx, py::arg("ic"), py::arg("frame"),
          py::arg("Lam"), py::arg("x"), py::arg("X_h"), py::arg("eps"));

    py::class_<CatastropheSample>(m, "CatastropheSample")
        .def_readonly("u", &CatastropheSample::u)
        .def_readonly("t", &CatastropheSample::t)
        .def_readonly("x", &CatastropheSample::x);

    m.def("catastrophe_approx", &catastrophe_approx, py::arg("ic"), py::arg("cp"),
          py::arg("T"), py::arg("X"), py::arg("eps"),
          "Universal catastrophe approximation in rescaled coordinates");

    py::class_<PearceyEval>(m, "PearceyEval")
        .def_readonly("T", &PearceyEval::T)
        .def_readonly("X", &PearceyEval::X)
        .def_readonly("tau", &PearceyEval::tau)
        .def_readonly("tau_X", &PearceyEval::tau_X)
        .def_readonly("tau_XX", &PearceyEval::tau_XX)
        .def_readonly("tau_XXX", &PearceyEval::tau_XXX)
        .def_readonly("log_scale", &PearceyEval::log_scale)
        .def("ode_residual", &PearceyEval::ode_residual);

    m.def("pearcey_tau", &pearcey_tau, py::arg("T"), py::arg("X"), py::arg("depth") = 10);

    py::class_<ProfileU>(m, "ProfileU")
        .def_readonly("U", &ProfileU::U)
        .def_readonly("U_X", &ProfileU::U_X)
        .def_readonly("U_XX", &ProfileU::U_XX);

    m.def("profile_U", &profile_U, py::arg("T"), py::arg("X"), py::arg("depth") = 10);
    m.def("airy", &airy, py::arg("z"), "(Ai(z), Ai'(z)) for complex z, |z| <= 50");
    m.def("airy_zero", &airy_zero, py::arg("n"), "n-th negative zero of Ai, n in 1..64");

    m.def("string_equation_residual", &string_equation_residual, py::arg("T"), py::arg("X"),
          py::arg("L_cut") = 100.0, py::arg("tol") = 1e-7);
    m.def("coupled_system_residual", &coupled_system_residual, py::arg("T"), py::arg("X"));
    m.def(
        "full_verify_json", [](unsigned seed) { return full_verify(seed).to_json(); },
        py::arg("seed") = 12345u, py::call_guard<py::gil_scoped_release>(),
        "Identity suite report as a JSON string");
    m.def("set_solver_threads", &set_solver_threads, py::arg("n"));
}
