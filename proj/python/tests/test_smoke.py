"""Smoke tests for the python bindings."""

import json
import math

import pytest

import bo


def lorentzian():
    return bo.RationalIC(poles=[1j], residues=[-1j])


def test_initial_data_roundtrip():
    ic = lorentzian()
    assert len(ic) == 1
    assert bo.u0(ic, 0.0) == pytest.approx(2.0)
    assert bo.u0(ic, 1.0) == pytest.approx(1.0)
    ic2 = bo.RationalIC.from_json(ic.to_json())
    assert ic2.poles == ic.poles


def test_validation_rejects_lower_half_plane_pole():
    with pytest.raises(Exception):
        bo.RationalIC(poles=[-1j], residues=[1j])


def test_catastrophe_point():
    cp = bo.find_catastrophe(lorentzian())
    assert cp.y_c == pytest.approx(1.0 / math.sqrt(3.0), abs=1e-10)
    assert cp.u_c == pytest.approx(1.5, abs=1e-10)
    assert cp.t_c == pytest.approx(8.0 / (3.0 * math.sqrt(3.0)) / 4.0, rel=1e-8)


def test_solve_point_matches_burgers_before_breaking():
    ic = lorentzian()
    t = 0.2
    s = bo.solve_point(ic, t, 0.5, 2.0**-8)
    (u_b,) = bo.burgers_branches(ic, t, 0.5)
    assert s.u == pytest.approx(u_b, abs=3 * 2.0**-8)


def test_solve_grid_matches_solve_point():
    ic = lorentzian()
    xs = [-0.5, 0.0, 0.5]
    grid = bo.solve_grid(ic, 0.5, xs, 2.0**-6)
    assert [g.x for g in grid] == xs
    single = bo.solve_point(ic, 0.5, 0.0, 2.0**-6)
    assert grid[1].u == single.u


def test_edge_frame_and_approximations():
    ic = lorentzian()
    fr = bo.edge_frame(ic, 2.0, bo.EdgeKind.soliton)
    lam = bo.lambda_soliton(ic, fr)
    u_approx = bo.soliton_edge_approx(ic, fr, lam, -1.0, 2.0**-6)
    x = fr.x_edge + fr.k_edge * (2.0**-6) ** (2.0 / 3.0) * -1.0
    u_exact = bo.solve_point(ic, 2.0, x, 2.0**-6).u
    assert u_approx == pytest.approx(u_exact, abs=0.35)

    fh = bo.edge_frame(ic, 2.0, bo.EdgeKind.harmonic)
    assert fh.kappa > 0
    assert bo.Lambda_harmonic(ic, fh) == pytest.approx(-1.87700894, abs=1e-6)


def test_pearcey_and_profile():
    ev = bo.pearcey_tau(0.0, 0.0)
    assert ev.ode_residual() < 1e-10
    # tau(0,0) = sqrt(2) Gamma(5/4) e^{-i pi/8}
    expected = math.sqrt(2.0) * math.gamma(1.25)
    assert abs(ev.tau) == pytest.approx(expected, rel=1e-12)
    pu = bo.profile_U(0.0, 0.0)
    assert pu.U == pytest.approx(-0.5291496526550551, abs=1e-9)


def test_residuals():
    r1, r2 = bo.coupled_system_residual(0.0, 0.0)
    assert abs(r1) < 1e-8 and abs(r2) < 1e-8
    assert abs(bo.string_equation_residual(0.0, 0.0)) < 1e-4


def test_full_verify_report():
    report = json.loads(bo.full_verify_json())
    assert report["passed"] is True
    assert report["seed"] == 12345
