"""Small-dispersion Benjamin-Ono evaluation.

Exact determinant/contour-integral solution for rational initial data,
caustic geometry of the dispersionless limit, the universal soliton-edge,
harmonic-edge and gradient-catastrophe profiles, and the identity-suite
verification harness.
"""

from ._bo import (  # noqa: F401
    CatastrophePoint,
    CatastropheSample,
    EdgeFrame,
    EdgeKind,
    Lambda_harmonic,
    PearceyEval,
    ProfileU,
    RationalIC,
    SolutionSample,
    __version__,
    airy,
    airy_zero,
    burgers_branches,
    catastrophe_approx,
    coupled_system_residual,
    edge_frame,
    find_catastrophe,
    full_verify_json,
    harmonic_edge_approx,
    lambda_soliton,
    pearcey_tau,
    profile_U,
    set_solver_threads,
    solve_grid,
    solve_point,
    soliton_edge_approx,
    string_equation_residual,
    u0,
)
