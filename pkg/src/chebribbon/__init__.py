"""Exact spectra, wavefunctions, and edge-state phase diagrams of
anisotropic square and triangular tight-binding ribbons.

The secular problem of each ribbon reduces to Chebyshev polynomials of the
second kind in a reduced energy variable; this package evaluates those
closed forms (bulk bands, exponentially localized edge branches, zero
modes) and cross-validates them against dense diagonalization.
"""

from .chebpoly import (det_perturbed_corner, logcosh, logsinh, u_all, u_eval,
                       u_hyp, u_hyp_log, u_log, u_pair, u_ratio_prev, u_trig,
                       u_zeros)
from .classify import (StateClass, StateLabel, classify_analytic_square,
                       classify_analytic_triangle, classify_numeric, ipr,
                       model_edge_sides)
from .errors import (DegenerateParameterError, HermiticityError,
                     NoEdgeStateError, RootCountError, SingularArgumentError)
from .hamiltonian import (BlochMatrix, ModelKind, RibbonModel, Spectrum,
                          SquareHoppings, TriangleEdge, TriangleHoppings,
                          build_beta, build_square_bloch,
                          build_triangle_bloch, eigensolve_dense,
                          state_overlap, subspace_overlap)
from .square_ribbon import (EdgeBranchPoint, EdgeRegime, RegimeVerdict,
                            ZeroModeState, d_omega_d_xi, edge_regime,
                            extrema_ellipse_residual, lr_isotropic_spectrum,
                            lr_isotropic_state, solve_zero_mode_sum,
                            sublattice_link, xi_of_k, zero_mode_full_state,
                            zero_mode_momenta, zero_mode_state,
                            zigzag_bulk_components, zigzag_bulk_state,
                            zigzag_edge_branch, zigzag_edge_u_from_xi,
                            zigzag_full_state, zigzag_secular_residual,
                            zigzag_spectrum)
from .triangle_ribbon import (TriangleEdgeSolution, TriangleRoot,
                              default_u_grid, linear_spectrum, tau_of_k,
                              zeta_of_k, zz1_edge_existence, zz1_edge_profile,
                              zz1_edge_solutions, zz1_edge_state, zz1_roots,
                              zz1_secular_residual, zz1_spectrum, zz1_state,
                              zz2_edge_bloch_state, zz2_edge_existence,
                              zz2_edge_profile, zz2_edge_solutions,
                              zz2_edge_state, zz2_roots, zz2_secular_residual,
                              zz2_spectrum, zz2_state)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # chebpoly
    "u_pair", "u_eval", "u_all", "u_log", "u_ratio_prev", "u_trig", "u_hyp",
    "u_hyp_log", "u_zeros", "det_perturbed_corner", "logsinh", "logcosh",
    # errors
    "DegenerateParameterError", "HermiticityError", "NoEdgeStateError",
    "RootCountError", "SingularArgumentError",
    # hamiltonian
    "ModelKind", "TriangleEdge", "SquareHoppings", "TriangleHoppings",
    "RibbonModel", "BlochMatrix", "Spectrum", "build_beta",
    "build_square_bloch", "build_triangle_bloch", "eigensolve_dense",
    "state_overlap", "subspace_overlap",
    # square_ribbon
    "xi_of_k", "zigzag_secular_residual", "zigzag_spectrum",
    "zigzag_edge_u_from_xi", "zigzag_bulk_components", "zigzag_bulk_state",
    "EdgeBranchPoint", "zigzag_edge_branch", "sublattice_link",
    "zigzag_full_state", "RegimeVerdict", "EdgeRegime", "edge_regime",
    "extrema_ellipse_residual", "d_omega_d_xi", "lr_isotropic_spectrum",
    "lr_isotropic_state", "ZeroModeState", "zero_mode_momenta",
    "zero_mode_state", "zero_mode_full_state", "solve_zero_mode_sum",
    # triangle_ribbon
    "zeta_of_k", "tau_of_k", "linear_spectrum", "zz1_secular_residual",
    "zz2_secular_residual", "zz1_state", "zz2_state", "TriangleRoot",
    "zz1_roots", "zz2_roots", "zz1_spectrum", "zz2_spectrum",
    "TriangleEdgeSolution", "zz1_edge_solutions", "zz2_edge_solutions",
    "zz1_edge_profile", "zz2_edge_profile", "zz1_edge_state",
    "zz2_edge_state", "zz2_edge_bloch_state", "zz1_edge_existence",
    "zz2_edge_existence", "default_u_grid",
    # classify
    "StateLabel", "StateClass", "ipr", "classify_analytic_square",
    "classify_analytic_triangle", "classify_numeric", "model_edge_sides",
]
