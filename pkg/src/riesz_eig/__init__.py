"""Jacobi-Galerkin spectral eigensolver for the fractional operator on (-1, 1).

The basis functions carry the endpoint singularity ``(1-x^2)^alpha`` of the
true eigenfunctions, which makes the stiffness matrix the identity and leaves
a closed-form symmetric positive-definite mass matrix whose parity blocks are
diagonalized independently.
"""

from .specfun import (
    FractionalOrder,
    JacobiWeightPair,
    SignedLogMagnitude,
    a_norm_sq_gjf,
    basis_coeff,
    gjf_eval,
    jacobi_eval,
    jacobi_norm_sq,
    log_gamma,
    recip_gamma_signed,
    riesz_derivative_image,
    tail_seminorm_sq,
)
from .quadrature import QuadratureRule, gauss_jacobi, oracle_a_inner, oracle_mass_entry
from .assembly import MassMatrix, assemble_mass, mass_entry, stiffness_check
from .eig import EigenSolution, eval_eigenfunction, solve, sym_eig
from .analysis import (
    ConvergenceTable,
    SpectrumReport,
    condition_number,
    condition_slope,
    convergence_table,
    inverse_inequality_ratio,
    projection_error,
    reliable_eigenvalues,
    solve_sweep,
    spectrum_report,
    weyl_ratios,
)

__version__ = "0.1.0"

__all__ = [
    "FractionalOrder",
    "JacobiWeightPair",
    "SignedLogMagnitude",
    "QuadratureRule",
    "MassMatrix",
    "EigenSolution",
    "SpectrumReport",
    "ConvergenceTable",
    "log_gamma",
    "recip_gamma_signed",
    "jacobi_eval",
    "jacobi_norm_sq",
    "gjf_eval",
    "basis_coeff",
    "riesz_derivative_image",
    "a_norm_sq_gjf",
    "tail_seminorm_sq",
    "gauss_jacobi",
    "oracle_mass_entry",
    "oracle_a_inner",
    "mass_entry",
    "assemble_mass",
    "stiffness_check",
    "sym_eig",
    "solve",
    "eval_eigenfunction",
    "solve_sweep",
    "weyl_ratios",
    "condition_number",
    "condition_slope",
    "convergence_table",
    "reliable_eigenvalues",
    "projection_error",
    "inverse_inequality_ratio",
    "spectrum_report",
]
