"""Gauss-Jacobi quadrature and brute-force inner-product oracles.

The rules are built by the Golub-Welsch procedure: nodes are the eigenvalues
of the symmetric tridiagonal recurrence matrix, weights come from the first
components of its normalized eigenvectors scaled by the zeroth moment.  The
oracles below integrate raw polynomial products against the appropriate
weight and are the independent cross-check for every closed-form matrix
entry and norm; they never touch the closed-form entry formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .specfun import (
    FractionalOrder,
    JacobiWeightPair,
    _jacobi_all,
    basis_coeff,
    jacobi_norm_sq,
)

__all__ = [
    "QuadratureRule",
    "gauss_jacobi",
    "jacobi_weight_moments",
    "oracle_mass_entry",
    "oracle_a_inner",
]


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """An m-node Gauss rule for a Jacobi weight: exact on degree <= 2m-1."""

    params: JacobiWeightPair
    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, values: np.ndarray) -> float:
        """Weighted sum of integrand values sampled at the nodes."""
        return float(np.dot(self.weights, values))


def _recurrence_coefficients(a: float, b: float, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal and off-diagonal of the m x m symmetric recurrence matrix."""
    k = np.arange(m, dtype=float)
    s = 2.0 * k + a + b
    diag = np.empty(m)
    diag[0] = (b - a) / (a + b + 2.0)
    if m > 1:
        diag[1:] = (b * b - a * a) / (s[1:] * (s[1:] + 2.0))
    offdiag_sq = np.empty(max(m - 1, 0))
    if m > 1:
        # k = 1 handled separately: the generic formula is 0/0 when a+b = -1.
        offdiag_sq[0] = 4.0 * (a + 1.0) * (b + 1.0) / ((a + b + 2.0) ** 2 * (a + b + 3.0))
    if m > 2:
        kk = k[2:]
        sk = s[2:]
        offdiag_sq[1:] = (
            4.0 * kk * (kk + a) * (kk + b) * (kk + a + b)
            / (sk * sk * (sk + 1.0) * (sk - 1.0))
        )
    return diag, np.sqrt(offdiag_sq)


@lru_cache(maxsize=512)
def _rule_arrays(a: float, b: float, m: int) -> tuple[np.ndarray, np.ndarray]:
    diag, offdiag = _recurrence_coefficients(a, b, m)
    try:
        nodes, vecs = eigh_tridiagonal(diag, offdiag)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - signals a bug
        raise RuntimeError(
            f"tridiagonal eigensolve failed for weight ({a}, {b}) with {m} nodes"
        ) from exc
    weights = jacobi_norm_sq(JacobiWeightPair(a, b), 0) * vecs[0] ** 2
    if a == b:
        # Symmetric weight: enforce the exact node/weight symmetry about 0.
        nodes = 0.5 * (nodes - nodes[::-1])
        weights = 0.5 * (weights + weights[::-1])
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_jacobi(params: JacobiWeightPair, m: int) -> QuadratureRule:
    """Construct the m-node Gauss-Jacobi rule for ``(1-x)^a (1+x)^b``."""
    if m < 1:
        raise ValueError(f"rule size must be positive, got {m}")
    if not (params.a > -1 and params.b > -1):
        raise ValueError(f"weight exponents must exceed -1, got ({params.a}, {params.b})")
    nodes, weights = _rule_arrays(float(params.a), float(params.b), int(m))
    return QuadratureRule(params, nodes, weights)


def jacobi_weight_moments(params: JacobiWeightPair, max_power: int) -> np.ndarray:
    """Weighted monomial moments ``integral x^p (1-x)^a (1+x)^b dx`` for p <= max_power.

    The zeroth moment is a gamma ratio; higher moments follow from the
    integration-by-parts recurrence
    ``(p + a + b + 2) I_{p+1} = p I_{p-1} + (b - a) I_p``.
    """
    a, b = params.a, params.b
    moments = np.empty(max_power + 1)
    moments[0] = jacobi_norm_sq(params, 0)
    if max_power >= 1:
        moments[1] = (b - a) * moments[0] / (a + b + 2.0)
    for p in range(1, max_power):
        moments[p + 1] = (p * moments[p - 1] + (b - a) * moments[p]) / (p + a + b + 2.0)
    return moments


def _pair_rule(order: FractionalOrder, weight_scale: float, i: int, j: int) -> QuadratureRule:
    # Smallest rule exact for the degree i+j product: ceil((i+j)/2) + 1 nodes.
    m = (i + j + 1) // 2 + 1
    s = weight_scale * order.alpha
    return gauss_jacobi(JacobiWeightPair(s, s), m)


def oracle_mass_entry(order: FractionalOrder, i: int, j: int) -> float:
    """Mass-matrix entry by direct quadrature of the weighted polynomial product.

    Integrates ``c_i c_j (1-x^2)^{2 alpha} P_i P_j`` with a rule that is exact
    for the polynomial part; independent of the closed-form entry formula.
    """
    if i < 0 or j < 0:
        raise ValueError("indices must be nonnegative")
    rule = _pair_rule(order, 2.0, i, j)
    pair = JacobiWeightPair(order.alpha, order.alpha)
    rows = _jacobi_all(pair, max(i, j), rule.nodes)
    return basis_coeff(order, i) * basis_coeff(order, j) * rule.integrate(rows[i] * rows[j])


def oracle_a_inner(order: FractionalOrder, m: int, n: int) -> float:
    """Energy inner product of two unnormalized basis functions by quadrature.

    Uses the derivative image of one factor, reducing the inner product to a
    gamma-ratio prefactor times a weighted Jacobi product integral.
    """
    if m < 0 or n < 0:
        raise ValueError("indices must be nonnegative")
    rule = _pair_rule(order, 1.0, m, n)
    pair = JacobiWeightPair(order.alpha, order.alpha)
    rows = _jacobi_all(pair, max(m, n), rule.nodes)
    prefactor = math.exp(
        math.lgamma(m + 2.0 * order.alpha + 1.0) - math.lgamma(m + 1.0)
    )
    return prefactor * rule.integrate(rows[m] * rows[n])
