"""Special-function layer: gamma ratios, Jacobi polynomials and the singular basis.

Everything downstream (quadrature rules, matrix entries, norms) is a ratio of
gamma functions times a polynomial value.  Ratios are always assembled in the
log domain with explicit sign tracking so that large indices never overflow
and reciprocals of Gamma at nonpositive arguments come out as exact zeros.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

__all__ = [
    "FractionalOrder",
    "JacobiWeightPair",
    "SignedLogMagnitude",
    "log_gamma",
    "recip_gamma_signed",
    "jacobi_eval",
    "jacobi_norm_sq",
    "gjf_eval",
    "basis_coeff",
    "riesz_derivative_image",
    "a_norm_sq_gjf",
    "tail_seminorm_sq",
]

_LOG_PI = math.log(math.pi)
_LOG_2 = math.log(2.0)


@dataclass(frozen=True)
class FractionalOrder:
    """Order ``2*alpha`` of the fractional operator.

    The derived integer ``k`` satisfies ``2k - 1 <= two_alpha < 2k + 1`` for
    ``two_alpha >= 1``; for ``two_alpha`` in ``(0, 1)`` we take ``k = 1`` by
    convention (the sign factor ``(-1)**k`` never enters any symmetric
    quantity, only the scale returned by :func:`riesz_derivative_image`).
    """

    two_alpha: float

    def __post_init__(self):
        if not self.two_alpha > 0:
            raise ValueError(f"order must be positive, got {self.two_alpha}")

    @property
    def alpha(self) -> float:
        return 0.5 * self.two_alpha

    @property
    def k(self) -> int:
        return max(1, math.floor(self.alpha + 0.5))

    @property
    def sign_k(self) -> int:
        return -1 if self.k % 2 else 1


@dataclass(frozen=True)
class JacobiWeightPair:
    """Exponent pair ``(a, b)`` of the weight ``(1-x)**a * (1+x)**b``.

    Both exponents must exceed -1 for the weight to be integrable.
    """

    a: float
    b: float

    def __post_init__(self):
        if not (self.a > -1 and self.b > -1):
            raise ValueError(f"weight exponents must exceed -1, got ({self.a}, {self.b})")


def _formal_weight_pair(a: float, b: float) -> JacobiWeightPair:
    # Bypasses the integrability check: used only for the symbolic parameter
    # label of derivative images, never for pointwise evaluation.
    pair = object.__new__(JacobiWeightPair)
    object.__setattr__(pair, "a", float(a))
    object.__setattr__(pair, "b", float(b))
    return pair


@dataclass(frozen=True)
class SignedLogMagnitude:
    """A real number stored as ``sign * exp(log_mag)``.

    ``sign`` is -1, 0 or +1; ``log_mag`` is ignored when ``sign == 0``.
    """

    sign: int
    log_mag: float

    @property
    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_mag)

    def __mul__(self, other: "SignedLogMagnitude") -> "SignedLogMagnitude":
        sign = self.sign * other.sign
        if sign == 0:
            return SignedLogMagnitude(0, -math.inf)
        return SignedLogMagnitude(sign, self.log_mag + other.log_mag)


def _sinpi(x: float) -> float:
    # sin(pi*x) with exact argument reduction to |f| <= 1/2; the naive
    # math.sin(math.pi * x) loses all accuracy for large |x|.
    r = round(x)
    s = math.sin(math.pi * (x - r))
    return -s if r % 2 else s


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for ``x > 0``.

    Backed by the C library's Lanczos-style ``lgamma``, which is well within
    the 1e-14 relative-accuracy budget on (0, 1e6].
    """
    if not x > 0:
        raise ValueError(f"log_gamma requires a positive argument, got {x}")
    return math.lgamma(x)


def recip_gamma_signed(x: float) -> SignedLogMagnitude:
    """``1 / Gamma(x)`` as a signed log magnitude, for any real ``x``.

    At nonpositive integers the reciprocal is an exact zero (sign 0).  For
    negative non-integer arguments the reflection identity
    ``Gamma(x) * Gamma(1-x) = pi / sin(pi*x)`` supplies both sign and
    magnitude without ever evaluating Gamma at a negative point.
    """
    if x > 0:
        return SignedLogMagnitude(1, -math.lgamma(x))
    if x == math.floor(x):
        return SignedLogMagnitude(0, -math.inf)
    s = _sinpi(x)
    sign = 1 if s > 0 else -1
    return SignedLogMagnitude(sign, math.lgamma(1.0 - x) + math.log(abs(s)) - _LOG_PI)


def _recip_gamma_signed_parts(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized :func:`recip_gamma_signed`: arrays of signs and log magnitudes."""
    x = np.asarray(x, dtype=float)
    sign = np.ones_like(x)
    log_mag = np.empty_like(x)

    pos = x > 0
    log_mag[pos] = -gammaln(x[pos])

    neg = ~pos
    at_pole = neg & (x == np.floor(x))
    sign[at_pole] = 0.0
    log_mag[at_pole] = -np.inf

    refl = neg & ~at_pole
    if np.any(refl):
        xr = x[refl]
        r = np.round(xr)
        s = np.sin(np.pi * (xr - r))
        s[r % 2 != 0] *= -1.0
        sign[refl] = np.where(s > 0, 1.0, -1.0)
        log_mag[refl] = gammaln(1.0 - xr) + np.log(np.abs(s)) - _LOG_PI
    return sign, log_mag


def jacobi_eval(params: JacobiWeightPair, n: int, x):
    """Evaluate the Jacobi polynomial of degree ``n`` for the given weight pair.

    Uses the standard three-term recurrence seeded with ``P_0 = 1`` and
    ``P_1 = (a+1) + (a+b+2)(x-1)/2``.  ``x`` may be a scalar or an array
    with entries in [-1, 1].
    """
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    scalar = np.isscalar(x) or np.ndim(x) == 0
    xv = np.atleast_1d(np.asarray(x, dtype=float))
    out = _jacobi_all(params, n, xv)[n]
    return float(out[0]) if scalar else out


def _jacobi_all(params: JacobiWeightPair, n_max: int, x: np.ndarray) -> np.ndarray:
    """All Jacobi polynomial values ``P_0 .. P_{n_max}`` at the points ``x``.

    Returns an array of shape ``(n_max + 1, len(x))``.
    """
    a, b = params.a, params.b
    out = np.empty((n_max + 1, x.size))
    out[0] = 1.0
    if n_max == 0:
        return out
    out[1] = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0
    for k in range(2, n_max + 1):
        s = 2.0 * k + a + b
        c0 = 2.0 * k * (k + a + b) * (s - 2.0)
        c1 = (s - 1.0) * (a * a - b * b)
        c2 = (s - 1.0) * s * (s - 2.0)
        c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s
        out[k] = ((c1 + c2 * x) * out[k - 1] - c3 * out[k - 2]) / c0
    return out


def jacobi_norm_sq(params: JacobiWeightPair, n: int) -> float:
    """Squared weighted L2 norm of the degree-``n`` Jacobi polynomial."""
    a, b = params.a, params.b
    if n == 0:
        # gamma_0 via Gamma(a+b+2) keeps every lgamma argument positive even
        # when a + b + 1 <= 0.
        return math.exp(
            (a + b + 1.0) * _LOG_2
            + math.lgamma(a + 1.0)
            + math.lgamma(b + 1.0)
            - math.lgamma(a + b + 2.0)
        )
    return math.exp(
        (a + b + 1.0) * _LOG_2
        - math.log(2.0 * n + a + b + 1.0)
        + math.lgamma(n + a + 1.0)
        + math.lgamma(n + b + 1.0)
        - math.lgamma(n + 1.0)
        - math.lgamma(n + a + b + 1.0)
    )


def _boundary_weight(alpha: float, x: np.ndarray) -> np.ndarray:
    # (1-x^2)^alpha evaluated as exp(alpha*(log(1-x) + log(1+x))); the two
    # linear factors are kept separate to avoid cancellation in 1 - x^2 near
    # the endpoints, where the result is an exact zero.
    w = np.zeros_like(x)
    inside = np.abs(x) < 1.0
    xi = x[inside]
    w[inside] = np.exp(alpha * (np.log1p(-xi) + np.log1p(xi)))
    return w


def gjf_eval(order: FractionalOrder, n: int, x):
    """Evaluate the boundary-singular basis function ``(1-x^2)^alpha P_n^{alpha,alpha}``.

    Returns exactly 0 at ``x = +-1``.
    """
    alpha = order.alpha
    scalar = np.isscalar(x) or np.ndim(x) == 0
    xv = np.atleast_1d(np.asarray(x, dtype=float))
    pair = JacobiWeightPair(alpha, alpha)
    out = _boundary_weight(alpha, xv) * _jacobi_all(pair, n, xv)[n]
    out[np.abs(xv) == 1.0] = 0.0
    return float(out[0]) if scalar else out


def _log_a_norm_sq(order: FractionalOrder, n: int) -> float:
    # Shared by basis_coeff and a_norm_sq_gjf: basis_coeff is exactly
    # exp(-log/2), so their product is 1 to a few ulps at any degree.
    alpha = order.alpha
    return (
        (2.0 * alpha + 1.0) * _LOG_2
        + 2.0 * (math.lgamma(n + alpha + 1.0) - math.lgamma(n + 1.0))
        - math.log(2.0 * n + 2.0 * alpha + 1.0)
    )


def basis_coeff(order: FractionalOrder, n: int) -> float:
    """Normalization constant making the basis orthonormal in the operator energy norm.

    Computed in the log domain; safe up to ``n = 1e5`` and beyond.
    """
    return math.exp(-0.5 * _log_a_norm_sq(order, n))


def riesz_derivative_image(
    order: FractionalOrder, nu: int, n: int
) -> tuple[float, JacobiWeightPair, int]:
    """Closed-form image of a basis function under the fractional derivative.

    The derivative of order ``2*alpha - 2*nu`` maps the degree-``n`` singular
    basis function onto a single Jacobi polynomial; this returns the triple
    ``(scale, params, degree)`` with ``params = (alpha - 2*nu, alpha - 2*nu)``
    and ``degree = n + 2*nu``.  When ``alpha - 2*nu <= -1`` the returned pair
    is a formal label for a generalized Jacobi polynomial and must not be fed
    to pointwise evaluation or quadrature.
    """
    alpha = order.alpha
    if not (0 <= nu <= math.floor(alpha)):
        raise ValueError(f"nu must lie in [0, floor(alpha)] = [0, {math.floor(alpha)}], got {nu}")
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    scale = order.sign_k * math.exp(
        2.0 * nu * _LOG_2
        + math.lgamma(n + 2.0 * alpha - 2.0 * nu + 1.0)
        - math.lgamma(n + 1.0)
    )
    a = alpha - 2.0 * nu
    pair = JacobiWeightPair(a, a) if a > -1 else _formal_weight_pair(a, a)
    return scale, pair, n + 2 * nu


def a_norm_sq_gjf(order: FractionalOrder, n: int) -> float:
    """Squared energy norm of the (unnormalized) degree-``n`` basis function."""
    return math.exp(_log_a_norm_sq(order, n))


def tail_seminorm_sq(order: FractionalOrder, coeffs, start: int = 0) -> float:
    """Energy-norm tail ``sum_{i >= start} a_norm_sq_gjf(i) * coeffs[i]**2``.

    With ``start = 0`` this is the squared energy seminorm of the expansion.
    """
    total = 0.0
    for i in range(start, len(coeffs)):
        c = coeffs[i]
        if c != 0.0:
            total += a_norm_sq_gjf(order, i) * c * c
    return total
