"""Orthonormal monomial basis of degree-k sections on the sphere.

In the affine chart z = z0/z1 the basis is e_j = N_{k,j} z^j with
N_{k,j} = sqrt((k+1) * binom(k, j)); the Fubini-Study measure is
normalized to total volume 1, which is exactly the choice that makes
these e_j orthonormal. Monomial moments of that measure have the closed
form a! (N-a)! / (N+1)! and are kept as exact rationals.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import DomainError, IndexOutOfRange

# Above this level the exact integer binomial under the square root is
# traded for a log-gamma evaluation to avoid huge intermediates.
EXACT_LEVEL_MAX = 40


def _check_index(k: int, j: int) -> None:
    if k < 1:
        raise IndexOutOfRange(f"level k must be >= 1, got {k}")
    if not 0 <= j <= k:
        raise IndexOutOfRange(f"basis index {j} outside [0, {k}]")


def basis_norm_const(k: int, j: int) -> float:
    """Normalization constant sqrt((k+1) * binom(k, j)) of the basis section e_j."""
    _check_index(k, j)
    if k <= EXACT_LEVEL_MAX:
        return math.sqrt((k + 1) * math.comb(k, j))
    log_sq = (
        math.log(k + 1)
        + math.lgamma(k + 1)
        - math.lgamma(j + 1)
        - math.lgamma(k - j + 1)
    )
    return math.exp(0.5 * log_sq)


def monomial_integral(a: int, N: int) -> Fraction:
    """Moment integral of |z|^(2a) / (1+|z|^2)^N over the normalized measure.

    Exact value a! (N-a)! / (N+1)! for 0 <= a <= N; outside that range the
    integral diverges and DomainError is raised.
    """
    if a < 0 or N < 0 or a > N:
        raise DomainError(f"moment ({a}, {N}) outside 0 <= a <= N")
    return Fraction(math.factorial(a) * math.factorial(N - a), math.factorial(N + 1))


def section_inner_product(k: int, i: int, j: int) -> float:
    """Inner product <e_i, e_j>; the angular integral kills i != j."""
    _check_index(k, i)
    _check_index(k, j)
    if i != j:
        return 0.0
    return basis_norm_const(k, i) * basis_norm_const(k, j) * float(monomial_integral(i, k))


def basis_values(k: int, z: complex) -> np.ndarray:
    """Vector of all basis section values (e_0(z), ..., e_k(z)) in the affine frame."""
    consts = np.array([basis_norm_const(k, j) for j in range(k + 1)])
    powers = np.power(complex(z), np.arange(k + 1))
    return consts * powers


def evaluate_section(state, z: complex, w: complex) -> complex:
    """Pointwise value sum_ij C_ij e_i(z) e_j(w) in the affine frame z1 = w1 = 1."""
    vz = basis_values(state.k, z)
    vw = basis_values(state.k, w)
    return complex(vz @ state.coeffs @ vw)
