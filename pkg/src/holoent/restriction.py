"""Restriction of product sections to the antidiagonal circle.

The circle is z = e^{it}, w = e^{-it} in the affine frame, so the basis
product e_i (x) e_j restricts to a single Fourier mode of frequency
d = i - j with amplitude (k+1) sqrt(binom(k,i) binom(k,j)). Membership in
the kernel of the restriction map is therefore one homogeneous linear
condition per mode, collected here as an explicit constraint matrix, and
the kernel itself is computed as its orthonormal null space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .states import StateTensor

RANK_TOL = 1e-10


def _sqrt_binom_products(k: int) -> np.ndarray:
    """Weights w_ij = sqrt(binom(k,i) binom(k,j)), exact where the product is a square."""
    binoms = [math.comb(k, j) for j in range(k + 1)]
    w = np.empty((k + 1, k + 1))
    for i in range(k + 1):
        for j in range(k + 1):
            m = binoms[i] * binoms[j]
            r = math.isqrt(m)
            w[i, j] = float(r) if r * r == m else math.sqrt(m)
    return w


@dataclass(frozen=True)
class LambdaRestriction:
    """Fourier coefficients of a restricted section, modes d = -k..k."""

    k: int
    fourier: np.ndarray

    def __post_init__(self):
        f = np.array(self.fourier, dtype=complex)
        if f.shape != (2 * self.k + 1,):
            raise ValueError(f"need {2 * self.k + 1} Fourier modes, got {f.shape}")
        f.setflags(write=False)
        object.__setattr__(self, "fourier", f)

    def mode(self, d: int) -> complex:
        if not -self.k <= d <= self.k:
            raise IndexError(f"mode {d} outside [-{self.k}, {self.k}]")
        return complex(self.fourier[d + self.k])

    def rows(self) -> list[tuple[int, float, float]]:
        """CSV-ready rows (d, re, im), one per Fourier mode."""
        return [
            (d, float(self.fourier[d + self.k].real), float(self.fourier[d + self.k].imag))
            for d in range(-self.k, self.k + 1)
        ]

    def evaluate(self, t: float) -> complex:
        """Value of the restricted section at angle t."""
        d = np.arange(-self.k, self.k + 1)
        return complex(np.sum(self.fourier * np.exp(1j * d * t)))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.fourier)))


@dataclass(frozen=True)
class ConstraintSystem:
    """Linear system whose null space is the kernel of the restriction map.

    Row d+k, column i*(k+1)+j holds (k+1) sqrt(binom(k,i) binom(k,j)) when
    i - j = d and zero otherwise; rows have disjoint support, so the rank
    is always 2k+1.
    """

    k: int
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


def restrict(state: StateTensor) -> LambdaRestriction:
    """Restrict a state to the antidiagonal circle.

    Mode d collects (k+1) sum_{i-j=d} C_ij sqrt(binom(k,i) binom(k,j));
    the restricted section is sum_d fourier_d e^{i d t} in the affine frame.
    """
    k = state.k
    weighted = state.coeffs * _sqrt_binom_products(k)
    fourier = np.empty(2 * k + 1, dtype=complex)
    for d in range(-k, k + 1):
        # entries with i - j = d sit on the numpy diagonal of offset -d
        fourier[d + k] = (k + 1) * np.sum(np.diagonal(weighted, offset=-d))
    return LambdaRestriction(k, fourier)


def constraint_system(k: int) -> ConstraintSystem:
    """Constraint matrix for kernel membership, one row per Fourier mode."""
    if k < 1:
        raise ValueError("level k must be >= 1")
    w = _sqrt_binom_products(k)
    a = np.zeros((2 * k + 1, (k + 1) ** 2))
    for i in range(k + 1):
        for j in range(k + 1):
            a[i - j + k, i * (k + 1) + j] = (k + 1) * w[i, j]
    return ConstraintSystem(k, a)


def _fix_column_signs(columns: np.ndarray) -> np.ndarray:
    """Make the largest-magnitude entry of each column real positive."""
    cols = columns.copy()
    for c in range(cols.shape[1]):
        pivot = int(np.argmax(np.abs(cols[:, c])))
        if cols[pivot, c] < 0:
            cols[:, c] = -cols[:, c]
    return cols


def kernel_basis(k: int, tol: float = RANK_TOL) -> list[StateTensor]:
    """Orthonormal basis of the restriction kernel, k^2 elements.

    The null space of the constraint matrix is extracted with a
    rank-revealing orthogonal factorization at relative tolerance tol;
    signs are fixed deterministically for reproducible output.
    """
    a = constraint_system(k).matrix
    null = scipy.linalg.null_space(a, rcond=tol)
    null = _fix_column_signs(null)
    return [StateTensor(k, null[:, c].reshape(k + 1, k + 1)) for c in range(null.shape[1])]


def diagonal_kernel_basis(k: int) -> list[StateTensor]:
    """Orthonormal basis of the diagonal part of the kernel, k elements.

    Diagonal states sum_j a_j e_j (x) e_j lie in the kernel exactly when
    sum_j binom(k,j) a_j = 0, so this is the orthocomplement of the
    binomial vector inside the diagonal subspace.
    """
    if k < 1:
        raise ValueError("level k must be >= 1")
    row = np.array([[float(math.comb(k, j)) for j in range(k + 1)]])
    null = _fix_column_signs(scipy.linalg.null_space(row))
    return [StateTensor.from_diagonal(k, null[:, c]) for c in range(null.shape[1])]


def near_product_vector(k: int) -> StateTensor:
    """Unit kernel state on modes 0 and 1 that tends to a product state.

    The diagonal coefficients are a_0 = -k/sqrt(1+k^2), a_1 = 1/sqrt(1+k^2);
    its entanglement entropy decays to zero as the level grows.
    """
    s = 1.0 / math.sqrt(1.0 + k * k)
    diag = np.zeros(k + 1, dtype=complex)
    diag[0] = -k * s
    diag[1] = s
    return StateTensor.from_diagonal(k, diag)


def near_product_entropy(k: int) -> float:
    """Closed-form entropy of near_product_vector(k)."""
    p = 1.0 / (1.0 + k * k)
    q = (k * k) / (1.0 + k * k)
    return -p * math.log(p) - q * math.log(q)


def bell_vector(k: int) -> StateTensor:
    """Bell-type kernel state pairing the lowest and highest modes.

    (e_0 (x) e_0 - e_k (x) e_k)/sqrt(2); entropy ln 2 at every level.
    """
    diag = np.zeros(k + 1, dtype=complex)
    diag[0] = 1.0 / math.sqrt(2.0)
    diag[k] = -1.0 / math.sqrt(2.0)
    return StateTensor.from_diagonal(k, diag)


def max_entropy_vector(k: int) -> StateTensor:
    """Diagonal kernel state of extremal entropy.

    Odd k: signs flip across the middle with |a_j| = 1/sqrt(k+1), giving
    full Schmidt rank and entropy ln(k+1). Even k: the middle coefficient
    is zero and the rest carry |a_j| = 1/sqrt(k), giving entropy ln k.
    Both sign patterns cancel against the palindromic binomial weights.
    """
    diag = np.zeros(k + 1, dtype=complex)
    if k % 2 == 1:
        amp = 1.0 / math.sqrt(k + 1.0)
        for j in range(k + 1):
            diag[j] = amp if j < (k + 1) // 2 else -amp
    else:
        amp = 1.0 / math.sqrt(float(k))
        for j in range(k + 1):
            if j == k // 2:
                continue
            diag[j] = amp if j < k // 2 else -amp
    return StateTensor.from_diagonal(k, diag)
