"""Monte-Carlo averages of entanglement entropy over the unit sphere.

States are drawn uniformly by normalizing complex Gaussian coefficient
matrices, the unique rotation-invariant construction. Sampling is
blocked: block b of a run uses a generator seeded with (seed, b), and the
reduction follows block order, so estimates are reproducible and
independent of how blocks are scheduled. The exact finite-dimensional
mean (Page's harmonic-number formula) serves as the ground-truth oracle
for the sampler.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import SingularFit
from .states import StateTensor, entropy_from_squared_schmidt

BLOCK_SIZE = 4096


@dataclass(frozen=True)
class MCEstimate:
    """Sample mean and standard error of entropy over uniform states."""

    k: int
    n_samples: int
    mean: float
    stderr: float
    seed: int


@dataclass(frozen=True)
class AsymptoticModel:
    """Coefficients of the large-level mean-entropy expansion.

    m is the complex dimension of the underlying manifold; beta and gamma
    are the volume and twisted-volume coefficients. The sphere with the
    degree-one bundle has m = 1, beta = 1, gamma = 2.
    """

    m: int = 1
    beta: float = 1.0
    gamma: float = 2.0

    def __post_init__(self):
        if self.beta <= 0:
            raise ValueError("beta must be positive")


def cp1_model() -> AsymptoticModel:
    """Model coefficients for the sphere with the degree-one bundle."""
    return AsymptoticModel(m=1, beta=1.0, gamma=2.0)


def sample_uniform_state(k: int, rng: np.random.Generator) -> StateTensor:
    """One uniform unit state: normalized standard complex Gaussian coefficients."""
    x = rng.standard_normal((2, k + 1, k + 1))
    c = x[0] + 1j * x[1]
    return StateTensor(k, c / np.linalg.norm(c))


def _block_entropies(k: int, count: int, seed: int, block: int) -> np.ndarray:
    """Entropies of `count` consecutive samples from the block's own generator."""
    rng = np.random.default_rng([seed, block])
    x = rng.standard_normal((count, 2, k + 1, k + 1))
    c = x[:, 0] + 1j * x[:, 1]
    norms = np.sqrt(np.sum(np.abs(c) ** 2, axis=(1, 2)))
    c /= norms[:, None, None]
    sig = np.linalg.svd(c, compute_uv=False)
    return entropy_from_squared_schmidt(sig**2)


def mc_mean_entropy(k: int, n: int, seed: int) -> MCEstimate:
    """Monte-Carlo mean entropy over n uniform states at level k.

    Deterministic given (k, n, seed). The standard error is the sample
    standard deviation divided by sqrt(n).
    """
    if n < 100:
        raise ValueError("need at least 100 samples")
    values = np.empty(n)
    pos = 0
    block = 0
    while pos < n:
        count = min(BLOCK_SIZE, n - pos)
        values[pos : pos + count] = _block_entropies(k, count, seed, block)
        pos += count
        block += 1
    mean = float(values.mean())
    stderr = float(values.std(ddof=1) / math.sqrt(n))
    return MCEstimate(k=k, n_samples=n, mean=mean, stderr=stderr, seed=seed)


def _harmonic(n: int) -> Fraction:
    return sum((Fraction(1, i) for i in range(1, n + 1)), Fraction(0))


def page_mean(d: int) -> float:
    """Exact mean entanglement entropy of a uniform pure state on a d x d space.

    H(d^2) - H(d) - (d-1)/(2d) with H the harmonic numbers, evaluated in
    exact rational arithmetic before conversion.
    """
    if d < 1:
        raise ValueError("dimension must be >= 1")
    return float(_harmonic(d * d) - _harmonic(d) - Fraction(d - 1, 2 * d))


def asymptotic_mean_entropy(model: AsymptoticModel, k: int) -> float:
    """Expansion m ln k - 1/2 + ln(beta) + (gamma/beta)/k of the sphere average."""
    if k < 1:
        raise ValueError("level k must be >= 1")
    return (
        model.m * math.log(k)
        - 0.5
        + math.log(model.beta)
        + (model.gamma / model.beta) / k
    )


def fit_tail(pairs) -> tuple[float, float]:
    """Least-squares fit of mean - ln k against (1, 1/k).

    Returns (c0, c1): the constant term, comparable to -1/2 + ln(beta),
    and the 1/k coefficient, comparable to gamma/beta.

    Raises
    ------
    SingularFit
        With fewer than 3 distinct levels, or a rank-deficient design.
    """
    ks = np.array([float(k) for k, _ in pairs])
    means = np.array([float(m) for _, m in pairs])
    if len(set(ks.tolist())) < 3:
        raise SingularFit("need at least 3 distinct levels")
    design = np.column_stack([np.ones_like(ks), 1.0 / ks])
    coeffs, _, rank, _ = np.linalg.lstsq(design, means - np.log(ks), rcond=None)
    if rank < 2:
        raise SingularFit("design matrix is rank deficient")
    return float(coeffs[0]), float(coeffs[1])
