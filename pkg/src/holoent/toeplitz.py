"""Toeplitz-type compressions of multiplication operators.

Symbols are finite sums of rational monomials in the affine coordinates
of the two sphere factors. Matrix elements against the orthonormal
product basis reduce to the closed-form monomial moments, so the
orthogonal projection onto the holomorphic subspace never has to be
materialized: expanding against the basis realizes it implicitly.
Rational term coefficients are propagated exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, NotOrthonormal
from .sections import monomial_integral
from .states import StateTensor

ORTHONORMAL_TOL = 1e-10


@dataclass(frozen=True)
class SymbolTerm:
    """One term coef * z^pz zbar^qz w^pw wbar^qw / ((1+|z|^2)^nz (1+|w|^2)^nw)."""

    coef: object
    pz: int = 0
    qz: int = 0
    pw: int = 0
    qw: int = 0
    nz: int = 0
    nw: int = 0

    def __post_init__(self):
        for name in ("pz", "qz", "pw", "qw", "nz", "nw"):
            if getattr(self, name) < 0:
                raise ValueError(f"exponent {name} must be nonnegative")


@dataclass(frozen=True)
class SymbolExpr:
    """Finite rational-monomial symbol on the product of two affine charts."""

    terms: tuple = ()
    offset: object = 0

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    def is_real_valued(self) -> bool:
        """Syntactic check: term set closed under conjugation and real offset."""
        if complex(self.offset).imag != 0.0:
            return False
        combined: dict = {}
        for t in self.terms:
            key = (t.pz, t.qz, t.pw, t.qw, t.nz, t.nw)
            combined[key] = combined.get(key, 0) + complex(t.coef)
        for (pz, qz, pw, qw, nz, nw), coef in combined.items():
            partner = combined.get((qz, pz, qw, pw, nz, nw), 0)
            if partner != coef.conjugate():
                return False
        return True


@dataclass(frozen=True)
class ToeplitzMatrix:
    """Operator matrix in the product basis e_a (x) e_b, lexicographic in (a, b)."""

    k: int
    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        dim = (self.k + 1) ** 2
        if m.shape != (dim, dim):
            raise ValueError(f"entries must be {dim}x{dim}, got {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return (self.k + 1) ** 2

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "dim": self.dim,
            "re": self.entries.real.tolist(),
            "im": self.entries.imag.tolist(),
        }


def evaluate_symbol(symbol: SymbolExpr, z: complex, w: complex) -> complex:
    """Literal pointwise evaluation of the symbol."""
    z = complex(z)
    w = complex(w)
    dz = 1.0 + abs(z) ** 2
    dw = 1.0 + abs(w) ** 2
    total = complex(symbol.offset)
    for t in symbol.terms:
        total += (
            complex(t.coef)
            * z**t.pz
            * z.conjugate() ** t.qz
            * w**t.pw
            * w.conjugate() ** t.qw
            / (dz**t.nz * dw**t.nw)
        )
    return total


def kernel_projection_symbol() -> SymbolExpr:
    """Symbol whose level-1 compression is the projection onto the restriction kernel.

    In homogeneous coordinates this is (9/2) |z0 w0 - z1 w1|^2 normalized
    by (|z0|^2+|z1|^2)(|w0|^2+|w1|^2), minus 2; in the affine chart that
    expands to (9/2) |zw - 1|^2 / ((1+|z|^2)(1+|w|^2)) - 2.
    """
    nine_halves = Fraction(9, 2)
    return SymbolExpr(
        terms=(
            SymbolTerm(nine_halves, pz=1, qz=1, pw=1, qw=1, nz=1, nw=1),
            SymbolTerm(-nine_halves, pz=1, pw=1, nz=1, nw=1),
            SymbolTerm(-nine_halves, qz=1, qw=1, nz=1, nw=1),
            SymbolTerm(nine_halves, nz=1, nw=1),
        ),
        offset=Fraction(-2),
    )


def toeplitz_matrix(symbol: SymbolExpr, k: int) -> ToeplitzMatrix:
    """Matrix of the compression of multiplication by the symbol at level k.

    Entry ((c,d),(a,b)) pairs symbol * e_a (x) e_b against e_c (x) e_d.
    Angular-momentum conservation makes a term contribute only when
    c = a + pz - qz and d = b + pw - qw; surviving contributions are
    products of two monomial moments times the basis normalizations.
    Accumulation stays in exact rational arithmetic whenever the term
    coefficients are rational and the binomial product under the square
    root is a perfect square.

    Raises
    ------
    DomainError
        If a contributing term needs a divergent moment (the symbol decays
        too slowly for this level).
    """
    if k < 1:
        raise ValueError("level k must be >= 1")
    n = k + 1
    dim = n * n
    binoms = [math.comb(k, j) for j in range(n)]

    # raw per-entry sums of coef * I_z * I_w, before basis normalization
    sums: dict = {}
    for a in range(n):
        for b in range(n):
            col = a * n + b
            for t in symbol.terms:
                c = a + t.pz - t.qz
                d = b + t.pw - t.qw
                if not (0 <= c <= k and 0 <= d <= k):
                    continue
                if a + t.pz > k + t.nz or b + t.pw > k + t.nw:
                    raise DomainError(
                        f"term needs moment ({a + t.pz}, {k + t.nz}) or "
                        f"({b + t.pw}, {k + t.nw}); symbol decays too slowly for k={k}"
                    )
                iz = monomial_integral(a + t.pz, k + t.nz)
                iw = monomial_integral(b + t.pw, k + t.nw)
                key = (c * n + d, col)
                sums[key] = sums.get(key, 0) + t.coef * iz * iw

    entries = np.zeros((dim, dim), dtype=complex)
    scale0 = (k + 1) ** 2
    for (row, col), s in sums.items():
        c, d = divmod(row, n)
        a, b = divmod(col, n)
        m = binoms[a] * binoms[b] * binoms[c] * binoms[d]
        r = math.isqrt(m)
        scale = scale0 * r if r * r == m else scale0 * math.sqrt(m)
        entries[row, col] = complex(s * scale)
    if complex(symbol.offset) != 0:
        entries[np.diag_indices(dim)] += complex(symbol.offset)
    return ToeplitzMatrix(k, entries)


def projection_matrix(basis: list[StateTensor], k: int | None = None) -> ToeplitzMatrix:
    """Orthogonal projection sum_v |v><v| onto the span of an orthonormal set.

    The level must be given explicitly when the basis is empty.

    Raises
    ------
    NotOrthonormal
        If the Gram matrix of the basis deviates from the identity by
        more than 1e-10.
    """
    if not basis:
        if k is None:
            raise ValueError("level k required for an empty basis")
        dim = (k + 1) ** 2
        return ToeplitzMatrix(k, np.zeros((dim, dim), dtype=complex))
    k = basis[0].k
    vectors = np.column_stack([v.coeffs.reshape(-1) for v in basis])
    gram = vectors.conj().T @ vectors
    defect = np.max(np.abs(gram - np.eye(len(basis))))
    if defect > ORTHONORMAL_TOL:
        raise NotOrthonormal(f"basis Gram matrix deviates from identity by {defect:.3e}")
    return ToeplitzMatrix(k, vectors @ vectors.conj().T)
