"""Exact dense linear algebra over the rationals.

Matrices are plain row lists (or 2-d object arrays) of ``Fraction``.  Every
routine here is exact; nothing ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "to_rational",
    "rational_str",
    "as_rows",
    "rref",
    "rank",
    "kernel",
    "solve",
    "InconsistentSystem",
    "Subspace",
    "NotASubspace",
    "quotient_dim",
    "complement",
]


def to_rational(x) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string.  Floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (bool, float)):
        raise TypeError(f"refusing inexact scalar {x!r}")
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        s = x.strip()
        if not s or any(c in s for c in ".eE"):
            raise ValueError(f"not a rational literal: {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def rational_str(x) -> str:
    """Canonical ``"p/q"`` (or ``"p"``) form, sign on the numerator."""
    return str(Fraction(x))


def as_rows(m) -> list[list[Fraction]]:
    if isinstance(m, np.ndarray):
        if m.ndim != 2:
            raise ValueError(f"expected a matrix, got shape {m.shape}")
        return [[to_rational(x) for x in row] for row in m]
    return [[to_rational(x) for x in row] for row in m]


def _rref_rows(rows: list[list[Fraction]], ncols: int):
    """In-place Gauss-Jordan; returns pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r]
        inv = 1 / piv[c]
        if inv != 1:
            for j in range(c, len(piv)):
                if piv[j]:
                    piv[j] *= inv
        nz = [j for j in range(c, len(piv)) if piv[j]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for j in nz:
                        row[j] -= f * piv[j]
        pivots.append(c)
        r += 1
    return pivots


def rref(m, ncols: int | None = None):
    """Reduced row-echelon form.

    Returns ``(rank, pivots, reduced)`` where ``reduced`` is a fresh object
    array with the same shape as ``m``.
    """
    rows = as_rows(m)
    if ncols is None:
        ncols = len(rows[0]) if rows else (m.shape[1] if isinstance(m, np.ndarray) else 0)
    pivots = _rref_rows(rows, ncols)
    reduced = np.empty((len(rows), ncols), dtype=object)
    for i, row in enumerate(rows):
        reduced[i, :] = row
    return len(pivots), pivots, reduced


def rank(m) -> int:
    return rref(m)[0]


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n held as the nonzero rows of its reduced echelon form.

    The echelon basis is canonical, so ``==`` is subspace equality.
    """

    ambient_dim: int
    basis: tuple[tuple[Fraction, ...], ...] = ()

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows = [[to_rational(x) for x in v] for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in Q^{ambient_dim}")
        k = len(_rref_rows(rows, ambient_dim))
        return cls(ambient_dim, tuple(tuple(v) for v in rows[:k]))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        one, zero = Fraction(1), Fraction(0)
        return cls(ambient_dim, tuple(
            tuple(one if j == i else zero for j in range(ambient_dim))
            for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[np.ndarray]:
        return [np.array(v, dtype=object) for v in self.basis]

    def contains(self, v) -> bool:
        v = [to_rational(x) for x in np.asarray(v, dtype=object).ravel()]
        if len(v) != self.ambient_dim:
            raise ValueError(f"vector of length {len(v)} in Q^{self.ambient_dim}")
        # reduce v against the echelon basis
        for row in self.basis:
            c = next(j for j, x in enumerate(row) if x != 0)
            f = v[c]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return not any(v)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def issubspace(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimensions differ")
        return Subspace.span(self.basis + other.basis, self.ambient_dim)


def kernel(m, ncols: int | None = None) -> Subspace:
    """Null space {v : m v = 0}."""
    rows = as_rows(m)
    if ncols is None:
        ncols = len(rows[0]) if rows else m.shape[1]
    pivots = _rref_rows(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    vecs = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        vecs.append(v)
    return Subspace.span(vecs, ncols)


class InconsistentSystem(ArithmeticError):
    """Raised by :func:`solve`; ``certificate`` is a vector c with c^T m = 0
    and c^T b != 0."""

    def __init__(self, certificate):
        super().__init__("linear system has no solution")
        self.certificate = certificate


def solve(m, b, ncols: int | None = None) -> np.ndarray:
    """Solve ``m x = b`` exactly.

    Free variables are set to zero, so the returned x is the basic echelon
    solution.  Raises :class:`InconsistentSystem` with a left-null witness when
    b is not in the column space.
    """
    rows = as_rows(m)
    nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else m.shape[1]
    b = [to_rational(x) for x in np.asarray(b, dtype=object).ravel()]
    if len(b) != nrows:
        raise ValueError(f"right-hand side has length {len(b)}, matrix has {nrows} rows")
    one, zero = Fraction(1), Fraction(0)
    # augment with b and an identity block that records the row operations
    aug = [row + [b[i]] + [one if j == i else zero for j in range(nrows)]
           for i, row in enumerate(rows)]
    pivots = _rref_rows(aug, ncols)
    k = len(pivots)
    for i in range(k, nrows):
        if aug[i][ncols] != 0:
            cert = np.array(aug[i][ncols + 1:], dtype=object)
            raise InconsistentSystem(cert)
    x = np.array([zero] * ncols, dtype=object)
    for r, pc in enumerate(pivots):
        x[pc] = aug[r][ncols]
    return x


class NotASubspace(ValueError):
    pass


def quotient_dim(z: Subspace, b: Subspace) -> int:
    """dim z/b, after checking b lies in z."""
    if not b.issubspace(z):
        raise NotASubspace("b is not contained in z")
    return z.dim - b.dim


def complement(z: Subspace, b: Subspace) -> list[np.ndarray]:
    """Vectors of z's echelon basis extending b to a basis of z.

    Deterministic, but depends on the coordinate order.
    """
    if not b.issubspace(z):
        raise NotASubspace("b is not contained in z")
    picked = []
    acc = b
    for v in z.basis:
        if not acc.contains(v):
            picked.append(np.array(v, dtype=object))
            acc = acc + Subspace(z.ambient_dim, (v,))
    return picked
