"""Finite-dimensional associative algebras and bimodules by structure constants.

Conventions (fixed basis e_0..e_{n-1} of A and f_0..f_{m-1} of M):

* ``mu[i, j, k]``    coefficient of e_k in e_i . e_j
* ``left[i, u, v]``  coefficient of f_v in e_i . f_u
* ``right[u, i, v]`` coefficient of f_v in f_u . e_i

Algebras are not assumed unital.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .tensor import equal, is_zero, qarray, substitute, zeros

__all__ = [
    "Algebra",
    "Bimodule",
    "validate_algebra",
    "validate_bimodule",
    "adjoint_bimodule",
    "coadjoint_bimodule",
    "one_sided_bimodule",
    "semidirect_product",
    "is_algebra_morphism",
    "algebra_morphism_violations",
]


@dataclass(frozen=True, eq=False)
class Algebra:
    mu: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        mu = qarray(self.mu)
        if mu.ndim != 3 or not (mu.shape[0] == mu.shape[1] == mu.shape[2]):
            raise ValueError(f"structure constants must have shape (n, n, n), got {mu.shape}")
        object.__setattr__(self, "mu", mu)
        if self.labels is not None:
            if len(self.labels) != mu.shape[0]:
                raise ValueError("wrong number of basis labels")
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def dim(self) -> int:
        return self.mu.shape[0]

    def mul(self, a, b) -> np.ndarray:
        return np.tensordot(np.tensordot(qarray(a), self.mu, axes=([0], [0])),
                            qarray(b), axes=([0], [0]))

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"e{i}"

    def __eq__(self, other):
        return isinstance(other, Algebra) and equal(self.mu, other.mu)

    __hash__ = object.__hash__

    def __repr__(self):
        return f"Algebra(dim={self.dim})"


@dataclass(frozen=True, eq=False)
class Bimodule:
    algebra: Algebra
    left: np.ndarray
    right: np.ndarray
    labels: tuple[str, ...] | None = field(default=None)

    def __post_init__(self):
        left, right = qarray(self.left), qarray(self.right)
        n = self.algebra.dim
        if left.ndim != 3 or right.ndim != 3:
            raise ValueError("action tensors must be rank 3")
        m = left.shape[1]
        if left.shape != (n, m, m):
            raise ValueError(f"left action has shape {left.shape}, expected {(n, m, m)}")
        if right.shape != (m, n, m):
            raise ValueError(f"right action has shape {right.shape}, expected {(m, n, m)}")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @property
    def dim(self) -> int:
        return self.left.shape[1]

    def act_left(self, a, m) -> np.ndarray:
        return np.tensordot(np.tensordot(qarray(a), self.left, axes=([0], [0])),
                            qarray(m), axes=([0], [0]))

    def act_right(self, m, a) -> np.ndarray:
        return np.tensordot(np.tensordot(qarray(m), self.right, axes=([0], [0])),
                            qarray(a), axes=([0], [0]))

    def left_operator(self, a) -> np.ndarray:
        """Matrix of l_a : M -> M (rows = target)."""
        return np.tensordot(qarray(a), self.left, axes=([0], [0])).T

    def right_operator(self, a) -> np.ndarray:
        """Matrix of r_a : M -> M (rows = target)."""
        return np.tensordot(self.right, qarray(a), axes=([1], [0])).T

    def __eq__(self, other):
        return (isinstance(other, Bimodule) and self.algebra == other.algebra
                and equal(self.left, other.left) and equal(self.right, other.right))

    __hash__ = object.__hash__

    def __repr__(self):
        return f"Bimodule(alg_dim={self.algebra.dim}, dim={self.dim})"


def _mu_mu(mu):
    # ((e_i e_j) e_k) and (e_i (e_j e_k)) as (i, j, k, q) tensors
    lhs = substitute(mu, 0, mu)
    rhs = substitute(mu, 1, mu)
    return lhs, rhs


def validate_algebra(alg: Algebra) -> list[tuple]:
    """All basis triples where associativity fails.

    Each entry is ``((i, j, k), (e_i e_j) e_k, e_i (e_j e_k))``; an empty list
    means the algebra is associative.
    """
    lhs, rhs = _mu_mu(alg.mu)
    n = alg.dim
    out = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if not equal(lhs[i, j, k], rhs[i, j, k]):
                    out.append(((i, j, k), lhs[i, j, k], rhs[i, j, k]))
    return out


def validate_bimodule(mod: Bimodule) -> list[tuple]:
    """Violations of the three bimodule axioms at basis triples.

    Entries are ``(axiom, (i, j, u), lhs, rhs)`` with axiom one of
    ``"l(ab,m)=l(a,l(b,m))"``, ``"l(a,r(m,b))=r(l(a,m),b)"``,
    ``"r(m,ab)=r(r(m,a),b)"``.
    """
    mu, L, R = mod.algebra.mu, mod.left, mod.right
    n, m = mod.algebra.dim, mod.dim
    out = []
    ll = np.einsum("abc,cuw->abuw", mu, L)       # (a b) m
    ll2 = np.einsum("bux,axw->abuw", L, L)       # a (b m)
    lr = np.einsum("ubx,axw->aubw", R, L)        # a (m b)
    lr2 = np.einsum("aux,xbw->aubw", L, R)       # (a m) b
    rr = np.einsum("abc,ucw->uabw", mu, R)       # m (a b)
    rr2 = np.einsum("uax,xbw->uabw", R, R)       # (m a) b
    for a in range(n):
        for b in range(n):
            for u in range(m):
                if not equal(ll[a, b, u], ll2[a, b, u]):
                    out.append(("l(ab,m)=l(a,l(b,m))", (a, b, u), ll[a, b, u], ll2[a, b, u]))
                if not equal(lr[a, u, b], lr2[a, u, b]):
                    out.append(("l(a,r(m,b))=r(l(a,m),b)", (a, u, b), lr[a, u, b], lr2[a, u, b]))
                if not equal(rr[u, a, b], rr2[u, a, b]):
                    out.append(("r(m,ab)=r(r(m,a),b)", (u, a, b), rr[u, a, b], rr2[u, a, b]))
    return out


def adjoint_bimodule(alg: Algebra) -> Bimodule:
    return Bimodule(alg, alg.mu.copy(), alg.mu.copy(), alg.labels)


def coadjoint_bimodule(alg: Algebra) -> Bimodule:
    """A* with l(a, f)(b) = f(b a) and r(f, a)(b) = f(a b), in the dual basis."""
    mu = alg.mu
    left = mu.transpose(1, 2, 0)   # left[i, u, v] = mu[v, i, u]
    right = mu.transpose(2, 0, 1)  # right[u, i, v] = mu[i, v, u]
    labels = tuple(f"{s}*" for s in alg.labels) if alg.labels else None
    return Bimodule(alg, left.copy(), right.copy(), labels)


def one_sided_bimodule(alg: Algebra, side: str) -> Bimodule:
    """(A, ad^l, 0) for ``side="left"``, (A, 0, ad^r) for ``side="right"``."""
    n = alg.dim
    if side == "left":
        return Bimodule(alg, alg.mu.copy(), zeros((n, n, n)), alg.labels)
    if side == "right":
        return Bimodule(alg, zeros((n, n, n)), alg.mu.copy(), alg.labels)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def semidirect_product(alg: Algebra, mod: Bimodule, check: bool = True) -> Algebra:
    """A (+) M with (a, m)(b, n) = (ab, an + mb); A's basis first."""
    if check and validate_bimodule(mod):
        raise ValueError("bimodule axioms fail")
    n, m = alg.dim, mod.dim
    mu = zeros((n + m, n + m, n + m))
    mu[:n, :n, :n] = alg.mu
    mu[:n, n:, n:] = mod.left
    mu[n:, :n, n:] = mod.right
    labels = None
    if alg.labels and mod.labels:
        labels = alg.labels + mod.labels
    return Algebra(mu, labels)


def algebra_morphism_violations(phi, source: Algebra, target: Algebra) -> list[tuple]:
    """Basis pairs (i, j) where phi(e_i e_j) != phi(e_i) phi(e_j)."""
    phi = qarray(phi)
    if phi.shape != (target.dim, source.dim):
        raise ValueError(f"map has shape {phi.shape}, expected {(target.dim, source.dim)}")
    lhs = np.einsum("ijk,pk->ijp", source.mu, phi)
    rhs = np.einsum("xi,yj,xyp->ijp", phi, phi, target.mu)
    out = []
    for i in range(source.dim):
        for j in range(source.dim):
            if not equal(lhs[i, j], rhs[i, j]):
                out.append(((i, j), lhs[i, j], rhs[i, j]))
    return out


def is_algebra_morphism(phi, source: Algebra, target: Algebra | None = None) -> bool:
    return not algebra_morphism_violations(phi, source, target or source)


def is_associative(alg: Algebra) -> bool:
    return not validate_algebra(alg)


def is_valid_bimodule(mod: Bimodule) -> bool:
    return not validate_bimodule(mod)


def structure_is_zero(alg: Algebra) -> bool:
    return is_zero(alg.mu)
