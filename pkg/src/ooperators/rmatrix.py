"""Associative r-matrices, their coproducts and infinitesimal bialgebras.

A* is handled through the dual basis e_0*, ..., e_{n-1}*; pairings are index
contractions.  For r in wedge^2 A the full antisymmetric matrix ``R`` has
``R[i, j]`` = coefficient of e_i (x) e_j.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Algebra, algebra_morphism_violations, coadjoint_bimodule
from .deformation import TruncatedDeformation, check_order
from .operators import Operator, induced_star, is_o_morphism
from .report import CheckReport
from .tensor import equal, is_zero, nonzero_entries, normalize, qarray, zeros

__all__ = [
    "Wedge2",
    "r_sharp",
    "r_operator",
    "yb_bracket",
    "yb_polarized",
    "is_r_matrix",
    "NotAnRMatrix",
    "Coproduct",
    "induced_coproduct",
    "infinitesimal_bialgebra_check",
    "weak_morphism_check",
    "bialgebra_weak_morphism_check",
    "generates_linear_deformation",
]


class NotAnRMatrix(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Wedge2:
    """r = sum_{i<j} r_ij (e_i (x) e_j - e_j (x) e_i)."""

    algebra: Algebra
    entries: tuple = ()      # sorted ((i, j), value) with i < j and value != 0

    def __post_init__(self):
        n = self.algebra.dim
        acc = {}
        for (i, j), v in self.entries:
            if not (0 <= i < j < n):
                raise ValueError(f"wedge entry ({i}, {j}) must satisfy 0 <= i < j < {n}")
            acc[(i, j)] = acc.get((i, j), 0) + qarray(v)[()]
        object.__setattr__(self, "entries", tuple(sorted((k, v) for k, v in acc.items() if v != 0)))

    @classmethod
    def from_triples(cls, alg: Algebra, triples) -> "Wedge2":
        return cls(alg, tuple(((int(i), int(j)), v) for i, j, v in triples))

    @classmethod
    def from_matrix(cls, alg: Algebra, mat) -> "Wedge2":
        mat = qarray(mat)
        if not equal(mat, -mat.T):
            raise ValueError("matrix is not antisymmetric")
        n = alg.dim
        return cls(alg, tuple(((i, j), mat[i, j]) for i in range(n) for j in range(i + 1, n)))

    @classmethod
    def zero(cls, alg: Algebra) -> "Wedge2":
        return cls(alg, ())

    def matrix(self) -> np.ndarray:
        n = self.algebra.dim
        out = zeros((n, n))
        for (i, j), v in self.entries:
            out[i, j] = v
            out[j, i] = -v
        return out

    def triples(self) -> list[tuple]:
        return [(i, j, v) for (i, j), v in self.entries]

    def __add__(self, other: "Wedge2") -> "Wedge2":
        return Wedge2(self.algebra, self.entries + other.entries)

    def scaled(self, c) -> "Wedge2":
        c = qarray(c)[()]
        return Wedge2(self.algebra, tuple((k, c * v) for k, v in self.entries))

    def __eq__(self, other):
        return (isinstance(other, Wedge2) and self.algebra == other.algebra
                and self.entries == other.entries)

    __hash__ = object.__hash__


def r_sharp(r: Wedge2) -> np.ndarray:
    """Matrix of r# : A* -> A, <beta, r#(alpha)> = r(alpha, beta); rows index A."""
    return r.matrix().T


def r_operator(r: Wedge2) -> Operator:
    """r# as an operator over the coadjoint bimodule."""
    return Operator(coadjoint_bimodule(r.algebra), r_sharp(r))


def yb_bracket(r: Wedge2) -> np.ndarray:
    """[[r, r]] on dual-basis triples (alpha, beta, gamma)."""
    s = r_sharp(r)
    mu = r.algebra.mu
    # p[a, b, g] = <r#(a) . r#(b), g>
    p = np.einsum("xa,yb,xyg->abg", s, s, mu)
    return normalize(p + p.transpose(2, 0, 1) + p.transpose(1, 2, 0))


def yb_polarized(r: Wedge2, k: Wedge2) -> np.ndarray:
    """The t-coefficient of [[r + t k, r + t k]]."""
    return normalize(yb_bracket(r + k) - yb_bracket(r) - yb_bracket(k))


def is_r_matrix(r: Wedge2, cross_check: bool = True) -> bool:
    ok = is_zero(yb_bracket(r))
    if cross_check and ok != r_operator(r).is_o_operator:
        raise ArithmeticError("[[r, r]] and the coadjoint O-operator test disagree")
    return ok


@dataclass(frozen=True, eq=False)
class Coproduct:
    """delta[k, i, j] = coefficient of e_i (x) e_j in the coproduct of e_k."""

    algebra: Algebra
    delta: np.ndarray

    def __post_init__(self):
        d = qarray(self.delta)
        n = self.algebra.dim
        if d.shape != (n, n, n):
            raise ValueError(f"coproduct tensor has shape {d.shape}, expected {(n, n, n)}")
        object.__setattr__(self, "delta", d)

    def dual_product(self) -> Algebra:
        """(A*, *) with <beta * alpha, x> = <delta(x), alpha (x) beta>."""
        return Algebra(self.delta.transpose(2, 1, 0).copy())

    def __eq__(self, other):
        return isinstance(other, Coproduct) and equal(self.delta, other.delta)

    __hash__ = object.__hash__


def induced_coproduct(r: Wedge2) -> Coproduct:
    """delta_r paired against the product on A* with the tensor factors swapped:
    <delta_r(x), alpha (x) beta> = <beta * alpha, x>.

    Then delta_r(x) = r.x - x.r, a derivation for a(b (x) c) = ab (x) c and
    (b (x) c)a = b (x) ca.  Pairing without the swap gives the opposite
    coproduct, which is coassociative but not a derivation for these actions.
    """
    if not is_r_matrix(r):
        raise NotAnRMatrix("[[r, r]] != 0")
    star = induced_star(r_operator(r)).mu      # star[i, j, k] on the dual basis
    return Coproduct(r.algebra, star.transpose(2, 1, 0).copy())


def infinitesimal_bialgebra_check(alg: Algebra, cop: Coproduct) -> CheckReport:
    d = cop.delta
    mu = alg.mu
    rep = CheckReport()
    lhs = np.einsum("kpc,pab->kabc", d, d)        # (delta (x) id) delta
    rhs = np.einsum("kap,pbc->kabc", d, d)        # (id (x) delta) delta
    rep.add("coassociative", sorted({i[0] for i, _ in nonzero_entries(normalize(lhs - rhs))}))
    der = (np.einsum("ijk,kxy->ijxy", mu, d)
           - np.einsum("jpy,ipx->ijxy", d, mu)
           - np.einsum("ixp,pjy->ijxy", d, mu))
    rep.add("delta(ab) = a delta(b) + delta(a) b",
            sorted({i[:2] for i, _ in nonzero_entries(normalize(der))}))
    return rep


def _module_compat(mu, phi, psi) -> CheckReport:
    """psi(phi(a) b) = a psi(b) and psi(a phi(b)) = psi(a) b on basis pairs."""
    rep = CheckReport()
    lhs = np.einsum("xa,xbk,wk->abw", phi, mu, psi)
    rhs = np.einsum("yb,ayw->abw", psi, mu)
    rep.add("psi(phi(a) b) = a psi(b)", sorted({i[:2] for i, _ in nonzero_entries(normalize(lhs - rhs))}))
    lhs = np.einsum("xb,axk,wk->abw", phi, mu, psi)
    rhs = np.einsum("ya,ybw->abw", psi, mu)
    rep.add("psi(a phi(b)) = psi(a) b", sorted({i[:2] for i, _ in nonzero_entries(normalize(lhs - rhs))}))
    return rep


def weak_morphism_check(r1: Wedge2, r2: Wedge2, phi, psi, cross_check: bool = True) -> CheckReport:
    """(phi, psi) from r1 to r2: (psi (x) id)(r2) = (id (x) phi)(r1),
    psi(phi(a) b) = a psi(b) and psi(a phi(b)) = psi(a) b.

    With ``cross_check`` the verdict is compared with (phi, psi^T) as a
    morphism of the coadjoint O-operators r1# -> r2#.
    """
    alg = r1.algebra
    phi, psi = qarray(phi), qarray(psi)
    mu = alg.mu
    rep = CheckReport()
    viol = algebra_morphism_violations(phi, alg, alg)
    rep.add("phi-algebra-morphism", viol)
    d = normalize(psi.dot(r2.matrix()) - r1.matrix().dot(phi.T))
    rep.add("(psi x id)(r2) = (id x phi)(r1)", [i for i, _ in nonzero_entries(d)])
    rep.merge(_module_compat(mu, phi, psi))
    if cross_check:
        dual = is_o_morphism(r_operator(r1), r_operator(r2), phi, psi.T)
        if dual.ok != rep.ok:
            raise ArithmeticError("weak morphism test and its O-operator form disagree")
    return rep


def bialgebra_weak_morphism_check(alg: Algebra, cop1: Coproduct, cop2: Coproduct, phi, psi) -> CheckReport:
    """(phi, psi) from (A, ., delta1) to (A, ., delta2).

    The coalgebra condition is read as psi^T being an algebra map
    (A*, *_1) -> (A*, *_2), i.e. delta1 psi = (psi (x) psi) delta2: this is
    the direction in which a weak morphism of r-matrices transports.
    """
    phi, psi = qarray(phi), qarray(psi)
    mu = alg.mu
    rep = CheckReport()
    rep.add("phi-algebra-morphism", algebra_morphism_violations(phi, alg, alg))
    d1, d2 = cop1.delta, cop2.delta
    lhs = np.einsum("kx,kij->xij", psi, d1)                 # delta1(psi(e_x))
    rhs = np.einsum("ia,jb,xab->xij", psi, psi, d2)         # (psi x psi) delta2(e_x)
    coalg = sorted({i[0] for i, _ in nonzero_entries(normalize(lhs - rhs))})
    dual = algebra_morphism_violations(psi.T, cop1.dual_product(), cop2.dual_product())
    if (not coalg) != (not dual):
        raise ArithmeticError("coalgebra map test and its dual disagree")
    rep.add("psi coalgebra map", coalg)
    return rep.merge(_module_compat(mu, phi, psi))


def generates_linear_deformation(r: Wedge2, k: Wedge2, cross_check: bool = True) -> bool:
    """Whether r + t k is an r-matrix for every t (all three t-coefficients vanish)."""
    ok = (is_zero(yb_bracket(r)) and is_zero(yb_polarized(r, k)) and is_zero(yb_bracket(k)))
    if cross_check and is_zero(yb_bracket(r)):
        d = TruncatedDeformation(r_operator(r), (r_sharp(k), zeros((r.algebra.dim,) * 2)))
        if bool(check_order(d)) != ok:
            raise ArithmeticError("linear deformation of r and of r# disagree")
    return ok
