"""O-operators, Rota-Baxter and averaging operators, and what they induce.

An :class:`Operator` is a linear map T : M -> A stored as a matrix with rows
indexed by the basis of A and columns by the basis of M.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import (
    Algebra,
    Bimodule,
    algebra_morphism_violations,
    one_sided_bimodule,
    semidirect_product,
)
from .cochains import NotAnOOperator, d_hoch, left_insert, right_insert
from .exactla import Subspace
from .report import CheckReport
from .tensor import equal, identity, is_zero, multiply, nonzero_entries, normalize, qarray, substitute, zeros

__all__ = [
    "Operator",
    "o_operator_defect",
    "defect_witnesses",
    "is_rota_baxter",
    "is_left_averaging",
    "is_right_averaging",
    "is_averaging",
    "induced_dendriform",
    "dendriform_violations",
    "induced_star",
    "induced_prelie",
    "prelie_violations",
    "induced_bimodule_on_A",
    "nijenhuis_torsion",
    "nijenhuis_deformed_product",
    "nijenhuis_lift",
    "nijenhuis_lift_check",
    "graph_subalgebra_check",
    "graph_morphism_check",
    "is_o_morphism",
    "dendriform_morphism_check",
    "commutator_action",
    "is_nijenhuis_element",
    "prelie_nijenhuis_check",
    "lie_o_operator_check",
    "NotAnOOperator",
]


@dataclass(frozen=True, eq=False)
class Operator:
    bimodule: Bimodule
    matrix: np.ndarray

    def __post_init__(self):
        mat = qarray(self.matrix)
        shape = (self.bimodule.algebra.dim, self.bimodule.dim)
        if mat.shape != shape:
            raise ValueError(f"operator matrix has shape {mat.shape}, expected {shape}")
        object.__setattr__(self, "matrix", mat)

    @property
    def algebra(self) -> Algebra:
        return self.bimodule.algebra

    @property
    def cochain(self) -> np.ndarray:
        """T as a degree-1 cochain, shape (dim M, dim A)."""
        return self.matrix.T

    @classmethod
    def from_cochain(cls, mod: Bimodule, f) -> "Operator":
        return cls(mod, qarray(f).T)

    @cached_property
    def defect(self) -> np.ndarray:
        return o_operator_defect(self)

    @property
    def is_o_operator(self) -> bool:
        return is_zero(self.defect)

    def __call__(self, m) -> np.ndarray:
        return normalize(self.matrix.dot(qarray(m)))

    def __eq__(self, other):
        return (isinstance(other, Operator) and self.bimodule == other.bimodule
                and equal(self.matrix, other.matrix))

    __hash__ = object.__hash__

    def __repr__(self):
        return f"Operator({self.bimodule.dim} -> {self.algebra.dim})"


def o_operator_defect(op: Operator) -> np.ndarray:
    """defect[u, v] = T(u) T(v) - T(u T(v) + T(u) v), shape (m, m, a).

    This is -1/2 [[T, T]].
    """
    mod = op.bimodule
    tc = op.cochain
    lhs = multiply(tc, tc, mod.algebra.mu)
    star = right_insert(mod, tc) + left_insert(mod, tc)
    rhs = np.tensordot(star, tc, axes=([2], [0]))
    return normalize(lhs - rhs)


def defect_witnesses(op: Operator) -> list[tuple]:
    """((u, v), T(u)T(v), T(uT(v) + T(u)v)) for every failing basis pair."""
    mod = op.bimodule
    tc = op.cochain
    lhs = multiply(tc, tc, mod.algebra.mu)
    rhs = lhs - op.defect
    out = []
    for u in range(mod.dim):
        for v in range(mod.dim):
            if not equal(lhs[u, v], rhs[u, v]):
                out.append(((u, v), lhs[u, v], rhs[u, v]))
    return out


def is_rota_baxter(r, alg: Algebra, weight=0) -> bool:
    """R(a)R(b) = R(aR(b) + R(a)b + weight ab) on all basis pairs."""
    r = qarray(r)
    rc = r.T
    mu = alg.mu
    lhs = multiply(rc, rc, mu)
    inner = (np.einsum("bk,akw->abw", rc, mu) + np.einsum("ak,kbw->abw", rc, mu)
             + qarray(weight) * mu)
    rhs = np.tensordot(inner, rc, axes=([2], [0]))
    return equal(normalize(lhs), normalize(rhs))


def is_left_averaging(p, alg: Algebra) -> bool:
    """P(a)P(b) = P(P(a)b)."""
    return Operator(one_sided_bimodule(alg, "left"), p).is_o_operator


def is_right_averaging(p, alg: Algebra) -> bool:
    """P(a)P(b) = P(aP(b))."""
    return Operator(one_sided_bimodule(alg, "right"), p).is_o_operator


def is_averaging(p, alg: Algebra) -> bool:
    return is_left_averaging(p, alg) and is_right_averaging(p, alg)


def _require(op: Operator):
    if not op.is_o_operator:
        raise NotAnOOperator("operator fails T(m)T(n) = T(mT(n) + T(m)n)")


# -- induced structures on M ---------------------------------------------------

def induced_dendriform(op: Operator) -> tuple[np.ndarray, np.ndarray]:
    """(prec, succ) with u < v = u T(v) and u > v = T(u) v."""
    _require(op)
    tc = op.cochain
    return normalize(right_insert(op.bimodule, tc)), normalize(left_insert(op.bimodule, tc))


def _compose_left(p, q):
    """(x p y) q z as a (x, y, z, out) tensor."""
    return substitute(q, 0, p)


def _compose_right(p, q):
    """x p (y q z)."""
    return substitute(p, 1, q)


def dendriform_violations(prec, succ) -> CheckReport:
    """The three dendriform axioms, each as a list of failing (x, y, z)."""
    prec, succ = qarray(prec), qarray(succ)
    tot = prec + succ
    pairs = {
        "(x<y)<z = x<(y*z)": (_compose_left(prec, prec), _compose_right(prec, tot)),
        "(x>y)<z = x>(y<z)": (_compose_left(succ, prec), _compose_right(succ, prec)),
        "(x*y)>z = x>(y>z)": (_compose_left(tot, succ), _compose_right(succ, succ)),
    }
    rep = CheckReport()
    for name, (lhs, rhs) in pairs.items():
        diff = normalize(lhs - rhs)
        rep.add(name, sorted({idx[:3] for idx, _ in nonzero_entries(diff)}))
    return rep


def induced_star(op: Operator) -> Algebra:
    """(M, u * v = u T(v) + T(u) v)."""
    prec, succ = induced_dendriform(op)
    return Algebra(normalize(prec + succ), op.bimodule.labels)


def induced_prelie(op: Operator) -> np.ndarray:
    """u o v = T(u) v - v T(u)."""
    prec, succ = induced_dendriform(op)
    return normalize(succ - prec.transpose(1, 0, 2))


def prelie_violations(p) -> list[tuple]:
    """Triples where (a o b) o c - a o (b o c) is not symmetric in (a, b)."""
    p = qarray(p)
    assoc = normalize(_compose_left(p, p) - _compose_right(p, p))
    diff = normalize(assoc - assoc.transpose(1, 0, 2, 3))
    return sorted({idx[:3] for idx, _ in nonzero_entries(diff)})


def induced_bimodule_on_A(op: Operator) -> Bimodule:
    """A as a bimodule over (M, *): l_T(m, a) = T(m)a - T(ma), r_T(a, m) = aT(m) - T(am)."""
    star = induced_star(op)
    mod = op.bimodule
    mu = mod.algebra.mu
    tc = op.cochain
    left = np.einsum("uk,kaw->uaw", tc, mu) - np.einsum("uaw,wb->uab", mod.right, tc)
    right = np.einsum("uk,akw->auw", tc, mu) - np.einsum("auw,wb->aub", mod.left, tc)
    return Bimodule(star, normalize(left), normalize(right), mod.algebra.labels)


# -- Nijenhuis operators and the lift to the semidirect product ----------------

def nijenhuis_torsion(mu, n) -> np.ndarray:
    """N(x)N(y) - N(N(x)y + xN(y) - N(xy)) for a bilinear product mu."""
    mu, n = qarray(mu), qarray(n)
    nc = n.T
    lhs = multiply(nc, nc, mu)
    inner = (np.einsum("xk,kyw->xyw", nc, mu) + np.einsum("yk,xkw->xyw", nc, mu)
             - np.tensordot(mu, nc, axes=([2], [0])))
    return normalize(lhs - np.tensordot(inner, nc, axes=([2], [0])))


def nijenhuis_deformed_product(mu, n) -> np.ndarray:
    """x ._N y = N(x)y + xN(y) - N(xy)."""
    mu, n = qarray(mu), qarray(n)
    nc = n.T
    return normalize(np.einsum("xk,kyw->xyw", nc, mu) + np.einsum("yk,xkw->xyw", nc, mu)
                     - np.tensordot(mu, nc, axes=([2], [0])))


def nijenhuis_lift(op: Operator) -> np.ndarray:
    """N_T(a, m) = (T(m), 0) on A (+) M."""
    a, m = op.algebra.dim, op.bimodule.dim
    n = zeros((a + m, a + m))
    n[:a, a:] = op.matrix
    return n


def nijenhuis_lift_check(op: Operator) -> bool:
    """Whether N_T has vanishing torsion on the semidirect product."""
    big = semidirect_product(op.algebra, op.bimodule)
    return is_zero(nijenhuis_torsion(big.mu, nijenhuis_lift(op)))


def _graph(mat) -> list[np.ndarray]:
    """Vectors (x, f(x)) for the basis x of the source of f."""
    mat = qarray(mat)
    src = mat.shape[1]
    eye = identity(src)
    return [np.concatenate([eye[:, j], mat[:, j]]) for j in range(src)]


def _span_is_subalgebra(mu, vectors) -> bool:
    dim = mu.shape[0]
    space = Subspace.span(vectors, dim)
    for x in space.vectors():
        for y in space.vectors():
            prod = np.tensordot(np.tensordot(x, mu, axes=([0], [0])), y, axes=([0], [0]))
            if not space.contains(prod):
                return False
    return True


def graph_subalgebra_check(op: Operator) -> bool:
    """Whether {(T m, m)} is a subalgebra of A (+) M."""
    big = semidirect_product(op.algebra, op.bimodule)
    a = op.algebra.dim
    # graph vectors in the A-first basis: (T f_u, f_u)
    vecs = [np.concatenate([v[op.bimodule.dim:], v[:op.bimodule.dim]])
            for v in _graph(op.matrix)]
    assert all(len(v) == a + op.bimodule.dim for v in vecs)
    return _span_is_subalgebra(big.mu, vecs)


def _direct_sum(mu1, mu2) -> np.ndarray:
    d1, d2 = mu1.shape[0], mu2.shape[0]
    out = zeros((d1 + d2,) * 3)
    out[:d1, :d1, :d1] = mu1
    out[d1:, d1:, d1:] = mu2
    return out


def graph_morphism_check(mod1: Bimodule, mod2: Bimodule, phi, psi) -> bool:
    """Whether {((a, m), (phi a, psi m))} is a subalgebra of (A (+) M) (+) (B (+) N).

    This is equivalent to phi being an algebra morphism together with
    phi(a)psi(m) = psi(am) and psi(m)phi(a) = psi(ma).  The operators
    themselves play no part in it.
    """
    big1 = semidirect_product(mod1.algebra, mod1)
    big2 = semidirect_product(mod2.algebra, mod2)
    a1, m1 = mod1.algebra.dim, mod1.dim
    a2, m2 = mod2.algebra.dim, mod2.dim
    f = zeros((a2 + m2, a1 + m1))
    f[:a2, :a1] = qarray(phi)
    f[a2:, a1:] = qarray(psi)
    return _span_is_subalgebra(_direct_sum(big1.mu, big2.mu), _graph(f))


def is_o_morphism(op1: Operator, op2: Operator, phi, psi) -> CheckReport:
    """(phi, psi) from T : M -> A to T' : N -> B.

    Conditions: phi is an algebra morphism, T' psi = phi T,
    phi(a)psi(m) = psi(am) and psi(m)phi(a) = psi(ma).
    """
    phi, psi = qarray(phi), qarray(psi)
    mod1, mod2 = op1.bimodule, op2.bimodule
    if phi.shape != (op2.algebra.dim, op1.algebra.dim):
        raise ValueError(f"phi has shape {phi.shape}")
    if psi.shape != (mod2.dim, mod1.dim):
        raise ValueError(f"psi has shape {psi.shape}")
    rep = CheckReport()
    rep.add("phi-algebra-morphism", algebra_morphism_violations(phi, op1.algebra, op2.algebra))
    d = normalize(op2.matrix.dot(psi) - phi.dot(op1.matrix))
    rep.add("T' psi = phi T", [(u,) for u in range(mod1.dim) if not is_zero(d[:, u])])
    # phi(a)psi(m) vs psi(am), indexed (a, u, out)
    lhs = np.einsum("xa,yu,xyw->auw", phi, psi, mod2.left)
    rhs = np.einsum("auv,wv->auw", mod1.left, psi)
    rep.add("phi(a)psi(m) = psi(am)", sorted({i[:2] for i, _ in nonzero_entries(normalize(lhs - rhs))}))
    lhs = np.einsum("yu,xa,yxw->uaw", psi, phi, mod2.right)
    rhs = np.einsum("uav,wv->uaw", mod1.right, psi)
    rep.add("psi(m)phi(a) = psi(ma)", sorted({i[:2] for i, _ in nonzero_entries(normalize(lhs - rhs))}))
    return rep


def dendriform_morphism_check(op1: Operator, op2: Operator, psi) -> bool:
    """psi(u < v) = psi(u) < psi(v) and likewise for >."""
    psi = qarray(psi)
    for p1, p2 in zip(induced_dendriform(op1), induced_dendriform(op2)):
        lhs = np.tensordot(p1, psi, axes=([2], [1]))
        rhs = np.einsum("xu,yv,xyw->uvw", psi, psi, p2)
        if not equal(normalize(lhs), normalize(rhs)):
            return False
    return True


# -- Nijenhuis elements ---------------------------------------------------------

def commutator_action(mod: Bimodule, a) -> np.ndarray:
    """Matrix of l_a - r_a : m -> am - ma (rows = target)."""
    return normalize(mod.left_operator(a) - mod.right_operator(a))


def is_nijenhuis_element(op: Operator, a) -> CheckReport:
    """The four condition families, quantified over basis b, c in A and m in M."""
    a = qarray(a)
    mod = op.bimodule
    alg = op.algebra
    n = alg.dim
    rep = CheckReport()
    dha = d_hoch(op, a)                      # (m, a): d_H(a)(f_u)
    bad = []
    for u in range(mod.dim):
        x = dha[u]
        if not is_zero(alg.mul(a, x) - alg.mul(x, a)):
            bad.append((u,))
    rep.add("a.dH(a)(m) - dH(a)(m).a = 0", bad)
    eye = identity(n)
    comms = [normalize(alg.mul(a, eye[b]) - alg.mul(eye[b], a)) for b in range(n)]
    rep.add("(ab-ba)(ac-ca) = 0", [(b, c) for b in range(n) for c in range(n)
                                   if not is_zero(alg.mul(comms[b], comms[c]))])
    ad = commutator_action(mod, a)
    ll, rl = [], []
    for b in range(n):
        lc, rc = mod.left_operator(comms[b]), mod.right_operator(comms[b])
        ll += [(b, u) for u in range(mod.dim) if not is_zero(lc.dot(ad[:, u]))]
        rl += [(b, u) for u in range(mod.dim) if not is_zero(rc.dot(ad[:, u]))]
    rep.add("l_[a,b] l_a = l_[a,b] r_a", ll)
    rep.add("r_[a,b] l_a = r_[a,b] r_a", rl)
    return rep


def prelie_nijenhuis_check(op: Operator, a) -> bool:
    """l_a - r_a is a Nijenhuis operator for u o v = T(u)v - vT(u)."""
    return is_zero(nijenhuis_torsion(induced_prelie(op), commutator_action(op.bimodule, a)))


def lie_o_operator_check(op: Operator) -> bool:
    """[Tm, Tn]_C = T(rho(Tm)n - rho(Tn)m) with rho(a)m = am - ma."""
    mod = op.bimodule
    mu = mod.algebra.mu
    tc = op.cochain
    lhs = multiply(tc, tc, mu)
    lhs = lhs - lhs.transpose(1, 0, 2)
    act = left_insert(mod, tc) - right_insert(mod, tc).transpose(1, 0, 2)   # rho(Tu)v at (u, v)
    inner = act - act.transpose(1, 0, 2)
    return equal(normalize(lhs), normalize(np.tensordot(inner, tc, axes=([2], [0]))))
