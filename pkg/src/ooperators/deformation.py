"""Linear and formal deformations of an O-operator.

A deformation is held modulo t^{n+1} as its coefficient list T_0 = T, T_1,
..., T_n.  Statements "for all t" are checked coefficient by coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cochains import d_hoch, derived_bracket, left_insert, right_insert
from .cohomology import cocycles, differential_matrix
from .exactla import InconsistentSystem, Subspace, solve
from .operators import (
    Operator,
    commutator_action,
    is_nijenhuis_element,
    o_operator_defect,
)
from .report import CheckReport
from .tensor import equal, identity, is_zero, multiply, nonzero_entries, normalize, qarray, substitute, zeros

__all__ = [
    "DEFAULT_ORDER_CAP",
    "TruncatedDeformation",
    "InvalidDeformation",
    "NotANijenhuisElement",
    "OrderReport",
    "order_residual",
    "bracket_residual",
    "check_order",
    "infinitesimal",
    "trivial_deformation",
    "equivalence_pair",
    "series_morphism_check",
    "linear_equivalence_check",
    "ObstructionResult",
    "obstruction",
    "extend",
    "formal_equivalence_check",
    "RigidityReport",
    "rigidity_certificate",
    "deformed_dendriform",
    "dendriform_transport_check",
]

DEFAULT_ORDER_CAP = 4


class InvalidDeformation(ValueError):
    pass


class NotANijenhuisElement(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TruncatedDeformation:
    """T_t = T + t T_1 + ... + t^n T_n modulo t^{n+1}."""

    base: Operator
    terms: tuple = ()

    def __post_init__(self):
        shape = self.base.matrix.shape
        terms = tuple(qarray(t) for t in self.terms)
        for i, t in enumerate(terms, 1):
            if t.shape != shape:
                raise ValueError(f"T_{i} has shape {t.shape}, expected {shape}")
        object.__setattr__(self, "terms", terms)

    @property
    def order(self) -> int:
        return len(self.terms)

    @property
    def bimodule(self):
        return self.base.bimodule

    def coefficient(self, i: int) -> np.ndarray:
        """Matrix of T_i (zero beyond the stored order)."""
        if i == 0:
            return self.base.matrix
        if i <= self.order:
            return self.terms[i - 1]
        return zeros(self.base.matrix.shape)

    def matrices(self) -> list[np.ndarray]:
        return [self.base.matrix, *self.terms]

    def extended(self, t_next) -> "TruncatedDeformation":
        return TruncatedDeformation(self.base, self.terms + (qarray(t_next),))

    def padded(self, order: int) -> "TruncatedDeformation":
        if order <= self.order:
            return self
        extra = tuple(zeros(self.base.matrix.shape) for _ in range(order - self.order))
        return TruncatedDeformation(self.base, self.terms + extra)

    def __eq__(self, other):
        return (isinstance(other, TruncatedDeformation) and self.base == other.base
                and self.order == other.order
                and all(equal(x, y) for x, y in zip(self.terms, other.terms)))

    __hash__ = object.__hash__


def _pair_term(mod, ti, tj) -> np.ndarray:
    """T_i(u) T_j(v) - T_i(u T_j(v) + T_j(u) v) for matrices T_i, T_j."""
    ci, cj = qarray(ti).T, qarray(tj).T
    lhs = multiply(ci, cj, mod.algebra.mu)
    inner = right_insert(mod, cj) + left_insert(mod, cj)
    return lhs - np.tensordot(inner, ci, axes=([2], [0]))


def order_residual(d: TruncatedDeformation, k: int) -> np.ndarray:
    """sum_{i+j=k} [T_i(u)T_j(v) - T_i(uT_j(v) + T_j(u)v)]."""
    mod = d.bimodule
    out = zeros((mod.dim, mod.dim, mod.algebra.dim))
    for i in range(k + 1):
        out = out + _pair_term(mod, d.coefficient(i), d.coefficient(k - i))
    return normalize(out)


def bracket_residual(d: TruncatedDeformation, k: int) -> np.ndarray:
    """[[T, T_k]] + 1/2 sum_{i+j=k, i,j>=1} [[T_i, T_j]] (just 1/2 [[T, T]] at k = 0)."""
    mod = d.bimodule
    cs = [m.T for m in (d.coefficient(i) for i in range(k + 1))]
    if k == 0:
        return normalize(derived_bracket(mod, cs[0], cs[0]) / 2)
    out = derived_bracket(mod, cs[0], cs[k])
    for i in range(1, k):
        out = out + derived_bracket(mod, cs[i], cs[k - i]) / 2
    return normalize(out)


@dataclass
class OrderReport:
    ok: bool
    failing_order: int | None = None
    residual: np.ndarray | None = None

    def __bool__(self):
        return self.ok


def check_order(d: TruncatedDeformation, upto: int | None = None) -> OrderReport:
    """Deformation equations for k = 0..upto (default: the stored order).

    The raw sum and the bracket form are both evaluated; they must agree
    up to the sign relating them.
    """
    upto = d.order if upto is None else upto
    for k in range(upto + 1):
        raw = order_residual(d, k)
        br = bracket_residual(d, k)
        if not equal(raw, normalize(-br)):
            raise ArithmeticError(f"raw and bracket forms disagree at order {k}")
        if not is_zero(raw):
            return OrderReport(False, k, raw)
    return OrderReport(True)


def infinitesimal(d: TruncatedDeformation) -> tuple[np.ndarray, bool]:
    """(T_1 as a cochain, whether it is a 1-cocycle)."""
    if d.order < 1:
        raise ValueError("a deformation of order 0 has no infinitesimal")
    t1 = d.terms[0].T
    return t1, is_zero(d_hoch(d.base, t1))


def trivial_deformation(op: Operator, a) -> TruncatedDeformation:
    """T + t d_H(a) for a Nijenhuis element a."""
    a = qarray(a)
    rep = is_nijenhuis_element(op, a)
    if not rep:
        raise NotANijenhuisElement(f"conditions failed: {rep.failed()}")
    return TruncatedDeformation(op, (d_hoch(op, a).T,))


def equivalence_pair(op: Operator, a) -> tuple[list, list]:
    """([id_A, ad^l_a - ad^r_a], [id_M, l_a - r_a]) as t-series of matrices."""
    a = qarray(a)
    alg = op.algebra
    ad = zeros((alg.dim, alg.dim))
    eye = identity(alg.dim)
    for b in range(alg.dim):
        ad[:, b] = alg.mul(a, eye[b]) - alg.mul(eye[b], a)
    return [eye, normalize(ad)], [identity(op.bimodule.dim), commutator_action(op.bimodule, a)]


def _coef(series, i, shape):
    return series[i] if i < len(series) else zeros(shape)


def series_morphism_check(mod, src: list, tgt: list, phi: list, psi: list, order: int) -> CheckReport:
    """Conditions (i)-(iv) for (phi_t, psi_t) from src_t to tgt_t, t-coefficients 0..order.

    All arguments are lists of matrices, index = power of t.  Violations are
    (order, basis indices).
    """
    alg = mod.algebra
    a, m = alg.dim, mod.dim
    mu = alg.mu
    rep = CheckReport({"(i) phi_t multiplicative": [], "(ii) tgt psi_t = phi_t src": [],
                       "(iii) phi_t(b)psi_t(m) = psi_t(bm)": [],
                       "(iv) psi_t(m)phi_t(b) = psi_t(mb)": []})
    pa, pm, tm = (a, a), (m, m), (a, m)
    for k in range(order + 1):
        c1 = zeros((a, a, a))
        c2 = zeros((a, m))
        c3 = zeros((a, m, m))
        c4 = zeros((m, a, m))
        for i in range(k + 1):
            fi, fj = _coef(phi, i, pa), _coef(phi, k - i, pa)
            gi, gj = _coef(psi, i, pm), _coef(psi, k - i, pm)
            c1 = c1 + np.einsum("xb,yc,xyw->bcw", fi, fj, mu)
            c2 = c2 + _coef(tgt, i, tm).dot(gj) - fi.dot(_coef(src, k - i, tm))
            c3 = c3 + np.einsum("xb,yu,xyw->buw", fi, gj, mod.left)
            c4 = c4 + np.einsum("yu,xb,yxw->ubw", gi, fj, mod.right)
        fk, gk = _coef(phi, k, pa), _coef(psi, k, pm)
        c1 = c1 - np.einsum("bcx,wx->bcw", mu, fk)
        c3 = c3 - np.einsum("buv,wv->buw", mod.left, gk)
        c4 = c4 - np.einsum("ubv,wv->ubw", mod.right, gk)
        for name, c in zip(rep.conditions, (c1, c2.T, c3, c4)):
            rep.add(name, sorted({(k,) + idx[:-1] for idx, _ in nonzero_entries(normalize(c))}))
    return rep


def _generates_linear(op: Operator, t) -> CheckReport:
    t = qarray(t)
    rep = CheckReport()
    cp = normalize(_pair_term(op.bimodule, op.matrix, t) + _pair_term(op.bimodule, t, op.matrix))
    rep.add("cond-p", [i[:2] for i, _ in nonzero_entries(cp)])
    rep.add("cond-q", [i[:2] for i, _ in nonzero_entries(o_operator_defect(Operator(op.bimodule, t)))])
    return rep


def linear_equivalence_check(op: Operator, t1, t2, a) -> CheckReport:
    """Whether T + t T1 and T + t T2 are equivalent through the element a.

    The report carries the preconditions (prefixed ``pre:``), the individual
    consequences, and the morphism identities coefficient-wise in t.  The
    overall verdict is the morphism part; the consequences are implied by it.
    """
    t1, t2, a = qarray(t1), qarray(t2), qarray(a)
    mod = op.bimodule
    alg = op.algebra
    rep = CheckReport()
    for name, t in (("T1", t1), ("T2", t2)):
        pre = _generates_linear(op, t)
        if not pre:
            raise InvalidDeformation(f"{name} does not generate a linear deformation: {pre.failed()}")
    nij = is_nijenhuis_element(op, a)
    consequences = CheckReport()
    diff = normalize(t1 - t2 - d_hoch(op, a).T)
    consequences.add("T1 - T2 = d_H(a)", [(u,) for u in range(mod.dim) if not is_zero(diff[:, u])])
    ad = commutator_action(mod, a)
    lhs = np.stack([alg.mul(a, t1[:, u]) - alg.mul(t1[:, u], a) for u in range(mod.dim)], axis=1)
    rhs = t2.dot(ad)
    consequences.add("a T1(m) - T1(m) a = T2(am - ma)",
                     [(u,) for u in range(mod.dim) if not equal(normalize(lhs[:, u]), normalize(rhs[:, u]))])
    consequences.merge(CheckReport({k: v for k, v in nij.conditions.items()
                                    if not k.startswith("a.dH")}))
    phi, psi = equivalence_pair(op, a)
    morph = series_morphism_check(mod, [op.matrix, t1], [op.matrix, t2], phi, psi, 2)
    # the consequences are necessary conditions of the morphism identities
    if morph.ok and not consequences.ok:
        raise ArithmeticError("morphism holds but a consequence fails")
    return rep.merge(morph).merge(consequences, "consequence: ")


@dataclass
class ObstructionResult:
    cocycle: np.ndarray
    is_cocycle_verified: bool
    class_trivial: bool
    extension: np.ndarray | None = None
    certificate: np.ndarray | None = None


def _ob(d: TruncatedDeformation) -> np.ndarray:
    n = d.order
    mod = d.bimodule
    out = zeros((mod.dim, mod.dim, mod.algebra.dim))
    for i in range(1, n + 1):
        out = out + _pair_term(mod, d.coefficient(i), d.coefficient(n + 1 - i))
    return normalize(out)


def obstruction(d: TruncatedDeformation) -> ObstructionResult:
    """Ob_T and, when its class vanishes, a next-order term T_{n+1}.

    The next term solves d_H(T_{n+1}) = -Ob_T.  (Expanding the order-(n+1)
    equation gives this sign; it agrees with the bracket form of the
    deformation equations.)  The solution returned is the echelon one with
    free coordinates set to zero.
    """
    if not d.base.is_o_operator:
        raise InvalidDeformation("base is not an O-operator")
    rep = check_order(d)
    if not rep:
        raise InvalidDeformation(f"deformation equation fails at order {rep.failing_order}")
    ob = _ob(d)
    closed = is_zero(d_hoch(d.base, ob))
    mat = differential_matrix(d.base, 1)
    try:
        x = solve(mat, normalize(-ob).ravel())
    except InconsistentSystem as exc:
        return ObstructionResult(ob, closed, False, None, exc.certificate)
    t_next = x.reshape(d.bimodule.dim, d.bimodule.algebra.dim).T
    return ObstructionResult(ob, closed, True, normalize(t_next), None)


def certificate_verifies(d: TruncatedDeformation, res: ObstructionResult) -> bool:
    """c kills every coboundary in degree 2 but not Ob, so Ob is not in B^2."""
    if res.certificate is None:
        return False
    c = res.certificate
    mat = differential_matrix(d.base, 1)
    kills_b = all(sum(c[i] * mat[i, j] for i in range(len(c))) == 0 for j in range(mat.shape[1]))
    return kills_b and sum(ci * oi for ci, oi in zip(c, res.cocycle.ravel())) != 0


def extend(d: TruncatedDeformation) -> TruncatedDeformation:
    res = obstruction(d)
    if not res.class_trivial:
        raise InconsistentSystem(res.certificate)
    return d.extended(res.extension)


def formal_equivalence_check(d1: TruncatedDeformation, d2: TruncatedDeformation, a,
                             phi_tail=(), psi_tail=(), order: int | None = None) -> CheckReport:
    """(phi_t, psi_t) = (id + t ad_a + sum t^i phi_i, id + t(l_a - r_a) + sum t^i psi_i)
    as a morphism from d1 to d2, modulo t^{order+1}."""
    if d1.base != d2.base:
        raise ValueError("deformations of different operators")
    order = min(d1.order, d2.order) if order is None else order
    for name, d in (("first", d1), ("second", d2)):
        rep = check_order(d.padded(order), order)
        if not rep:
            raise InvalidDeformation(f"{name} deformation fails at order {rep.failing_order}")
    phi, psi = equivalence_pair(d1.base, a)
    phi = phi + [qarray(p) for p in phi_tail]
    psi = psi + [qarray(p) for p in psi_tail]
    return series_morphism_check(d1.bimodule, d1.padded(order).matrices(),
                                 d2.padded(order).matrices(), phi, psi, order)


@dataclass
class RigidityReport:
    nijenhuis: list[bool]
    dim_Z1: int
    dim_span: int
    positive: bool
    uncovered: list = field(default_factory=list)


def rigidity_certificate(op: Operator, candidates) -> RigidityReport:
    """Whether Z^1 lies in the span of d_H(a_i) over the supplied Nijenhuis elements.

    A positive report certifies the hypothesis of the rigidity criterion for
    the linear span of the witnesses.  A negative report proves nothing.
    """
    flags = [bool(is_nijenhuis_element(op, a)) for a in candidates]
    z1 = cocycles(op, 1)
    images = [d_hoch(op, qarray(a)).ravel() for a, ok in zip(candidates, flags) if ok]
    span = Subspace.span(images, z1.ambient_dim)
    uncovered = [v for v in z1.vectors() if not span.contains(v)]
    return RigidityReport(flags, z1.dim, span.dim, not uncovered, uncovered)


def deformed_dendriform(d: TruncatedDeformation) -> list[tuple[np.ndarray, np.ndarray]]:
    """[(prec_i, succ_i)] with u <_i v = u T_i(v) and u >_i v = T_i(u) v."""
    mod = d.bimodule
    return [(normalize(right_insert(mod, t.T)), normalize(left_insert(mod, t.T)))
            for t in d.matrices()]


def dendriform_transport_check(d: TruncatedDeformation) -> CheckReport:
    """Each t-coefficient (0..order) of each dendriform axiom for (<_t, >_t)."""
    parts = deformed_dendriform(d)
    rep = CheckReport()
    for k in range(d.order + 1):
        lhs = {1: 0, 2: 0, 3: 0}
        for i in range(k + 1):
            pi, si = parts[i]
            pj, sj = parts[k - i]
            lhs[1] = lhs[1] + substitute(pj, 0, pi) - substitute(pi, 1, pj + sj)
            lhs[2] = lhs[2] + substitute(pj, 0, si) - substitute(si, 1, pj)
            lhs[3] = lhs[3] + substitute(sj, 0, pi + si) - substitute(si, 1, sj)
        for j, name in ((1, "(x<y)<z = x<(y*z)"), (2, "(x>y)<z = x>(y<z)"), (3, "(x*y)>z = x>(y>z)")):
            rep.add(name, sorted({(k,) + idx[:3] for idx, _ in nonzero_entries(normalize(lhs[j]))}))
    return rep
