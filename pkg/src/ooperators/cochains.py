"""Graded complexes and brackets attached to an algebra, a bimodule and an operator.

Array layouts (``a = dim A``, ``m = dim M``, ``V = A (+) M``):

* cochain of degree n in Hom(M^n, A): shape ``(m,)*n + (a,)``; degree 0 is an
  A-vector.  Flattening in C order gives the lexicographic (u1..un, k) basis.
* big cochain of degree n in Hom(V^{n+1}, V): shape ``(a+m,)*(n+2)``.
* dendriform cochain of arity n: shape ``(n,) + (m,)*n + (m,)``, the leading
  axis is the label [r] (0-based).
* alternating cochains: :class:`AltCochain`.

Operators are passed as objects with ``bimodule`` and ``matrix`` attributes
(``matrix`` has rows indexed by A and columns by M), see
:class:`ooperators.operators.Operator`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .algebra import Algebra, Bimodule
from .tensor import (
    equal,
    identity,
    is_zero,
    multiply,
    normalize,
    perm_sign,
    qarray,
    signed_permutations,
    substitute,
    zeros,
)

__all__ = [
    "degree",
    "cochain_shape",
    "basis_cochain",
    "gerstenhaber_circ",
    "gerstenhaber_bracket",
    "mc_element",
    "embed_cochain",
    "restrict_cochain",
    "derived_bracket",
    "derived_bracket_deg0",
    "bracket",
    "bracket_via_gerstenhaber",
    "t_t_bracket",
    "d_hoch",
    "d_ce",
    "AltCochain",
    "skew_symmetrize",
    "skew_chain_sign",
    "theta",
    "dend_unit",
    "dend_partial_comp",
    "dend_bracket",
    "dend_differential",
    "psi",
    "NotAnOOperator",
]


class NotAnOOperator(ValueError):
    pass


def degree(f) -> int:
    return np.ndim(f) - 1


def cochain_shape(mod: Bimodule, n: int) -> tuple[int, ...]:
    return (mod.dim,) * n + (mod.algebra.dim,)


def basis_cochain(mod: Bimodule, n: int, index: int) -> np.ndarray:
    shape = cochain_shape(mod, n)
    f = zeros(int(np.prod(shape)))
    f[index] = 1
    return normalize(f.reshape(shape))


def _tcochain(op) -> np.ndarray:
    """The operator as a degree-1 cochain, shape (m, a)."""
    return qarray(op.matrix).T


# -- insertions of A-valued maps into the module actions --------------------

def left_insert(mod: Bimodule, q: np.ndarray) -> np.ndarray:
    """(q.., u) -> q(..) u, an M-valued map of one more argument."""
    return _left_ins(mod.left, q)


def right_insert(mod: Bimodule, q: np.ndarray) -> np.ndarray:
    """(u, q..) -> u q(..)."""
    return _right_ins(mod.right, q)


def _left_ins(left, q):
    return np.tensordot(q, left, axes=([q.ndim - 1], [0]))


def _right_ins(right, q):
    n = q.ndim - 1
    t = np.tensordot(right, q, axes=([1], [n]))     # (u, w, q..)
    return t.transpose([0] + list(range(2, n + 2)) + [1])


def _apply(tc: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Compose an M-valued map with the operator (given as cochain tc)."""
    return np.tensordot(x, tc, axes=([x.ndim - 1], [0]))


# -- Gerstenhaber structure on Hom(V^{n+1}, V) --------------------------------

def gerstenhaber_circ(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """f o g = sum_i (-1)^{(i-1) n} f(.., g(v_i..v_{i+n}), ..)."""
    if f.shape[-1] != g.shape[-1]:
        raise ValueError("cochains live on different spaces")
    m, n = degree(f) - 1, degree(g) - 1
    out = zeros((f.shape[-1],) * (m + n + 2))
    for i in range(m + 1):
        term = substitute(f, i, g)
        out = out + term if (i * n) % 2 == 0 else out - term
    return out


def gerstenhaber_bracket(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    m, n = degree(f) - 1, degree(g) - 1
    fg, gf = gerstenhaber_circ(f, g), gerstenhaber_circ(g, f)
    return fg - gf if (m * n) % 2 == 0 else fg + gf


def mc_element(alg: Algebra, mod: Bimodule) -> np.ndarray:
    """mu + l + r as a degree-1 element of Hom(V^2, V), A's basis first.

    No axioms are checked here: the point of the element is that its square
    detects them.
    """
    if mod.algebra.dim != alg.dim:
        raise ValueError("bimodule is over an algebra of another dimension")
    n, m = alg.dim, mod.dim
    out = zeros((n + m,) * 3)
    out[:n, :n, :n] = alg.mu
    out[:n, n:, n:] = mod.left
    out[n:, :n, n:] = mod.right
    return out


def embed_cochain(mod: Bimodule, p: np.ndarray) -> np.ndarray:
    """Hom(M^n, A) inside Hom(V^n, V): zero unless every input is in M."""
    a, m = mod.algebra.dim, mod.dim
    n = degree(p)
    out = zeros((a + m,) * (n + 1))
    out[(slice(a, None),) * n + (slice(0, a),)] = p
    return out


def restrict_cochain(mod: Bimodule, big: np.ndarray) -> np.ndarray:
    a = mod.algebra.dim
    n = degree(big)
    return big[(slice(a, None),) * n + (slice(0, a),)].copy()


# -- the derived bracket on C(M, A) ------------------------------------------

def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def _insertions(mod: Bimodule, p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """sum_i (-1)^{(i-1)n} p(.., q(..)u, ..) - sum_i (-1)^{in} p(.., u q(..), ..)."""
    m, n = degree(p), degree(q)
    xl, xr = left_insert(mod, q), right_insert(mod, q)
    out = zeros(cochain_shape(mod, m + n))
    for i in range(1, m + 1):
        out = out + _sign((i - 1) * n) * substitute(p, i - 1, xl)
        out = out - _sign(i * n) * substitute(p, i - 1, xr)
    return out


def derived_bracket(mod: Bimodule, p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """The bracket of two cochains of degrees m, n >= 1, term by term from the
    explicit five-group expansion."""
    m, n = degree(p), degree(q)
    if m < 1 or n < 1:
        raise ValueError("derived_bracket needs degrees >= 1; use bracket()")
    if p.shape[-1] != mod.algebra.dim or q.shape[-1] != mod.algebra.dim:
        raise ValueError("cochain does not match the bimodule")
    s = _sign(m * n)
    mu = mod.algebra.mu
    out = _insertions(mod, p, q) - s * _insertions(mod, q, p)
    out = out + s * (multiply(p, q, mu) - s * multiply(q, p, mu))
    return normalize(out)


def derived_bracket_deg0(mod: Bimodule, p: np.ndarray, a) -> np.ndarray:
    """[[P, a]] for P of degree m >= 0 and a in A.

    For m = 0 this is b a - a b with b = P, i.e. [[b, a]] is the commutator
    [b, a]_C.
    """
    a = qarray(a)
    m = degree(p)
    mu = mod.algebra.mu
    if m == 0:
        return normalize(mod.algebra.mul(p, a) - mod.algebra.mul(a, p))
    # u -> a u - u a as a matrix indexed (u, w)
    rho = np.tensordot(a, mod.left, axes=([0], [0])) - np.tensordot(mod.right, a, axes=([1], [0]))
    out = zeros(p.shape)
    for i in range(m):
        out = out + substitute(p, i, rho)
    out = out + np.tensordot(p, np.tensordot(mu, a, axes=([1], [0])), axes=([m], [0]))
    out = out - np.tensordot(p, np.tensordot(a, mu, axes=([0], [0])), axes=([m], [0]))
    return normalize(out)


def bracket(mod: Bimodule, p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """The graded Lie bracket on all of C(M, A), degree 0 included."""
    m, n = degree(p), degree(q)
    if m >= 1 and n >= 1:
        return derived_bracket(mod, p, q)
    if n == 0:
        return derived_bracket_deg0(mod, p, q)
    # [[a, Q]] = -(-1)^{0} [[Q, a]]
    return normalize(-derived_bracket_deg0(mod, q, p))


def bracket_via_gerstenhaber(mod: Bimodule, p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """(-1)^m [[mu + l + r, P], Q] computed in Hom(V^*, V) and restricted.

    Independent route to :func:`derived_bracket`.
    """
    m = degree(p)
    pi = mc_element(mod.algebra, mod)
    inner = gerstenhaber_bracket(pi, embed_cochain(mod, p))
    big = gerstenhaber_bracket(inner, embed_cochain(mod, q))
    return normalize(_sign(m) * restrict_cochain(mod, big))


def t_t_bracket(mod: Bimodule, t1, t2) -> np.ndarray:
    """[[T, T']](u, v) for two maps M -> A, directly from the six-term formula."""
    t1, t2 = qarray(t1).T, qarray(t2).T
    out = zeros(cochain_shape(mod, 2))
    for tx, ty in ((t1, t2), (t2, t1)):
        # T(T'(u) v) + T(u T'(v))
        out = out + _apply(tx, left_insert(mod, ty)) + _apply(tx, right_insert(mod, ty))
        out = out - multiply(tx, ty, mod.algebra.mu)
    return normalize(out)


# -- the Hochschild-type differential ----------------------------------------

def _star(op) -> np.ndarray:
    """u * v = u T(v) + T(u) v as an (m, m, m) tensor."""
    tc = _tcochain(op)
    return right_insert(op.bimodule, tc) + left_insert(op.bimodule, tc)


def _require_o_operator(op):
    if not op.is_o_operator:
        raise NotAnOOperator("operator fails T(m)T(n) = T(mT(n) + T(m)n)")


def d_hoch(op, f: np.ndarray, check: bool = True) -> np.ndarray:
    """d_H of an n-cochain (n >= 0)."""
    if check:
        _require_o_operator(op)
    mod = op.bimodule
    f = qarray(f)
    n = degree(f)
    if f.shape != cochain_shape(mod, n):
        raise ValueError(f"cochain shape {f.shape} does not match {cochain_shape(mod, n)}")
    return normalize(hoch_terms(mod.algebra.mu, mod.left, mod.right, _tcochain(op), f))


def hoch_terms(mu, left, right, tc, f) -> np.ndarray:
    """d_H f from raw arrays, with no coercion of the entries.

    Every term is linear in each of (structure tensor, tc, f) separately, so
    this also runs on integer arrays obtained by clearing denominators.
    """
    n = f.ndim - 1
    if n == 0:
        # T(m) a - T(m a) - a T(m) + T(a m)
        ra = np.tensordot(right, f, axes=([1], [0]))     # (u, w)
        la = np.tensordot(f, left, axes=([0], [0]))      # (u, w)
        return (np.tensordot(tc, np.tensordot(mu, f, axes=([1], [0])), axes=([1], [0]))
                - _apply(tc, ra)
                - np.tensordot(tc, np.tensordot(f, mu, axes=([0], [0])), axes=([1], [0]))
                + _apply(tc, la))
    out = multiply(tc, f, mu) - _apply(tc, _right_ins(right, f))
    star = _right_ins(right, tc) + _left_ins(left, tc)
    for i in range(1, n + 1):
        out = out + _sign(i) * substitute(f, i - 1, star)
    s = _sign(n + 1)
    return out + s * multiply(f, tc, mu) - s * _apply(tc, _left_ins(left, f))


# -- alternating cochains and the Chevalley-Eilenberg side ------------------

@dataclass(frozen=True, eq=False)
class AltCochain:
    """An alternating map wedge^n M -> A, stored on increasing index tuples.

    ``values[c]`` is the A-vector at the c-th tuple of
    ``itertools.combinations(range(module_dim), degree)``.
    """

    degree: int
    module_dim: int
    values: np.ndarray   # shape (C(m, n), a)

    def __post_init__(self):
        vals = qarray(self.values)
        if vals.ndim != 2 or vals.shape[0] != comb(self.module_dim, self.degree):
            raise ValueError("wrong number of stored tuples")
        object.__setattr__(self, "values", vals)

    @property
    def alg_dim(self) -> int:
        return self.values.shape[1]

    def tuples(self):
        return list(combinations(range(self.module_dim), self.degree))

    def evaluate(self, idx) -> np.ndarray:
        idx = tuple(idx)
        if len(set(idx)) < len(idx):
            return zeros(self.alg_dim)
        order = sorted(range(len(idx)), key=lambda k: idx[k])
        pos = self.tuples().index(tuple(sorted(idx)))
        return perm_sign(order) * self.values[pos]

    def to_tensor(self) -> np.ndarray:
        out = zeros((self.module_dim,) * self.degree + (self.alg_dim,))
        for c, tup in enumerate(self.tuples()):
            for p, s in signed_permutations(self.degree):
                out[tuple(tup[k] for k in p)] = s * self.values[c]
        return normalize(out)

    @classmethod
    def from_tensor(cls, t: np.ndarray) -> "AltCochain":
        """Read off the increasing-tuple values; ``t`` must already alternate."""
        n = degree(t)
        m = t.shape[0] if n else 0
        vals = [t[tup] for tup in combinations(range(m), n)] if n else [t]
        return cls(n, m, np.array(vals, dtype=object).reshape(len(vals), t.shape[-1]))

    @classmethod
    def zero(cls, n: int, module_dim: int, alg_dim: int) -> "AltCochain":
        return cls(n, module_dim, zeros((comb(module_dim, n), alg_dim)))

    def __eq__(self, other):
        return (isinstance(other, AltCochain) and self.degree == other.degree
                and self.module_dim == other.module_dim and equal(self.values, other.values))

    __hash__ = object.__hash__

    def __neg__(self):
        return AltCochain(self.degree, self.module_dim, normalize(-self.values))

    def is_zero(self) -> bool:
        return is_zero(self.values)


def skew_symmetrize(f: np.ndarray, module_dim: int | None = None) -> AltCochain:
    """S_n f (m_1..m_n) = sum over permutations sigma of sign(sigma) f(m_sigma)."""
    f = qarray(f)
    n = degree(f)
    if n == 0:
        return AltCochain(0, module_dim or 0, f.reshape(1, -1))
    m = f.shape[0]
    vals = []
    for tup in combinations(range(m), n):
        acc = zeros(f.shape[-1])
        for p, s in signed_permutations(n):
            acc = acc + s * f[tuple(tup[k] for k in p)]
        vals.append(acc)
    if not vals:
        return AltCochain.zero(n, m, f.shape[-1])
    return AltCochain(n, m, np.array(vals, dtype=object))


def _rho_a(op) -> np.ndarray:
    """rho_A(u)(a) = T(u)a - T(ua) - aT(u) + T(au) as a tensor (u, a_in, a_out)."""
    mod = op.bimodule
    mu = mod.algebra.mu
    tc = _tcochain(op)
    tu_a = np.einsum("uk,kab->uab", tc, mu)
    a_tu = np.einsum("uk,akb->uab", tc, mu)
    t_ua = np.einsum("uaw,wb->uab", mod.right, tc)
    t_au = np.einsum("auw,wb->uab", mod.left, tc)
    return normalize(tu_a - t_ua - a_tu + t_au)


def d_ce(op, f: AltCochain, check: bool = True) -> AltCochain:
    """Chevalley-Eilenberg differential of the Lie algebra (M, [,]) with
    coefficients in (A, rho_A); standard (-1)^{i+1} / (-1)^{i+j} signs."""
    if check:
        _require_o_operator(op)
    mod = op.bimodule
    m, a = mod.dim, mod.algebra.dim
    n = f.degree
    rho = _rho_a(op)
    star = _star(op)
    lie = star - star.transpose(1, 0, 2)       # [u, v] = u*v - v*u
    full = f.to_tensor()
    vals = []
    for tup in combinations(range(m), n + 1):
        acc = zeros(a)
        for i in range(n + 1):
            rest = tup[:i] + tup[i + 1:]
            acc = acc + _sign(i) * np.tensordot(full[rest] if n else full, rho[tup[i]],
                                                axes=([0], [0]))
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                rest = tuple(x for k, x in enumerate(tup) if k not in (i, j))
                br = lie[tup[i], tup[j]]
                val = np.tensordot(br, full[(slice(None),) + rest], axes=([0], [0]))
                acc = acc + _sign(i + j) * val
        vals.append(acc)
    if not vals:
        return AltCochain.zero(n + 1, m, a)
    return AltCochain(n + 1, m, np.array(vals, dtype=object))


def skew_chain_sign(op, f: np.ndarray) -> int | None:
    """Compare S(d_H f) with d_ce(S f).

    Returns +1 or -1 for the sign that relates them, 0 when both vanish, and
    None when neither sign works.
    """
    lhs = skew_symmetrize(d_hoch(op, f), op.bimodule.dim)
    rhs = d_ce(op, skew_symmetrize(f, op.bimodule.dim))
    if lhs.is_zero() and rhs.is_zero():
        return 0
    if lhs == rhs:
        return 1
    if lhs == -rhs:
        return -1
    return None


# -- the dendriform cochain operad -------------------------------------------

def theta(mod: Bimodule, p: np.ndarray) -> np.ndarray:
    """Theta_n(P) for P of degree n >= 1, a dendriform cochain of arity n+1."""
    n = degree(p)
    if n < 1:
        raise ValueError("theta is defined for degrees n >= 1")
    m = mod.dim
    out = zeros((n + 1,) + (m,) * (n + 2))
    out[0] = _sign(n + 1) * right_insert(mod, p)
    out[n] = left_insert(mod, p)
    return normalize(out)


def dend_unit(m: int) -> np.ndarray:
    return identity(m).reshape(1, m, m)


def dend_partial_comp(f: np.ndarray, i: int, g: np.ndarray) -> np.ndarray:
    """f o_i g for arities m, n and 1 <= i <= m (labels are 1-based in i only).

    g([1] + ... + [n]; ..) is read as the sum of g over all its labels.
    """
    m, n = f.shape[0], g.shape[0]
    if not 1 <= i <= m:
        raise IndexError(f"partial composition index {i} outside 1..{m}")
    d = f.shape[-1]
    gsum = g.sum(axis=0)
    out = zeros((m + n - 1,) + (d,) * (m + n))
    for r in range(1, m + n):
        if r <= i - 1:
            out[r - 1] = substitute(f[r - 1], i - 1, gsum)
        elif r <= i + n - 1:
            out[r - 1] = substitute(f[i - 1], i - 1, g[r - i])
        else:
            out[r - 1] = substitute(f[r - n], i - 1, gsum)
    return normalize(out)


def dend_bracket(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Graded bracket on O(.+1); f in O(m+1), g in O(n+1)."""
    m, n = f.shape[0] - 1, g.shape[0] - 1
    out = zeros((m + n + 1,) + (f.shape[-1],) * (m + n + 2))
    for i in range(1, m + 2):
        out = out + _sign((i - 1) * n) * dend_partial_comp(f, i, g)
    s = _sign(m * n)
    for i in range(1, n + 2):
        out = out - s * _sign((i - 1) * m) * dend_partial_comp(g, i, f)
    return normalize(out)


def dend_differential(pi: np.ndarray, f: np.ndarray, check: bool = True) -> np.ndarray:
    """delta_pi(f) = (-1)^{n-1} [pi, f] for f in O(n)."""
    if check and not is_zero(dend_bracket(pi, pi)):
        raise ValueError("pi is not square-zero")
    n = f.shape[0]
    return normalize(_sign(n - 1) * dend_bracket(pi, f))


def psi(mod: Bimodule, f: np.ndarray) -> np.ndarray:
    """Psi_n f (u_1..u_n, u_{n+1}) = S_n f(u..) u_{n+1} - u_{n+1} S_n f(u..).

    Returned as a dense map on M^{n+1} (alternating in the first n inputs).
    """
    f = qarray(f)
    n = degree(f)
    s = skew_symmetrize(f, mod.dim).to_tensor() if n else f
    return normalize(left_insert(mod, s) - _move_last_first(right_insert(mod, s)))


def _move_last_first(x: np.ndarray) -> np.ndarray:
    """(u, q1..qn, w) -> (q1..qn, u, w)."""
    k = x.ndim - 1
    return x.transpose(list(range(1, k)) + [0, k])
