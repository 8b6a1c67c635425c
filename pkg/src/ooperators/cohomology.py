"""Cocycles, coboundaries and cohomology of an O-operator by exact rank computations.

The n-cochains are flattened in C order, i.e. lexicographically on
(u_1, ..., u_n, k).  Column j of the degree-n differential matrix is d_H of
the j-th basis cochain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from .cochains import _require_o_operator, basis_cochain, bracket, cochain_shape, d_hoch, hoch_terms
from .exactla import Subspace, complement, kernel
from .operators import Operator
from .tensor import is_zero, qarray, zeros

__all__ = [
    "DEFAULT_DEGREE_CAP",
    "DegreeCapExceeded",
    "NotACocycle",
    "cochain_dim",
    "differential_matrix",
    "scaled_differential",
    "d_squared_vanishes",
    "cocycles",
    "coboundaries",
    "CohomologyReport",
    "cohomology_report",
    "h0_direct",
    "is_cohomologous",
    "h0_bracket_closure_check",
]

DEFAULT_DEGREE_CAP = 3


class DegreeCapExceeded(ValueError):
    pass


class NotACocycle(ValueError):
    pass


def _check_cap(n: int, cap: int):
    if n < 0:
        raise ValueError("negative degree")
    if n > cap:
        raise DegreeCapExceeded(f"degree {n} is above the cap {cap}")


def cochain_dim(op: Operator, n: int) -> int:
    return int(np.prod(cochain_shape(op.bimodule, n)))


_INT_LIMIT = 2 ** 62


def _denominator_lcm(*arrays) -> int:
    out = 1
    for arr in arrays:
        for x in arr.flat:
            out = lcm(out, Fraction(x).denominator)
    return out


def _max_abs(arr) -> int:
    return max((abs(int(x)) for x in arr.flat), default=0)


def scaled_differential(op: Operator, n: int):
    """(D, s) with D an int64 matrix and D / s the degree-n matrix of d_H.

    Denominators are cleared from the structure tensors and from T; each term
    of d_H is linear in both, so the result is exact.  Returns None when the
    integer bound could overflow.
    """
    _require_o_operator(op)
    mod = op.bimodule
    mu, left, right, tc = mod.algebra.mu, mod.left, mod.right, op.cochain
    s1 = _denominator_lcm(mu, left, right)
    s2 = _denominator_lcm(tc)
    ints = [np.array([int(Fraction(x) * s) for x in arr.flat], dtype=object).reshape(arr.shape)
            for arr, s in ((mu, s1), (left, s1), (right, s1), (tc, s2))]
    width = mod.dim + mod.algebra.dim
    bound = (n + 4) * width ** 2 * max(map(_max_abs, ints[:3]), default=0) * _max_abs(ints[3])
    if bound >= _INT_LIMIT:
        return None
    mu_i, left_i, right_i, tc_i = (a.astype(np.int64) for a in ints)
    cols = cochain_dim(op, n)
    out = np.zeros((cochain_dim(op, n + 1), cols), dtype=np.int64)
    shape = cochain_shape(mod, n)
    for j in range(cols):
        f = np.zeros(cols, dtype=np.int64)
        f[j] = 1
        out[:, j] = hoch_terms(mu_i, left_i, right_i, tc_i, f.reshape(shape)).ravel()
    return out, s1 * s2


def differential_matrix(op: Operator, n: int, via: str = "hoch") -> np.ndarray:
    """Matrix of C^n -> C^{n+1}.

    ``via="hoch"`` uses d_H, ``via="bracket"`` uses d_T = [[T, .]].
    """
    if via not in ("hoch", "bracket"):
        raise ValueError(f"unknown differential {via!r}")
    mod = op.bimodule
    if via == "hoch":
        scaled = scaled_differential(op, n)
        if scaled is not None:
            mat, s = scaled
            return np.array([Fraction(int(x), s) for x in mat.flat], dtype=object).reshape(mat.shape)
    rows, cols = cochain_dim(op, n + 1), cochain_dim(op, n)
    out = zeros((rows, cols))
    for j in range(cols):
        f = basis_cochain(mod, n, j)
        df = d_hoch(op, f) if via == "hoch" else bracket(mod, op.cochain, f)
        out[:, j] = df.ravel()
    return out


def d_squared_vanishes(op: Operator, n: int) -> bool:
    """Whether (matrix of d_H at n+1) x (matrix at n) is exactly zero."""
    hi, lo = scaled_differential(op, n + 1), scaled_differential(op, n)
    if hi is not None and lo is not None:
        bound = _max_abs(hi[0]) * _max_abs(lo[0]) * hi[0].shape[1]
        if bound < _INT_LIMIT:
            return not (hi[0] @ lo[0]).any()
    return is_zero(differential_matrix(op, n + 1).dot(differential_matrix(op, n)))


def cocycles(op: Operator, n: int, cap: int = DEFAULT_DEGREE_CAP, via: str = "hoch") -> Subspace:
    _check_cap(n, cap)
    return kernel(differential_matrix(op, n, via), cochain_dim(op, n))


def coboundaries(op: Operator, n: int, cap: int = DEFAULT_DEGREE_CAP, via: str = "hoch") -> Subspace:
    _check_cap(n, cap)
    if n == 0:
        return Subspace.zero(cochain_dim(op, 0))
    d = differential_matrix(op, n - 1, via)
    return Subspace.span(list(d.T), cochain_dim(op, n))


@dataclass
class CohomologyReport:
    degree: int
    dim_Z: int
    dim_B: int
    cocycle_basis: Subspace
    coboundary_basis: Subspace
    representatives: list = field(default_factory=list)

    @property
    def dim_H(self) -> int:
        return self.dim_Z - self.dim_B


def cohomology_report(op: Operator, n: int, cap: int = DEFAULT_DEGREE_CAP) -> CohomologyReport:
    z = cocycles(op, n, cap)
    b = coboundaries(op, n, cap)
    shape = cochain_shape(op.bimodule, n)
    reps = [v.reshape(shape) for v in complement(z, b)]
    return CohomologyReport(n, z.dim, b.dim, z, b, reps)


def h0_direct(op: Operator) -> Subspace:
    """{a : a T(m) - T(m) a = T(am - ma) for all m}, solved directly."""
    mod = op.bimodule
    mu = mod.algebra.mu
    tc = op.cochain
    # coefficient of a_i in the (u, k) equation
    lhs = np.einsum("uj,ijk->uki", tc, mu) - np.einsum("uj,jik->uki", tc, mu)
    rhs = np.einsum("iuv,vk->uki", mod.left, tc) - np.einsum("uiv,vk->uki", mod.right, tc)
    eqs = (lhs - rhs).reshape(-1, mod.algebra.dim)
    return kernel(eqs, mod.algebra.dim)


def is_cohomologous(op: Operator, f, g, cap: int = DEFAULT_DEGREE_CAP) -> bool:
    f, g = qarray(f), qarray(g)
    if f.shape != g.shape:
        raise ValueError("cochains of different shape")
    n = f.ndim - 1
    z = cocycles(op, n, cap)
    for name, x in (("f", f), ("g", g)):
        if not z.contains(x.ravel()):
            raise NotACocycle(f"{name} is not a cocycle")
    return coboundaries(op, n, cap).contains((f - g).ravel())


def h0_bracket_closure_check(op: Operator) -> bool:
    """[a, b]_C stays in H^0 for a, b in a basis of H^0."""
    h0 = cocycles(op, 0)
    alg = op.algebra
    vecs = h0.vectors()
    return all(h0.contains(alg.mul(a, b) - alg.mul(b, a)) for a in vecs for b in vecs)
