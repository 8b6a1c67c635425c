"""Helpers for dense object arrays of Fractions.

A multilinear map ``V1 x ... x Vn -> W`` is stored as an array of shape
``(dim V1, ..., dim Vn, dim W)``: the input axes first, the output axis last.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

import numpy as np

from .exactla import to_rational

ZERO = Fraction(0)
ONE = Fraction(1)

_vec_rational = np.vectorize(to_rational, otypes=[object])


def qarray(data, shape=None) -> np.ndarray:
    """Object array of Fractions from nested lists / arrays of exact scalars."""
    arr = np.array(data, dtype=object)
    arr = _vec_rational(arr) if arr.size else arr.astype(object)
    if shape is not None:
        arr = arr.reshape(shape)
    return arr


def zeros(shape) -> np.ndarray:
    return np.full(shape, ZERO, dtype=object)


def identity(n: int) -> np.ndarray:
    out = zeros((n, n))
    for i in range(n):
        out[i, i] = ONE
    return out


def basis_vector(n: int, i: int) -> np.ndarray:
    v = zeros(n)
    v[i] = ONE
    return v


def is_zero(t) -> bool:
    return all(x == 0 for x in np.asarray(t, dtype=object).flat)


def equal(a, b) -> bool:
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def normalize(t) -> np.ndarray:
    """Coerce every entry to Fraction (tensordot may leave plain ints)."""
    t = np.asarray(t, dtype=object)
    return _vec_rational(t) if t.size else t


def nonzero_entries(t):
    t = np.asarray(t, dtype=object)
    return [(idx, t[idx]) for idx in np.ndindex(t.shape) if t[idx] != 0]


def substitute(p: np.ndarray, slot: int, x: np.ndarray) -> np.ndarray:
    """Plug the multilinear map ``x`` into input ``slot`` of ``p``.

    ``p`` has ``p.ndim - 1`` inputs; ``x``'s output dimension must equal the
    dimension of that input.  The result keeps the natural argument order.
    """
    k = x.ndim - 1
    t = np.tensordot(x, p, axes=([k], [slot]))
    # axes of t: x inputs (k), p inputs before slot, p inputs after slot, out
    perm = list(range(k, k + slot)) + list(range(k)) + list(range(k + slot, t.ndim))
    return t.transpose(perm)


def apply_linear(mat: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Post-compose the output of ``t`` with the matrix ``mat`` (rows = target)."""
    return np.tensordot(t, mat, axes=([t.ndim - 1], [1]))


def multiply(x: np.ndarray, y: np.ndarray, mu: np.ndarray) -> np.ndarray:
    """(x . y)(u.., v..) = mu(x(u..), y(v..)) for vector-valued maps x, y."""
    p, q = x.ndim - 1, y.ndim - 1
    t = np.tensordot(x, mu, axes=([p], [0]))       # (u.., j, k)
    t = np.tensordot(t, y, axes=([p], [q]))         # (u.., k, v..)
    perm = list(range(p)) + list(range(p + 1, p + 1 + q)) + [p]
    return t.transpose(perm)


def perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def signed_permutations(n: int):
    for p in permutations(range(n)):
        yield p, perm_sign(p)
