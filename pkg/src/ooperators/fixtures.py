"""The small algebras and operators used throughout the tests and the CLI."""

from __future__ import annotations

from fractions import Fraction

from .algebra import Algebra, adjoint_bimodule, coadjoint_bimodule, one_sided_bimodule
from .operators import Operator
from .tensor import qarray, zeros

__all__ = [
    "truncated_poly",
    "poly3",
    "dual2",
    "abelian",
    "abelian2",
    "ut2",
    "mat2",
    "poly3_R",
    "poly3_D",
    "ut2_R",
    "proj2_averaging",
    "mat2_T",
    "CATALOG",
]


def truncated_poly(n: int) -> Algebra:
    """Q[x]/(x^n) on the basis 1, x, ..., x^{n-1}."""
    mu = zeros((n, n, n))
    for i in range(n):
        for j in range(n - i):
            mu[i, j, i + j] = Fraction(1)
    labels = tuple(["1", "x"] + [f"x^{k}" for k in range(2, n)])[:n]
    return Algebra(mu, labels)


def poly3() -> Algebra:
    return truncated_poly(3)


def dual2() -> Algebra:
    return truncated_poly(2)


def abelian(n: int) -> Algebra:
    return Algebra(zeros((n, n, n)), tuple(f"e{i}" for i in range(n)))


def abelian2() -> Algebra:
    return abelian(2)


def ut2() -> Algebra:
    """Upper-triangular 2x2 matrices on E11, E12, E22."""
    mu = zeros((3, 3, 3))
    for i, j, k in [(0, 0, 0), (0, 1, 1), (1, 2, 1), (2, 2, 2)]:
        mu[i, j, k] = Fraction(1)
    return Algebra(mu, ("E11", "E12", "E22"))


def mat2() -> Algebra:
    """Full 2x2 matrices on E11, E12, E21, E22."""
    idx = [(0, 0), (0, 1), (1, 0), (1, 1)]
    mu = zeros((4, 4, 4))
    for a, (i, j) in enumerate(idx):
        for b, (k, l) in enumerate(idx):
            if j == k:
                mu[a, b, idx.index((i, l))] = Fraction(1)
    return Algebra(mu, ("E11", "E12", "E21", "E22"))


def poly3_R() -> Operator:
    """Integration on Q[x]/(x^3): R(1) = x, R(x) = x^2/2, R(x^2) = 0."""
    return Operator(adjoint_bimodule(poly3()),
                    qarray([[0, 0, 0], [1, 0, 0], [0, "1/2", 0]]))


def poly3_D() -> Operator:
    """Differentiation on Q[x]/(x^3); not an O-operator."""
    return Operator(adjoint_bimodule(poly3()),
                    qarray([[0, 1, 0], [0, 0, 2], [0, 0, 0]]))


def ut2_R() -> Operator:
    """R(E22) = E12, zero on E11 and E12: a weight-0 Rota-Baxter operator."""
    m = zeros((3, 3))
    m[1, 2] = Fraction(1)
    return Operator(adjoint_bimodule(ut2()), m)


def proj2_averaging() -> Operator:
    """P(1) = 1, P(x) = 0 on Q[x]/(x^2), over the left one-sided bimodule."""
    return Operator(one_sided_bimodule(dual2(), "left"), qarray([[1, 0], [0, 0]]))


def mat2_T() -> Operator:
    """T(E11) = -E21, T(E12) = E11 on the adjoint bimodule of 2x2 matrices."""
    m = zeros((4, 4))
    m[0, 1] = Fraction(1)
    m[2, 0] = Fraction(-1)
    return Operator(adjoint_bimodule(mat2()), m)


def zero_operator(mod) -> Operator:
    return Operator(mod, zeros((mod.algebra.dim, mod.dim)))


def dual2_coadjoint_zero() -> Operator:
    return zero_operator(coadjoint_bimodule(dual2()))


# name -> (operator, r-matrix entries or None)
CATALOG = {
    "poly3_R": lambda: (poly3_R(), None),
    "poly3_D": lambda: (poly3_D(), None),
    "dual2": lambda: (zero_operator(adjoint_bimodule(dual2())), [(0, 1, Fraction(1))]),
    "abelian2": lambda: (zero_operator(adjoint_bimodule(abelian2())), [(0, 1, Fraction(1))]),
    "ut2": lambda: (zero_operator(adjoint_bimodule(ut2())), None),
    "proj2_averaging": lambda: (proj2_averaging(), None),
}
