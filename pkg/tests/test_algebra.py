from fractions import Fraction as F

import pytest

from ooperators.algebra import (Algebra, Bimodule, adjoint_bimodule, algebra_morphism_violations,
                                coadjoint_bimodule, is_algebra_morphism, is_associative,
                                one_sided_bimodule, semidirect_product, validate_algebra,
                                validate_bimodule)
from ooperators.fixtures import abelian2, poly3, ut2
from ooperators.tensor import is_zero, qarray, zeros


def one_dim():
    return Algebra(qarray([[[1]]]))


def bad2():
    mu = zeros((2, 2, 2))
    mu[0, 0, 1] = F(1)
    mu[1, 0, 0] = F(1)
    return Algebra(mu)


def test_poly3_is_associative():
    assert validate_algebra(poly3()) == []
    assert is_associative(one_dim())


def test_nonassociative_witness():
    bad = validate_algebra(bad2())
    first = bad[0]
    assert first[0] == (0, 0, 0)
    assert list(first[1]) == [1, 0]     # (e0 e0) e0 = e1 e0 = e0
    assert list(first[2]) == [0, 0]     # e0 (e0 e0) = e0 e1 = 0


def test_shape_is_checked():
    with pytest.raises(ValueError):
        Algebra(zeros((2, 2, 3)))


@pytest.mark.parametrize("alg", [poly3(), ut2(), abelian2(), one_dim()])
def test_standard_bimodules_validate(alg):
    assert validate_bimodule(adjoint_bimodule(alg)) == []
    assert validate_bimodule(coadjoint_bimodule(alg)) == []
    assert validate_bimodule(one_sided_bimodule(alg, "left")) == []
    assert validate_bimodule(one_sided_bimodule(alg, "right")) == []


def test_adjoint_copies_mu():
    mod = adjoint_bimodule(poly3())
    assert (mod.left == poly3().mu).all()
    assert is_zero(adjoint_bimodule(abelian2()).left)


def test_coadjoint_index_transcription():
    mod = coadjoint_bimodule(one_dim())
    assert mod.left.tolist() == [[[1]]] and mod.right.tolist() == [[[1]]]
    mu = ut2().mu
    cm = coadjoint_bimodule(ut2())
    for i in range(3):
        for u in range(3):
            for v in range(3):
                assert cm.left[i, u, v] == mu[v, i, u]
                assert cm.right[u, i, v] == mu[i, v, u]


def test_trivial_left_action_is_a_bimodule():
    alg = ut2()
    mod = Bimodule(alg, zeros((3, 3, 3)), alg.mu.copy())
    assert validate_bimodule(mod) == []


def test_broken_bimodule_is_reported():
    alg = ut2()
    left = alg.mu.copy()
    left[0, 1, 1] = F(2)
    bad = validate_bimodule(Bimodule(alg, left, alg.mu.copy()))
    assert bad and all(len(v) == 4 for v in bad)


def test_one_sided_side_checked():
    with pytest.raises(ValueError):
        one_sided_bimodule(poly3(), "up")
    assert is_zero(one_sided_bimodule(poly3(), "left").right)


def test_semidirect_one_dim():
    sd = semidirect_product(one_dim(), adjoint_bimodule(one_dim()))
    e, f = qarray([1, 0]), qarray([0, 1])
    assert list(sd.mul(e, f)) == [0, 1]
    assert list(sd.mul(f, f)) == [0, 0]


def test_semidirect_examples():
    z = semidirect_product(abelian2(), adjoint_bimodule(abelian2()))
    assert z.dim == 4 and is_zero(z.mu)
    assert validate_algebra(semidirect_product(poly3(), adjoint_bimodule(poly3()))) == []
    assert validate_algebra(semidirect_product(ut2(), coadjoint_bimodule(ut2()))) == []


def test_semidirect_refuses_invalid_module():
    alg = ut2()
    left = alg.mu.copy()
    left[0, 1, 1] = F(2)
    with pytest.raises(ValueError):
        semidirect_product(alg, Bimodule(alg, left, alg.mu.copy()))


def test_morphism_examples():
    a = poly3()
    assert is_algebra_morphism(qarray([[1, 0, 0], [0, 1, 0], [0, 0, 1]]), a)
    assert is_algebra_morphism(zeros((3, 3)), a)
    assert is_algebra_morphism(qarray([[1, 0, 0], [0, 2, 0], [0, 0, 4]]), a)
    bad = algebra_morphism_violations(qarray([[1, 0, 0], [0, 2, 0], [0, 0, 3]]), a, a)
    assert bad[0][0] == (1, 1)


def test_morphism_shape_checked():
    with pytest.raises(ValueError):
        algebra_morphism_violations(zeros((2, 3)), poly3(), poly3())
