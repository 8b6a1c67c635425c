import itertools
import random

import numpy as np
import pytest

from conftest import rand_tensor
from ooperators.algebra import adjoint_bimodule, one_sided_bimodule
from ooperators.cochains import d_hoch
from ooperators.cohomology import cocycles
from ooperators.deformation import (InvalidDeformation, NotANijenhuisElement, TruncatedDeformation,
                                    certificate_verifies, check_order, dendriform_transport_check,
                                    equivalence_pair, extend, formal_equivalence_check,
                                    infinitesimal, linear_equivalence_check, obstruction,
                                    order_residual, bracket_residual, rigidity_certificate,
                                    series_morphism_check, trivial_deformation)
from ooperators.exactla import InconsistentSystem
from ooperators.fixtures import abelian2, poly3, poly3_D, poly3_R, ut2, ut2_R, zero_operator
from ooperators.operators import Operator
from ooperators.tensor import equal, identity, is_zero, normalize, qarray, zeros

UT2_T = Operator(adjoint_bimodule(ut2()), qarray([[0, -1, 0], [0, 0, 0], [0, 0, 0]]))
A_NIJ = qarray([-1, 0, 0])
AVG = Operator(one_sided_bimodule(ut2(), "left"), identity(3))


def random_cocycle(op, rng):
    vecs = cocycles(op, 1).vectors()
    v = sum((rng.randint(-2, 2) * w for w in vecs), zeros(len(vecs[0])))
    return normalize(v.reshape(op.bimodule.dim, op.algebra.dim).T)


def test_zero_terms_hold_at_every_order():
    d = TruncatedDeformation(poly3_R(), (zeros((3, 3)),) * 3)
    assert check_order(d)


def test_term_shape_checked():
    with pytest.raises(ValueError):
        TruncatedDeformation(poly3_R(), (zeros((2, 3)),))


def test_non_cocycle_fails_at_order_one():
    t1 = qarray([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    assert not is_zero(d_hoch(poly3_R(), t1.T))
    rep = check_order(TruncatedDeformation(poly3_R(), (t1,)))
    assert not rep and rep.failing_order == 1


def test_raw_and_bracket_forms_agree(rng):
    op = UT2_T
    for _ in range(5):
        d = TruncatedDeformation(op, tuple(rand_tensor(rng, (3, 3), -1, 1, (1,)) for _ in range(2)))
        for k in range(3):
            assert equal(order_residual(d, k), normalize(-bracket_residual(d, k)))


def test_integration_generates_a_deformation():
    op = poly3_R()
    d = TruncatedDeformation(op, (op.matrix,))
    assert check_order(d, 2)
    t1, cocycle = infinitesimal(d)
    assert cocycle and equal(t1, op.cochain)


def test_infinitesimal_needs_a_term():
    with pytest.raises(ValueError):
        infinitesimal(TruncatedDeformation(poly3_R(), ()))


def test_trivial_deformation_on_ut2():
    d = trivial_deformation(UT2_T, A_NIJ)
    assert not is_zero(d.terms[0])
    assert check_order(d, 2)
    t1, cocycle = infinitesimal(d)
    assert cocycle
    phi, psi = equivalence_pair(UT2_T, A_NIJ)
    rep = series_morphism_check(UT2_T.bimodule, d.matrices(), [UT2_T.matrix], phi, psi, 2)
    assert rep.ok


def test_trivial_deformation_examples():
    d = trivial_deformation(UT2_T, zeros(3))
    assert is_zero(d.terms[0])
    d = trivial_deformation(poly3_R(), qarray([1, 2, 3]))
    assert is_zero(d.terms[0])
    with pytest.raises(NotANijenhuisElement):
        trivial_deformation(ut2_R(), qarray([1, 0, 0]))


def test_equivalence_pair_fails_for_wrong_target():
    d = trivial_deformation(UT2_T, A_NIJ)
    phi, psi = equivalence_pair(UT2_T, A_NIJ)
    wrong = [UT2_T.matrix, d.terms[0]]
    assert not series_morphism_check(UT2_T.bimodule, d.matrices(), wrong, phi, psi, 1).ok


def test_linear_equivalence_examples():
    op = UT2_T
    t = d_hoch(op, A_NIJ).T
    assert linear_equivalence_check(op, t, t, zeros(3)).ok
    rep = linear_equivalence_check(op, t, zeros((3, 3)), A_NIJ)
    assert rep.ok
    assert any(k.startswith("consequence: ") for k in rep.conditions)


def test_linear_equivalence_fails_off_coboundary():
    op = poly3_R()
    rep = linear_equivalence_check(op, op.matrix, zeros((3, 3)), qarray([0, 1, 0]))
    assert not rep.ok
    assert "consequence: T1 - T2 = d_H(a)" in rep.failed()


def test_linear_equivalence_preconditions():
    with pytest.raises(InvalidDeformation):
        linear_equivalence_check(poly3_R(), poly3_D().matrix, zeros((3, 3)), zeros(3))


def test_obstruction_vanishes_for_zero_terms():
    res = obstruction(TruncatedDeformation(poly3_R(), (zeros((3, 3)),)))
    assert res.is_cocycle_verified and res.class_trivial
    assert is_zero(res.cocycle) and is_zero(res.extension)


def test_obstruction_for_trivial_and_integration_deformations():
    for d in (trivial_deformation(UT2_T, A_NIJ), TruncatedDeformation(poly3_R(), (poly3_R().matrix,))):
        res = obstruction(d)
        assert is_zero(res.cocycle) and res.class_trivial
        assert check_order(d.extended(res.extension))


def test_obstructed_extension_has_a_certificate():
    op = zero_operator(adjoint_bimodule(poly3()))
    d = TruncatedDeformation(op, (poly3_D().matrix,))
    assert check_order(d)
    res = obstruction(d)
    assert res.is_cocycle_verified
    assert not res.class_trivial and res.extension is None
    assert certificate_verifies(d, res)
    with pytest.raises(InconsistentSystem):
        extend(d)


def test_obstruction_rejects_invalid_input():
    with pytest.raises(InvalidDeformation):
        obstruction(TruncatedDeformation(poly3_D(), (zeros((3, 3)),)))
    t1 = qarray([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    with pytest.raises(InvalidDeformation):
        obstruction(TruncatedDeformation(poly3_R(), (t1,)))


@pytest.mark.parametrize("op", [poly3_R(), UT2_T, ut2_R(), zero_operator(adjoint_bimodule(ut2()))])
def test_random_cocycles_extend_or_certify(op):
    rng = random.Random(7)
    for _ in range(3):
        d = TruncatedDeformation(op, (random_cocycle(op, rng),))
        for _ in range(2):
            res = obstruction(d)
            assert res.is_cocycle_verified
            if not res.class_trivial:
                assert certificate_verifies(d, res)
                break
            d = d.extended(res.extension)
            assert check_order(d)


def test_formal_equivalence_examples():
    d = TruncatedDeformation(UT2_T, (d_hoch(UT2_T, A_NIJ).T,))
    const = TruncatedDeformation(UT2_T, ())
    assert formal_equivalence_check(d, d, zeros(3), order=2).ok
    assert formal_equivalence_check(d, const, A_NIJ, order=2).ok
    assert not formal_equivalence_check(d, const, zeros(3), order=1).ok


def test_formal_equivalence_infinitesimal_consequence():
    op = UT2_T
    d = trivial_deformation(op, A_NIJ)
    const = TruncatedDeformation(op, ())
    for v in itertools.product((-1, 0, 1), repeat=3):
        a = qarray(v)
        if formal_equivalence_check(d, const, a, order=1).ok:
            assert equal(d.terms[0].T, d_hoch(op, a))


def test_formal_equivalence_requires_valid_deformations():
    t1 = qarray([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    with pytest.raises(InvalidDeformation):
        formal_equivalence_check(TruncatedDeformation(poly3_R(), (t1,)),
                                 TruncatedDeformation(poly3_R(), ()), zeros(3), order=1)


def test_rigidity_positive_on_averaging_identity():
    cands = [qarray(v) for v in ([1, 0, 0], [0, 1, 0], [1, 0, 1], [0, 0, 1])]
    rep = rigidity_certificate(AVG, cands)
    assert rep.nijenhuis == [True, True, True, False]
    assert rep.positive and rep.dim_Z1 == rep.dim_span == 3 and rep.uncovered == []


def test_rigidity_negative_examples():
    rep = rigidity_certificate(poly3_R(), [qarray(v) for v in np.eye(3, dtype=int).tolist()])
    assert not rep.positive and rep.dim_Z1 == 3 and rep.dim_span == 0
    z = zero_operator(adjoint_bimodule(abelian2()))
    rep = rigidity_certificate(z, [qarray([1, 0]), qarray([0, 1])])
    assert not rep.positive and rep.dim_Z1 == 4


@pytest.mark.parametrize("op", [poly3_R(), UT2_T, ut2_R()])
def test_dendriform_transport(op):
    rng = random.Random(11)
    d = TruncatedDeformation(op, (random_cocycle(op, rng),))
    res = obstruction(d)
    if res.class_trivial:
        d = d.extended(res.extension)
    assert check_order(d)
    assert dendriform_transport_check(d).ok


def test_dendriform_transport_detects_invalid_deformation():
    t1 = qarray([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    d = TruncatedDeformation(poly3_R(), (t1,))
    assert not dendriform_transport_check(d).ok
