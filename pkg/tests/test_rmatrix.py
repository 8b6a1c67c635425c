import itertools

import numpy as np
import pytest

from conftest import rand_tensor
from ooperators.algebra import is_algebra_morphism
from ooperators.exactla import InconsistentSystem, kernel, solve
from ooperators.fixtures import abelian2, dual2, poly3, ut2
from ooperators.rmatrix import (Coproduct, NotAnRMatrix, Wedge2, bialgebra_weak_morphism_check,
                                generates_linear_deformation, induced_coproduct,
                                infinitesimal_bialgebra_check, is_r_matrix, r_operator, r_sharp,
                                weak_morphism_check, yb_bracket, yb_polarized)
from ooperators.tensor import equal, identity, is_zero, normalize, qarray, zeros


def grid(alg):
    n = alg.dim
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for vals in itertools.product((-1, 0, 1), repeat=len(pairs)):
        yield Wedge2.from_triples(alg, [(i, j, v) for (i, j), v in zip(pairs, vals)])


def test_wedge_basics():
    r = Wedge2.from_triples(ut2(), [(0, 1, 2), (0, 1, -1), (1, 2, 0)])
    assert r.triples() == [(0, 1, 1)]
    assert equal(r.matrix(), normalize(-r.matrix().T))
    assert Wedge2.from_matrix(ut2(), r.matrix()) == r
    assert (r + r.scaled(-1)) == Wedge2.zero(ut2())
    with pytest.raises(ValueError):
        Wedge2.from_triples(ut2(), [(1, 0, 1)])
    with pytest.raises(ValueError):
        Wedge2.from_matrix(ut2(), identity(3))


def test_r_sharp_examples():
    assert is_zero(r_sharp(Wedge2.zero(dual2())))
    s = r_sharp(Wedge2.from_triples(dual2(), [(0, 1, 1)]))
    assert list(s[:, 0]) == [0, 1]      # r#(1*) = x
    assert list(s[:, 1]) == [-1, 0]     # r#(x*) = -1


def test_r_sharp_is_skew(rng):
    for _ in range(5):
        m = rand_tensor(rng, (3, 3))
        r = Wedge2.from_matrix(ut2(), normalize(m - m.T))
        s = r_sharp(r)
        assert equal(s, normalize(-s.T))


def test_yb_examples():
    r = Wedge2.from_triples(dual2(), [(0, 1, 1)])
    yb = yb_bracket(r)
    assert yb[0, 1, 1] == -1
    assert not is_r_matrix(r)
    assert is_zero(yb_bracket(Wedge2.zero(dual2())))
    assert all(is_zero(yb_bracket(x)) for x in grid(abelian2()))


def test_r_matrix_grid_counts():
    # both routes are compared inside is_r_matrix
    counts = {name: sum(is_r_matrix(r) for r in grid(alg))
              for name, alg in (("dual2", dual2()), ("abelian2", abelian2()), ("ut2", ut2()), ("poly3", poly3()))}
    assert counts == {"dual2": 1, "abelian2": 3, "ut2": 5, "poly3": 1}


def test_r_operator_is_coadjoint():
    r = Wedge2.from_triples(ut2(), [(0, 1, 1)])
    op = r_operator(r)
    assert op.is_o_operator
    assert equal(op.matrix, r_sharp(r))


def test_induced_coproduct_examples():
    assert is_zero(induced_coproduct(Wedge2.zero(ut2())).delta)
    assert is_zero(induced_coproduct(Wedge2.from_triples(abelian2(), [(0, 1, 1)])).delta)
    with pytest.raises(NotAnRMatrix):
        induced_coproduct(Wedge2.from_triples(dual2(), [(0, 1, 1)]))


def test_coproduct_is_commutator_with_r():
    alg = ut2()
    for r in grid(alg):
        if not is_r_matrix(r):
            continue
        delta = induced_coproduct(r).delta
        rm = r.matrix()
        for x in range(3):
            ex = identity(3)[x]
            # r.x - x.r with a(b (x) c) = ab (x) c and (b (x) c)a = b (x) ca
            rx = np.einsum("ij,jyk,y->ik", rm, alg.mu, ex)
            xr = np.einsum("ij,yik,y->kj", rm, alg.mu, ex)
            assert equal(delta[x], normalize(rx - xr))


@pytest.mark.parametrize("alg", [ut2(), abelian2(), dual2()])
def test_triangular_bialgebras(alg):
    for r in grid(alg):
        if is_r_matrix(r):
            assert infinitesimal_bialgebra_check(alg, induced_coproduct(r)).ok


def test_bialgebra_check_rejects_non_derivation():
    alg = ut2()
    delta = zeros((3, 3, 3))
    delta[0, 0, 0] = qarray(1)[()]
    rep = infinitesimal_bialgebra_check(alg, Coproduct(alg, delta))
    assert not rep.ok
    assert infinitesimal_bialgebra_check(alg, Coproduct(alg, zeros((3, 3, 3)))).ok


def test_coproduct_shape_checked():
    with pytest.raises(ValueError):
        Coproduct(ut2(), zeros((3, 3)))


def affine_weak_morphisms(r1, r2, phi):
    """All psi making (phi, psi) a weak morphism, as particular + kernel vectors."""
    mu = r1.algebra.mu

    def resid(psi):
        d = psi.dot(r2.matrix()) - r1.matrix().dot(phi.T)
        l1 = np.einsum("xa,xbk,wk->abw", phi, mu, psi) - np.einsum("yb,ayw->abw", psi, mu)
        l2 = np.einsum("xb,axk,wk->abw", phi, mu, psi) - np.einsum("ya,ybw->abw", psi, mu)
        return np.concatenate([d.ravel(), l1.ravel(), l2.ravel()])

    f0 = resid(zeros((3, 3)))
    cols = []
    for j in range(9):
        e = zeros(9)
        e[j] = qarray(1)[()]
        cols.append(resid(e.reshape(3, 3)) - f0)
    mat = np.stack(cols, axis=1)
    try:
        x = solve(mat, normalize(-f0))
    except InconsistentSystem:
        return []
    return [normalize(v.reshape(3, 3)) for v in [x] + [x + k for k in kernel(mat, 9).vectors()]]


def test_weak_morphisms_transport_to_bialgebras():
    alg = ut2()
    rs = [r for r in grid(alg) if is_r_matrix(r) and r.entries]
    vecs = [qarray(v) for v in itertools.product((-1, 0, 1), repeat=3)]
    idem = [v for v in vecs if equal(alg.mul(v, v), v)]
    ends = [np.stack([a, b, c], axis=1) for a, b, c in itertools.product(idem, vecs, idem)]
    ends = [p for p in ends if is_algebra_morphism(p, alg)]
    assert len(ends) == 27
    found = 0
    for r1, r2 in itertools.product(rs, repeat=2):
        cop1, cop2 = induced_coproduct(r1), induced_coproduct(r2)
        for phi in ends:
            for psi in affine_weak_morphisms(r1, r2, phi):
                assert weak_morphism_check(r1, r2, phi, psi).ok
                assert bialgebra_weak_morphism_check(alg, cop1, cop2, phi, psi).ok
                found += not is_zero(psi)
    assert found == 72


def test_weak_morphism_examples():
    r = Wedge2.from_triples(ut2(), [(0, 1, 1)])
    eye = identity(3)
    assert weak_morphism_check(r, r, eye, eye).ok
    cop = induced_coproduct(r)
    assert bialgebra_weak_morphism_check(ut2(), cop, cop, eye, eye).ok
    broken = eye.copy()
    broken[1, 1] = qarray(2)[()]
    rep = weak_morphism_check(r, r, eye, broken)
    assert not rep.ok and rep.failed()


def test_equivalence_transport_by_scaling():
    # (phi (x) phi)(r1) = r2 for phi = diag(1, 2) on abelian2, so (phi, phi^-1) is a weak iso
    alg = abelian2()
    r1 = Wedge2.from_triples(alg, [(0, 1, 1)])
    r2 = Wedge2.from_triples(alg, [(0, 1, 2)])
    phi = qarray([[1, 0], [0, 2]])
    inv = qarray([[1, 0], [0, "1/2"]])
    assert equal(phi.dot(r1.matrix()).dot(phi.T), r2.matrix())
    assert weak_morphism_check(r1, r2, phi, inv).ok


def test_inner_automorphism_fixes_r():
    alg = ut2()
    r = Wedge2.from_triples(alg, [(0, 1, 1)])
    # conjugation by I + E12: E11 -> E11 - E12, E12 -> E12, E22 -> E22 + E12
    phi = qarray([[1, 0, 0], [-1, 1, 1], [0, 0, 1]])
    assert is_algebra_morphism(phi, alg)
    assert equal(phi.dot(r.matrix()).dot(phi.T), r.matrix())


def test_bialgebra_weak_morphism_rejects_non_coalgebra_map():
    alg = ut2()
    cop = induced_coproduct(Wedge2.from_triples(alg, [(0, 1, 1)]))
    psi = qarray([[0, 0, 0], [0, 2, 0], [0, 0, 0]])
    rep = bialgebra_weak_morphism_check(alg, cop, cop, identity(3), psi)
    assert "psi coalgebra map" in rep.failed()


def test_linear_deformations_of_r_matrices():
    alg = ut2()
    r = Wedge2.from_triples(alg, [(0, 1, 1)])
    assert generates_linear_deformation(r, Wedge2.zero(alg))
    assert generates_linear_deformation(r, r)
    k = Wedge2.from_triples(alg, [(1, 2, 1)])
    assert is_r_matrix(k)
    assert not is_zero(yb_polarized(r, k))
    assert not generates_linear_deformation(r, k)


def test_unswapped_pairing_gives_the_opposite_coproduct():
    alg = ut2()
    broken = 0
    for r in grid(alg):
        if not is_r_matrix(r) or r == Wedge2.zero(alg):
            continue
        opp = Coproduct(alg, induced_coproduct(r).delta.transpose(0, 2, 1).copy())
        rep = infinitesimal_bialgebra_check(alg, opp)
        assert not rep.conditions["coassociative"]
        broken += bool(rep.conditions["delta(ab) = a delta(b) + delta(a) b"])
    assert broken == 4
