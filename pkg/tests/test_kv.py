import random

import pytest

from alg2.algebra import NotSemisimple, field, group_algebra_elementary_2, matrix_algebra, product, truncated_polynomial
from alg2.bimodule import regular, simple_module
from alg2.duality import random_hom
from alg2.exactla import Mat
from alg2.kv import (
    KVFunctor,
    KVNat,
    KVSpace,
    RepDuality,
    i_component,
    kv_strict_involution,
    mor_sides,
    rep_1,
    rep_2,
    rep_compositor,
    rep_object,
    theta,
)

M2 = matrix_algebra(2)
ROWS = simple_module(M2, 0)


def test_rep_object_examples():
    r = rep_object(product(M2, field()))
    assert r.kv.rank == 2 and r.simple_dims == (2, 1)
    assert rep_object(group_algebra_elementary_2(1)).simple_dims == (1, 1)
    with pytest.raises(NotSemisimple):
        rep_object(truncated_polynomial(2))


def test_rep_on_one_cells():
    A = product(M2, field())
    assert rep_1(regular(A)).functor == KVFunctor.identity(KVSpace(2))
    assert rep_1(ROWS).mult == ((1,),)
    c = rep_compositor(ROWS, regular(M2))
    assert c.is_invertible()


def test_rep_on_two_cells():
    R = regular(product(M2, field()))
    F = rep_1(R).functor
    assert rep_2(R.identity()) == KVNat.identity(F)
    assert all(x.is_zero() for row in rep_2(R.zero_to(R)).blocks for x in row)
    rng = random.Random(8)
    f, g = random_hom(R, R, rng), random_hom(R, R, rng)
    assert rep_2(g @ f) == rep_2(g).after(rep_2(f))


def test_kv_involution():
    inv = kv_strict_involution()
    V, W = KVSpace(1), KVSpace(2)
    F = KVFunctor(V, W, ((2,), (1,)))
    G = KVFunctor(V, W, ((1,), (1,)))
    eta = KVNat(F, G, ((Mat.from_rows([[1, 2]]),), (Mat.from_rows([[3]]),)))
    d = inv.on_2(eta)
    assert d.source == G and d.target == F
    assert d.blocks[0][0] == Mat.from_rows([[1], [2]])
    # contravariant on vertical composition
    eps = KVNat(G, F, ((Mat.from_rows([[1], [1]]),), (Mat.from_rows([[2]]),)))
    assert inv.on_2(eps.after(eta)) == inv.on_2(eta).after(inv.on_2(eps))
    assert inv.on_1(F) is F and inv.y(W) == KVFunctor.identity(W)


def test_kv_validation():
    with pytest.raises(ValueError):
        KVSpace(-1)
    with pytest.raises(ValueError):
        KVFunctor(KVSpace(1), KVSpace(1), ((-1,),))
    F = KVFunctor.identity(KVSpace(1))
    with pytest.raises(ValueError):
        KVNat(F, F, ((Mat.identity(2),),))


def test_i_component_examples():
    ic = i_component(field())
    assert ic.perm == (0,) and ic.iso[0].mat.is_identity()
    ic = i_component(M2)
    assert ic.perm == (0,) and ic.iso[0].source.dim == 2 == ic.unit[0].target.dim
    assert ic.functor().is_permutation()


def test_theta_examples():
    V = rep_object(field()).simples[0]
    t = theta(field(), V)
    assert t.mat.is_identity() and t.is_invertible()
    assert theta(M2, ROWS).is_invertible()


@pytest.mark.parametrize("A", [field(), M2, product(field(), field())], ids=lambda A: A.label)
def test_mor_sides_agree(A):
    cells = RepDuality()
    for V in rep_object(A).simples:
        lhs, rhs = mor_sides(cells, A, V)
        assert lhs.mat == rhs.mat and lhs.is_invertible()
        if A.dim == 1:
            assert lhs.mat == Mat.identity(1)
