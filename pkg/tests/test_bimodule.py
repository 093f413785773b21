import random

import pytest

from alg2.algebra import NotSemisimple, field, matrix_algebra, opposite, product, truncated_polynomial
from alg2.bimodule import (
    Bimodule,
    CompositionMismatch,
    Intertwiner,
    K,
    NotAnIntertwiner,
    adjoint_iso,
    bimodule_hom,
    braid_iso,
    change_basis,
    double_dual_iso,
    dual_module,
    dual_of_tensor,
    dual_of_tensor_inverse_formula,
    find_isomorphism,
    hom_right,
    intertwiner_adjoint,
    regular,
    simple_module,
    swap,
    tensor_hom_iso,
    tensor_over,
)
from alg2.corpus import _block
from alg2.duality import random_hom
from alg2.exactla import Mat, inverse, is_invertible, rank

M2 = matrix_algebra(2)


def vect(n: int) -> Bimodule:
    """``Q^n`` as a ``(Q, Q)``-bimodule."""
    I = Mat.identity(n)
    return Bimodule(K, K, n, [I], [I], label=f"Q^{n}")


ROWS = simple_module(M2, 0)  # (Q, M2)
COLS = _block(M2, 0, field(), 0)  # (M2, Q)


def test_swap_is_involutive():
    for M in (ROWS, COLS, regular(product(M2, field()))):
        S = swap(swap(M))
        assert S == M
        assert S.left_act == M.left_act and S.right_act == M.right_act
    R = swap(regular(M2))
    assert R.left_alg is opposite(M2) and R.right_alg is opposite(M2)
    assert R.left_act == regular(M2).right_act
    assert R.defects() == []


def test_tensor_over_examples():
    T = tensor_over(vect(2), vect(3))
    assert T.module.dim == 6 and T.proj.is_identity()
    T = tensor_over(ROWS, COLS)
    assert T.module.dim == 1
    assert rank(T.proj) == 1 and (T.proj @ T.sect).is_identity()
    for M in (ROWS, COLS, regular(M2)):
        assert tensor_over(regular(M.left_alg), M).module.dim == M.dim
    with pytest.raises(CompositionMismatch):
        tensor_over(ROWS, ROWS)


def test_hom_examples():
    assert hom_right(regular(M2), regular(M2)).module.dim == 4
    assert hom_right(vect(2), vect(3)).module.dim == 6
    assert hom_right(ROWS, regular(M2)).module.dim == 2


def test_dual_module_examples(corpus):
    for A in (M2, field(), product(M2, field())):
        assert dual_module(regular(A)).dim == A.dim
    for M in corpus.one_cells():
        if corpus.cell_semisimple(M):
            assert dual_module(M).dim == M.dim
    Z = vect(0)
    assert dual_module(Z).dim == 0


def test_adjoint_of_intertwiners(corpus):
    rng = random.Random(1)
    M = regular(product(M2, field()))
    assert intertwiner_adjoint(M.identity()).mat.is_identity()
    assert intertwiner_adjoint(M.zero_to(M)).mat.is_zero()
    for N in corpus.one_cells()[:12]:
        f, g = random_hom(N, N, rng), random_hom(N, N, rng)
        assert intertwiner_adjoint(g @ f) == intertwiner_adjoint(f) @ intertwiner_adjoint(g)


def test_intertwiner_validation():
    bad = Intertwiner(regular(M2), regular(M2), Mat.from_rows([[1, 0, 0, 0]] + [[0] * 4] * 3))
    assert not bad.is_valid()
    with pytest.raises(NotAnIntertwiner):
        bad.checked()
    with pytest.raises(ValueError):
        Intertwiner(ROWS, ROWS, Mat.identity(3))


def test_braid_examples(corpus):
    b = braid_iso(vect(2), vect(3))
    assert b == Mat.from_sparse(6, 6, {(y * 2 + x, x * 3 + y): 1 for x in range(2) for y in range(3)})
    assert (braid_iso(swap(COLS), swap(ROWS)) @ braid_iso(ROWS, COLS)).is_identity()
    for M, N in corpus.chains(2, 10, random.Random(2)):
        d = tensor_over(M, N).module.dim
        assert rank(braid_iso(M, N)) == d


def test_adjoint_iso_examples():
    a = adjoint_iso(vect(2), vect(3), vect(5))
    assert a.source.dim == a.target.dim == 30 and a.is_invertible()
    a = adjoint_iso(regular(M2), COLS, vect(2))
    assert a.is_valid() and a.is_invertible()
    assert a.source.dim == hom_right(COLS, vect(2)).module.dim


def test_double_dual_examples():
    p = double_dual_iso(vect(1))
    assert p.mat.is_identity()
    for A in (M2, product(M2, field())):
        p = double_dual_iso(regular(A))
        assert p.is_valid() and p.is_invertible() and p.source.dim == p.target.dim
    with pytest.raises(NotSemisimple):
        double_dual_iso(regular(truncated_polynomial(2)))


def test_tensor_hom_examples():
    t = tensor_hom_iso(vect(2), vect(3))
    assert t.source.dim == t.target.dim == 6 and t.is_invertible()
    t = tensor_hom_iso(ROWS, regular(M2))
    assert t.source.dim == t.target.dim == ROWS.dim and t.is_invertible() and t.is_valid()


def test_dual_of_tensor_matches_closed_form(corpus):
    for M, N in corpus.chains(2, 12, random.Random(3), semisimple=True):
        chi = dual_of_tensor(M, N)
        assert is_invertible(chi)
        assert dual_of_tensor_inverse_formula(M, N) == inverse(chi)


def test_zero_dimensional_bimodules():
    Z = Bimodule(K, M2, 0, [Mat.zeros(0, 0)], [Mat.zeros(0, 0)] * 4)
    assert Z.defects() == []
    assert tensor_over(Z, regular(M2)).module.dim == 0
    assert hom_right(Z, regular(M2)).module.dim == 0
    assert hom_right(ROWS, Z).module.dim == 0
    assert dual_module(Z).dim == 0
    assert double_dual_iso(Z).mat.shape == (0, 0)


def test_change_basis_and_isomorphism_search():
    g = Mat.from_rows([[1, 1], [0, 1]])
    N, f = change_basis(ROWS, g)
    assert f.is_valid() and N.defects() == []
    h = find_isomorphism(ROWS, N)
    assert h is not None and h.is_valid() and h.is_invertible()
    assert find_isomorphism(ROWS, simple_module(product(field(), field()), 0)) is None
    assert len(bimodule_hom(regular(M2), regular(M2))) == 1
