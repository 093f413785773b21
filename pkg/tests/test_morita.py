import random

import pytest

from alg2.algebra import NotSemisimple, field, matrix_algebra, product, truncated_polynomial
from alg2.bimodule import K, Bimodule, regular, simple_module
from alg2.corpus import _block
from alg2.duality import random_hom
from alg2.exactla import Mat
from alg2.morita import (
    CoherenceCells,
    associator,
    compose1,
    dual_object_data,
    hcomp2,
    interchange_holds,
    is_equivalence,
    left_unitor,
    pentagon_holds,
    right_adjoint,
    right_unitor,
    triangle_holds,
    vcomp2,
    verify_bicategory,
)
from mutants import bump

M2 = matrix_algebra(2)
ROWS = simple_module(M2, 0)
COLS = _block(M2, 0, field(), 0)


def vect(n):
    I = Mat.identity(n)
    return Bimodule(K, K, n, [I], [I])


def test_compose_examples():
    assert compose1(ROWS, COLS).dim == 1
    assert compose1(vect(2), vect(3)).dim == 6
    assert left_unitor(ROWS).is_invertible()


def test_two_cell_composition(corpus):
    rng = random.Random(4)
    for M, N in corpus.chains(2, 8, rng):
        assert hcomp2(M.identity(), N.identity()).mat.is_identity()
        f = random_hom(M, M, rng)
        assert vcomp2(f, M.zero_to(M)).mat.is_zero()
        assert interchange_holds(f, random_hom(M, M, rng), random_hom(N, N, rng), random_hom(N, N, rng))[0]


def test_coherence_cells_over_q_are_identities():
    a, b, c = vect(2), vect(3), vect(2)
    assert associator(a, b, c).mat.is_identity()
    assert left_unitor(b).mat.is_identity()
    assert right_unitor(b).mat.is_identity()


def test_pentagon_and_triangle(corpus):
    rng = random.Random(5)
    for chain in corpus.chains(4, 5, rng):
        assert pentagon_holds(*chain)[0]
    for chain in corpus.chains(2, 5, rng):
        assert triangle_holds(*chain)[0]


def test_corrupted_associator_breaks_pentagon(corpus):
    class Bad(CoherenceCells):
        def associator(self, M, N, P):
            f = super().associator(M, N, P)
            return type(f)(f.source, f.target, bump(f.mat))

    rec = verify_bicategory(corpus, seed=0, cells=Bad(), n_chains=10)
    assert any(r.check == "pentagon" for r in rec.failures)


def test_right_adjoint_examples():
    adj = right_adjoint(regular(M2))
    assert adj.triangles_ok and adj.g.dim == 4
    adj = right_adjoint(ROWS)
    assert adj.g.dim == 2 and adj.triangles_ok
    assert adj.counit.source.dim == 4 and adj.counit.is_invertible()
    assert adj.unit.target.dim == 1 and adj.unit.is_invertible()
    with pytest.raises(NotSemisimple):
        right_adjoint(regular(truncated_polynomial(2)))


def test_right_adjoint_triangles_on_corpus(corpus):
    cells = [M for M in corpus.one_cells() if corpus.cell_semisimple(M)]
    assert len(cells) >= 30
    assert all(right_adjoint(M).triangles_ok for M in cells)


def test_equivalence_examples():
    assert is_equivalence(ROWS)[0]
    assert is_equivalence(simple_module(matrix_algebra(3), 0))[0]
    assert not is_equivalence(simple_module(product(field(), field()), 0))[0]
    ok, w = is_equivalence(regular(product(M2, field())))
    assert ok and is_equivalence(w.g)[0]


def test_dual_object_examples():
    d = dual_object_data(field())
    assert d.zigzag_ok and d.ev.dim == d.coev.dim == 1
    assert dual_object_data(M2).zigzag_ok
    d = dual_object_data(truncated_polynomial(2))
    assert d.zigzag_ok
