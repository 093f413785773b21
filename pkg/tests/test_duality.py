import random

import pytest

from alg2.algebra import NotSemisimple, field, matrix_algebra, opposite, product, truncated_polynomial
from alg2.bimodule import regular
from alg2.duality import (
    DualityInvolution,
    comp_cell,
    comp_cocycle,
    comp_natural,
    on_1,
    on_2,
    on_2_functorial,
    random_hom,
    unit_cell,
    unit_compatible,
    verify_involution,
    verify_pseudofunctor,
    y_cell,
    y_natural,
    y_pseudonatural,
    y_unital,
    zeta,
    zeta_compatibility,
)
from alg2.exactla import Mat
from alg2.records import SKIP
from mutants import bump

ALGEBRAS = [field(), matrix_algebra(2), product(matrix_algebra(2), field()), product(field(), field())]
CELLS = DualityInvolution()


def test_comp_cell_over_q_is_identity():
    R = regular(field())
    chi = comp_cell(R, R)
    assert chi.mat == Mat.identity(1)


def test_unit_cell_evaluates_at_one():
    A = matrix_algebra(2)
    u = unit_cell(A)
    assert u.target == regular(opposite(A)) and u.is_invertible()
    assert (zeta(A).mat @ u.mat).is_identity()
    assert y_cell(regular(field())).mat.is_identity()


@pytest.mark.parametrize("A", ALGEBRAS, ids=lambda A: A.label)
def test_laws_per_algebra(A):
    R = regular(A)
    assert zeta_compatibility(CELLS, A)[0]
    assert y_unital(CELLS, A)[0]
    assert unit_compatible(CELLS, R)[0]
    assert comp_cocycle(CELLS, R, R, R)[0]
    assert y_pseudonatural(CELLS, R, R)[0]
    rng = random.Random(A.dim)
    f, g = random_hom(R, R, rng), random_hom(R, R, rng)
    assert comp_natural(CELLS, f, g)[0]
    assert on_2_functorial(f, g)[0]
    assert y_natural(CELLS, f)[0]


def test_double_dual_of_a_cell_has_same_dimension(corpus):
    for M in corpus.one_cells():
        if corpus.cell_semisimple(M):
            assert on_1(on_1(M)).dim == M.dim
            assert on_2(on_2(M.identity())).mat.is_identity()


def test_corrupted_compositor_breaks_naturality(corpus):
    class Bad(DualityInvolution):
        def comp_cell(self, M, N):
            f = super().comp_cell(M, N)
            return type(f)(f.source, f.target, bump(f.mat))

    rec = verify_pseudofunctor(corpus, seed=0, cells=Bad(), n_pairs=6, n_triples=2)
    assert any(r.check == "comp_natural" for r in rec.failures)


def test_non_semisimple_algebra_is_skipped(corpus):
    rec = verify_involution(corpus, seed=0, n_pairs=2)
    skipped = [r for r in rec.records if r.status == SKIP and r.instance == "Q[x]/x^2"]
    assert {r.check for r in skipped} == {"zeta", "zeta_compatibility"}
    assert all(r.reason == "NotSemisimple" for r in skipped)
    assert not rec.failures
    with pytest.raises(NotSemisimple):
        zeta(truncated_polynomial(2))
