"""The weak duality involution ``(-)^o`` on semisimple algebras and bimodules.

On objects it is the opposite algebra, on 1-cells ``M -> hom_B(M, B)`` (read
as an ``(A^op, B^op)``-bimodule) and on 2-cells precomposition.  The coherence
data consists of

* ``comp_cell(M, N)``: ``(M (x)_B N)^o -> M^o (x)_{B^op} N^o``,
* ``unit_cell(A)``: ``(A)^o -> A^op``, ``f -> f(1)``,
* ``y_cell(M)``: ``M (x)_B B -> A (x)_A M^oo`` with ``y_A`` the identity 1-cell,
* ``zeta(A)``: the inverse of ``unit_cell(A)``.
"""

from __future__ import annotations

import random
from typing import TYPE_CHECKING

from .algebra import Algebra, opposite
from .bimodule import (
    Bimodule,
    Intertwiner,
    bimodule_hom,
    double_dual_iso,
    dual_module,
    dual_of_tensor,
    dual_of_tensor_inverse_formula,
    hcomp,
    hom_right,
    intertwiner_adjoint,
    regular,
    _require_semisimple,
)
from .exactla import Mat
from .morita import associator, compose1, left_unitor, right_adjoint, right_unitor
from .records import Recorder

if TYPE_CHECKING:
    from .corpus import Corpus

__all__ = [
    "on_obj",
    "on_1",
    "on_2",
    "comp_cell",
    "unit_cell",
    "y_cell",
    "zeta",
    "DualityInvolution",
    "random_hom",
    "comp_natural",
    "comp_cocycle",
    "unit_compatible",
    "on_2_functorial",
    "comp_matches_formula",
    "unit_cell_ok",
    "zeta_ok",
    "zeta_compatibility",
    "y_pseudonatural",
    "y_unital",
    "y_natural",
    "y_adjoint_equivalence",
    "verify_pseudofunctor",
    "verify_involution",
]


def on_obj(A: Algebra) -> Algebra:
    return opposite(A)


def on_1(M: Bimodule) -> Bimodule:
    return dual_module(M)


def on_2(f: Intertwiner) -> Intertwiner:
    return intertwiner_adjoint(f)


def comp_cell(M: Bimodule, N: Bimodule) -> Intertwiner:
    _require_semisimple(M.left_alg, M.right_alg, N.right_alg)
    src = dual_module(compose1(M, N))
    tgt = compose1(dual_module(M), dual_module(N))
    return Intertwiner(src, tgt, dual_of_tensor(M, N))


def unit_cell(A: Algebra) -> Intertwiner:
    R = regular(A)
    H = hom_right(R, R)
    cols = [F.apply({i: x for i, x in enumerate(A.unit) if x}) for F in H.basis_mats]
    return Intertwiner(dual_module(R), regular(opposite(A)), Mat.from_columns(A.dim, cols))


def y_cell(M: Bimodule) -> Intertwiner:
    _require_semisimple(M.left_alg, M.right_alg)
    psi = double_dual_iso(M)
    return left_unitor(psi.target).inverse() @ psi @ right_unitor(M)


def zeta(A: Algebra) -> Intertwiner:
    _require_semisimple(A)
    return unit_cell(A).inverse()


class DualityInvolution:
    """Coherence cells of ``(-)^o``; override a method to swap in other cells."""

    def comp_cell(self, M: Bimodule, N: Bimodule) -> Intertwiner:
        return comp_cell(M, N)

    def unit_cell(self, A: Algebra) -> Intertwiner:
        return unit_cell(A)

    def y_cell(self, M: Bimodule) -> Intertwiner:
        return y_cell(M)

    def zeta(self, A: Algebra) -> Intertwiner:
        return zeta(A)


# ---------------------------------------------------------------------------
# individual laws


def random_hom(M: Bimodule, N: Bimodule, rng: random.Random) -> Intertwiner:
    basis = bimodule_hom(M, N)
    mat = Mat.zeros(N.dim, M.dim)
    for b in basis:
        c = rng.randint(-3, 3)
        if c:
            mat = mat + b.scale(c)
    return Intertwiner(M, N, mat)


def _cell_ok(f: Intertwiner) -> bool:
    return f.is_valid() and f.is_invertible()


def comp_natural(cells: DualityInvolution, f: Intertwiner, g: Intertwiner) -> tuple[bool, list[int]]:
    """``chi_{M,N} (f (x) g)^o == (f^o (x) g^o) chi_{M',N'}`` for ``f: M -> M'``, ``g: N -> N'``."""
    lhs = cells.comp_cell(f.source, g.source) @ on_2(hcomp(f, g))
    rhs = hcomp(on_2(f), on_2(g)) @ cells.comp_cell(f.target, g.target)
    return lhs.mat == rhs.mat, [lhs.source.dim, lhs.target.dim]


def comp_cocycle(cells: DualityInvolution, M, N, P) -> tuple[bool, list[int]]:
    """Compatibility of ``chi`` with associators, both sides out of ``(M (x) (N (x) P))^o``."""
    NP, MN = compose1(N, P), compose1(M, N)
    lhs = hcomp(on_1(M).identity(), cells.comp_cell(N, P)) @ cells.comp_cell(M, NP)
    rhs = (associator(on_1(M), on_1(N), on_1(P)) @ hcomp(cells.comp_cell(M, N), on_1(P).identity())
           @ cells.comp_cell(MN, P) @ on_2(associator(M, N, P)))
    return lhs.mat == rhs.mat, [lhs.source.dim, lhs.target.dim]


def unit_compatible(cells: DualityInvolution, M: Bimodule) -> tuple[bool, list[int]]:
    """Both unit laws for ``chi`` against ``unit_cell``; each composite must be the identity of ``M^o``."""
    A, B = M.left_alg, M.right_alg
    D = on_1(M)
    left = (left_unitor(D) @ hcomp(cells.unit_cell(A), D.identity())
            @ cells.comp_cell(regular(A), M) @ on_2(left_unitor(M)))
    right = (right_unitor(D) @ hcomp(D.identity(), cells.unit_cell(B))
             @ cells.comp_cell(M, regular(B)) @ on_2(right_unitor(M)))
    return left.mat.is_identity() and right.mat.is_identity(), [D.dim]


def on_2_functorial(f: Intertwiner, g: Intertwiner) -> tuple[bool, list[int]]:
    """``(g f)^o == f^o g^o`` and identities go to identities."""
    ok = on_2(g @ f).mat == (on_2(f) @ on_2(g)).mat
    ok = ok and on_2(f.source.identity()).mat.is_identity()
    return ok, [f.source.dim, g.target.dim]


def comp_matches_formula(cells: DualityInvolution, M, N) -> tuple[bool, list[int]]:
    """``chi`` inverts the explicit map ``g (x) h -> (m (x) n -> h(g(m) n))``."""
    chi = cells.comp_cell(M, N)
    ok = _cell_ok(chi) and (chi.mat @ dual_of_tensor_inverse_formula(M, N)).is_identity()
    return ok, [chi.source.dim]


def unit_cell_ok(cells: DualityInvolution, A: Algebra) -> tuple[bool, list[int]]:
    u = cells.unit_cell(A)
    # f -> f(1) sends the identity map to the unit of A^op
    R = regular(A)
    H = hom_right(R, R)
    idc = H.coords_of(Mat.identity(A.dim))
    img = u.mat @ Mat.column(idc)
    ok = _cell_ok(u) and tuple(img.col(0)) == A.unit
    return ok, [A.dim]


def zeta_ok(cells: DualityInvolution, A: Algebra) -> tuple[bool, list[int]]:
    z = cells.zeta(A)
    ok = _cell_ok(z) and (z.mat @ unit_cell(A).mat).is_identity()
    ok = ok and z.source == regular(opposite(A)) and z.target == on_1(regular(A))
    return ok, [A.dim]


def zeta_compatibility(cells: DualityInvolution, A: Algebra) -> tuple[bool, list[int]]:
    """``id_A (x) zeta_{A^op} == (id_A (x) zeta_A^o) y_{1_A}`` as maps ``A (x) A -> A (x) (A^op)^o``."""
    R = regular(A)
    lhs = hcomp(R.identity(), cells.zeta(opposite(A)))
    rhs = hcomp(R.identity(), on_2(cells.zeta(A))) @ cells.y_cell(R)
    return lhs.mat == rhs.mat and lhs.target == rhs.target, [lhs.source.dim, lhs.target.dim]


def _G_comp(cells: DualityInvolution, M, N) -> Intertwiner:
    """Compositor of ``(-)^oo``: ``(M (x) N)^oo -> M^oo (x) N^oo``."""
    chi = cells.comp_cell(M, N)
    return cells.comp_cell(on_1(M), on_1(N)) @ on_2(chi).inverse()


def _G_unit(cells: DualityInvolution, A: Algebra) -> Intertwiner:
    """Unitor of ``(-)^oo``: ``(A)^oo -> A``."""
    return cells.unit_cell(opposite(A)) @ on_2(cells.unit_cell(A)).inverse()


def y_pseudonatural(cells: DualityInvolution, M, N) -> tuple[bool, list[int]]:
    """``y_{M (x) N}`` equals the pasting of ``y_M`` and ``y_N`` with the compositor of ``(-)^oo``."""
    A, B, C = M.left_alg, M.right_alg, N.right_alg
    RA, RB, RC = regular(A), regular(B), regular(C)
    MN = compose1(M, N)
    Mdd, Ndd = on_1(on_1(M)), on_1(on_1(N))
    paste = (hcomp(RA.identity(), _G_comp(cells, M, N).inverse())
             @ associator(RA, Mdd, Ndd)
             @ hcomp(cells.y_cell(M), Ndd.identity())
             @ associator(M, RB, Ndd).inverse()
             @ hcomp(M.identity(), cells.y_cell(N))
             @ associator(M, N, RC))
    direct = cells.y_cell(MN)
    return paste.mat == direct.mat, [direct.source.dim, direct.target.dim]


def y_unital(cells: DualityInvolution, A: Algebra) -> tuple[bool, list[int]]:
    R = regular(A)
    lhs = hcomp(R.identity(), _G_unit(cells, A)) @ cells.y_cell(R)
    rhs = left_unitor(R).inverse() @ right_unitor(R)
    return lhs.mat == rhs.mat, [R.dim]


def y_natural(cells: DualityInvolution, f: Intertwiner) -> tuple[bool, list[int]]:
    """``(1 (x) f^oo) y_M == y_{M'} (f (x) 1)``."""
    M, Mp = f.source, f.target
    RA, RB = regular(M.left_alg), regular(M.right_alg)
    lhs = hcomp(RA.identity(), on_2(on_2(f))) @ cells.y_cell(M)
    rhs = cells.y_cell(Mp) @ hcomp(f, RB.identity())
    return lhs.mat == rhs.mat and _cell_ok(cells.y_cell(M)), [M.dim, Mp.dim]


def y_adjoint_equivalence(A: Algebra) -> tuple[bool, list[int]]:
    """``y_A`` (the identity 1-cell) completes to an adjoint equivalence."""
    adj = right_adjoint(regular(A))
    ok = adj.triangles_ok and adj.unit.is_invertible() and adj.counit.is_invertible()
    return ok, [A.dim, adj.g.dim]


# ---------------------------------------------------------------------------
# suites

A_NAT = "duality pseudofunctor: compositor natural in both slots"
A_COC = "duality pseudofunctor: compositor compatible with associators"
A_UNIT = "duality pseudofunctor: compositor compatible with unitors"
A_FUN = "duality pseudofunctor: functoriality on 2-cells"
A_FORM = "duality pseudofunctor: compositor matches explicit inverse formula"
A_UCELL = "duality pseudofunctor: unit cell f -> f(1)"
A_ZETA = "duality involution: zeta components"
A_APPX = "duality involution: zeta compatibility equality"
A_YNAT = "duality involution: y pseudonatural (composition)"
A_YUNIT = "duality involution: y pseudonatural (units)"
A_Y2 = "duality involution: y natural in 2-cells"
A_YADJ = "duality involution: y adjoint equivalence"


def verify_pseudofunctor(corpus: "Corpus", seed: int = 0, cells: DualityInvolution | None = None,
                         n_pairs: int = 30, n_triples: int = 12, rec: Recorder | None = None) -> Recorder:
    cells = cells or DualityInvolution()
    rec = rec or Recorder()
    rng = random.Random(seed)
    for A in corpus.algebras:
        if not corpus.semisimple(A):
            rec.skip("unit_cell", A_UCELL, A.label, "NotSemisimple")
            continue
        rec.run("unit_cell", A_UCELL, A.label, lambda A=A: unit_cell_ok(cells, A))
    for M, N in corpus.chains(2, n_pairs, rng, semisimple=True):
        inst = corpus.describe_chain((M, N))
        f, g = corpus.random_map_from(M, rng), corpus.random_map_from(N, rng)
        rec.run("comp_natural", A_NAT, inst, lambda f=f, g=g: comp_natural(cells, f, g))
        rec.run("comp_formula", A_FORM, inst, lambda M=M, N=N: comp_matches_formula(cells, M, N))
    for M, N, P in corpus.chains(3, n_triples, rng, semisimple=True):
        rec.run("comp_cocycle", A_COC, corpus.describe_chain((M, N, P)),
                lambda M=M, N=N, P=P: comp_cocycle(cells, M, N, P))
    for M in corpus.one_cells():
        inst = corpus.describe(M)
        if not corpus.cell_semisimple(M):
            rec.skip("comp_unit", A_UNIT, inst, "NotSemisimple")
            continue
        rec.run("comp_unit", A_UNIT, inst, lambda M=M: unit_compatible(cells, M))
        f, g = random_hom(M, M, rng), random_hom(M, M, rng)
        rec.run("on_2_functorial", A_FUN, inst, lambda f=f, g=g: on_2_functorial(f, g))
    return rec


def verify_involution(corpus: "Corpus", seed: int = 0, cells: DualityInvolution | None = None,
                      n_pairs: int = 20, rec: Recorder | None = None) -> Recorder:
    cells = cells or DualityInvolution()
    rec = rec or Recorder()
    rng = random.Random(seed + 1)
    for A in corpus.algebras:
        if not corpus.semisimple(A):
            for check, anchor in (("zeta_compatibility", A_APPX), ("zeta", A_ZETA)):
                rec.skip(check, anchor, A.label, "NotSemisimple")
            continue
        rec.run("zeta_compatibility", A_APPX, A.label, lambda A=A: zeta_compatibility(cells, A))
        rec.run("zeta", A_ZETA, A.label, lambda A=A: zeta_ok(cells, A))
        rec.run("y_unital", A_YUNIT, A.label, lambda A=A: y_unital(cells, A))
        rec.run("y_adjoint_equivalence", A_YADJ, A.label, lambda A=A: y_adjoint_equivalence(A))
    for M, N in corpus.chains(2, n_pairs, rng, semisimple=True):
        rec.run("y_pseudonatural", A_YNAT, corpus.describe_chain((M, N)),
                lambda M=M, N=N: y_pseudonatural(cells, M, N))
    for M in corpus.one_cells():
        if not corpus.cell_semisimple(M):
            rec.skip("y_natural", A_Y2, corpus.describe(M), "NotSemisimple")
            continue
        f = corpus.random_map_from(M, rng)
        rec.run("y_natural", A_Y2, corpus.describe(M), lambda f=f: y_natural(cells, f))
    return rec
