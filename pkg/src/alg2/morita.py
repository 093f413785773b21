"""The Morita bicategory: algebras, bimodules and intertwiners.

A 1-cell ``A -> B`` is an ``(A, B)``-bimodule and the composite of
``M: A -> B`` followed by ``N: B -> C`` is ``M (x)_B N``.  Coherence cells are
computed from the chosen quotient bases, so pentagon and triangle laws are
checked as exact matrix identities.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import TYPE_CHECKING, Union

from .algebra import Algebra, NotSemisimple, algebra_tensor, field, is_semisimple, matrix_algebra, opposite, product
from .bimodule import (
    Bimodule,
    CompositionMismatch,
    Intertwiner,
    K,
    external_tensor,
    find_isomorphism,
    hcomp,
    hom_right,
    regular,
    simple_module,
    tensor_hom_iso,
    tensor_over,
)
from .exactla import ZERO, Mat, NoSolution, Scalar, kron_apply, solve
from .records import Recorder

if TYPE_CHECKING:
    from .corpus import Corpus

__all__ = [
    "OneCell",
    "compose1",
    "hcomp2",
    "vcomp2",
    "associator",
    "left_unitor",
    "right_unitor",
    "CoherenceCells",
    "Leaf",
    "Unit",
    "Comp",
    "evaluate",
    "normalize",
    "canonical_map",
    "AdjunctionData",
    "DualBasisNotFound",
    "right_adjoint",
    "is_equivalence",
    "DualObjectData",
    "dual_object_data",
    "pentagon_holds",
    "triangle_holds",
    "interchange_holds",
    "verify_bicategory",
    "verify_morita",
    "morita_examples",
    "verify_dual_objects",
]

OneCell = Bimodule


class DualBasisNotFound(NoSolution):
    """The identity of ``M`` is not in the image of the tensor-hom map."""


def compose1(M: Bimodule, N: Bimodule) -> Bimodule:
    """``M`` followed by ``N``, i.e. ``M (x)_B N``."""
    return tensor_over(M, N).module


def hcomp2(f: Intertwiner, g: Intertwiner) -> Intertwiner:
    return hcomp(f, g)


def vcomp2(f: Intertwiner, g: Intertwiner) -> Intertwiner:
    """``g`` after ``f``."""
    return g @ f


def _triple_map(op, src, tgt_proj: Mat) -> Mat:
    cols = [tgt_proj.apply(op(dict(c))) for c in src]
    return Mat.from_columns(tgt_proj.rows, cols)


def associator(M: Bimodule, N: Bimodule, P: Bimodule) -> Intertwiner:
    """``(M (x) N) (x) P -> M (x) (N (x) P)``."""
    MN = tensor_over(M, N)
    L = tensor_over(MN.module, P)
    NP = tensor_over(N, P)
    R = tensor_over(M, NP.module)
    Ip = Mat.identity(P.dim)
    Im = Mat.identity(M.dim)
    cols = []
    for c in L.sect.nz_cols():
        v = kron_apply(MN.sect, Ip, dict(c))
        v = kron_apply(Im, NP.proj, v)
        cols.append(R.proj.apply(v))
    return Intertwiner(L.module, R.module, Mat.from_columns(R.module.dim, cols))


def left_unitor(M: Bimodule) -> Intertwiner:
    """``A (x)_A M -> M``, ``a (x) m -> a m``."""
    T = tensor_over(regular(M.left_alg), M)
    m = M.dim
    lcols = [a.nz_cols() for a in M.left_act]
    cols = []
    for c in T.sect.nz_cols():
        out: dict[int, Scalar] = {}
        for idx, v in c:
            a, x = divmod(idx, m)
            for r, y in lcols[a][x]:
                out[r] = out.get(r, ZERO) + v * y
        cols.append(out)
    return Intertwiner(T.module, M, Mat.from_columns(m, cols))


def right_unitor(M: Bimodule) -> Intertwiner:
    """``M (x)_B B -> M``, ``m (x) b -> m b``."""
    B = M.right_alg
    T = tensor_over(M, regular(B))
    rcols = [b.nz_cols() for b in M.right_act]
    cols = []
    for c in T.sect.nz_cols():
        out: dict[int, Scalar] = {}
        for idx, v in c:
            x, b = divmod(idx, B.dim)
            for r, y in rcols[b][x]:
                out[r] = out.get(r, ZERO) + v * y
        cols.append(out)
    return Intertwiner(T.module, M, Mat.from_columns(M.dim, cols))


class CoherenceCells:
    """Supplies associators and unitors to the bicategory checks.

    Subclass and override to test alternative (or deliberately broken) cells.
    """

    def associator(self, M: Bimodule, N: Bimodule, P: Bimodule) -> Intertwiner:
        return associator(M, N, P)

    def left_unitor(self, M: Bimodule) -> Intertwiner:
        return left_unitor(M)

    def right_unitor(self, M: Bimodule) -> Intertwiner:
        return right_unitor(M)


# ---------------------------------------------------------------------------
# normal forms of composite 1-cells


@dataclass(frozen=True)
class Leaf:
    cell: Bimodule


@dataclass(frozen=True)
class Unit:
    alg: Algebra


@dataclass(frozen=True)
class Comp:
    first: "Expr"
    second: "Expr"


Expr = Union[Leaf, Unit, Comp]


def evaluate(e: Expr) -> Bimodule:
    if isinstance(e, Leaf):
        return e.cell
    if isinstance(e, Unit):
        return regular(e.alg)
    return compose1(evaluate(e.first), evaluate(e.second))


def _merge(l: Expr, r: Expr) -> tuple[Expr, Intertwiner]:
    """Normalize ``l (x) r`` with ``l`` and ``r`` already normal."""
    if isinstance(l, Unit):
        return r, left_unitor(evaluate(r))
    if isinstance(r, Unit):
        return l, right_unitor(evaluate(l))
    if isinstance(l, Leaf):
        e = Comp(l, r)
        return e, evaluate(e).identity()
    x, rest = l.first, l.second
    a = associator(evaluate(x), evaluate(rest), evaluate(r))
    tail, f = _merge(rest, r)
    g = hcomp(evaluate(x).identity(), f)
    return Comp(x, tail), g @ a


def normalize(e: Expr) -> tuple[Expr, Intertwiner]:
    """Right-associated, unit-free form of ``e`` and the canonical cell into it.

    Rewriting is deterministic: subterms first, then left-to-right
    reassociation and unitor removal.
    """
    if isinstance(e, (Leaf, Unit)):
        return e, evaluate(e).identity()
    l, fl = normalize(e.first)
    r, fr = normalize(e.second)
    h = hcomp(fl, fr)
    n, g = _merge(l, r)
    return n, g @ h


def canonical_map(src: Expr, tgt: Expr) -> Intertwiner:
    """The structural isomorphism between two bracketings of the same word."""
    ns, fs = normalize(src)
    nt, ft = normalize(tgt)
    if ns != nt:
        raise CompositionMismatch("expressions do not share a normal form")
    return ft.inverse() @ fs


# ---------------------------------------------------------------------------
# coherence laws


def pentagon_holds(M, N, P, Q, cells: CoherenceCells | None = None) -> tuple[bool, list[int]]:
    c = cells or CoherenceCells()
    MN, PQ = compose1(M, N), compose1(P, Q)
    NP = compose1(N, P)
    path1 = c.associator(M, N, PQ) @ c.associator(MN, P, Q)
    path2 = (hcomp(M.identity(), c.associator(N, P, Q)) @ c.associator(M, NP, Q)
             @ hcomp(c.associator(M, N, P), Q.identity()))
    ref = canonical_map(Comp(Comp(Comp(Leaf(M), Leaf(N)), Leaf(P)), Leaf(Q)),
                        Comp(Leaf(M), Comp(Leaf(N), Comp(Leaf(P), Leaf(Q)))))
    ok = path1.mat == path2.mat == ref.mat and path1.is_valid()
    return ok, [path1.source.dim, path1.target.dim]


def triangle_holds(M, N, cells: CoherenceCells | None = None) -> tuple[bool, list[int]]:
    c = cells or CoherenceCells()
    B = regular(M.right_alg)
    lhs = hcomp(M.identity(), c.left_unitor(N)) @ c.associator(M, B, N)
    rhs = hcomp(c.right_unitor(M), N.identity())
    ok = lhs.mat == rhs.mat and rhs.is_valid()
    return ok, [lhs.source.dim, lhs.target.dim]


def unitors_valid(M, cells: CoherenceCells | None = None) -> tuple[bool, list[int]]:
    c = cells or CoherenceCells()
    lu, ru = c.left_unitor(M), c.right_unitor(M)
    ok = lu.is_valid() and ru.is_valid() and lu.is_invertible() and ru.is_invertible()
    return ok, [lu.source.dim, ru.source.dim, M.dim]


def interchange_holds(f, f2, g, g2) -> tuple[bool, list[int]]:
    """``(f2 f) (x) (g2 g) == (f2 (x) g2)(f (x) g)``."""
    lhs = hcomp(f2 @ f, g2 @ g)
    rhs = hcomp(f2, g2) @ hcomp(f, g)
    return lhs.mat == rhs.mat, [lhs.source.dim, lhs.target.dim]


# ---------------------------------------------------------------------------
# adjunctions


@dataclass(frozen=True)
class AdjunctionData:
    """``f -| g`` with unit ``A -> f (x) g`` and counit ``g (x) f -> B``."""

    f: Bimodule
    g: Bimodule
    unit: Intertwiner
    counit: Intertwiner
    triangles_ok: bool


def _evaluation(M: Bimodule) -> Intertwiner:
    B = M.right_alg
    H = hom_right(M, regular(B))
    T = tensor_over(H.module, M)
    m = M.dim
    Gs = H.basis_mats
    cols = []
    for c in T.sect.nz_cols():
        out: dict[int, Scalar] = {}
        for idx, v in c:
            t, x = divmod(idx, m)
            for k, y in Gs[t].nz_cols()[x]:
                out[k] = out.get(k, ZERO) + v * y
        cols.append({k: y for k, y in out.items() if y})
    return Intertwiner(T.module, regular(B), Mat.from_columns(B.dim, cols))


def _coevaluation(M: Bimodule) -> Intertwiner:
    A = M.left_alg
    th = tensor_hom_iso(M, M)
    target = hom_right(M, M)
    idcoords = target.coords_of(Mat.identity(M.dim))
    try:
        t = solve(th.mat, Mat.column(idcoords))
    except NoSolution:
        raise DualBasisNotFound(f"no dual basis for {M!r}") from None
    T = th.source
    tv = {i: t[i, 0] for i in range(t.rows) if t[i, 0]}
    cols = [a.apply(tv) for a in T.left_act]
    return Intertwiner(regular(A), T, Mat.from_columns(T.dim, cols))


def right_adjoint(M: Bimodule) -> AdjunctionData:
    """The adjunction ``M -| hom_B(M, B)`` with evaluation counit and dual-basis unit."""
    ok, _ = is_semisimple(M.right_alg)
    if not ok:
        raise NotSemisimple(f"{M.right_alg.label or 'algebra'} is not semisimple")
    g = hom_right(M, regular(M.right_alg)).module
    eps = _evaluation(M)
    eta = _coevaluation(M)
    # M -> A M -> (M g) M -> M (g M) -> M B -> M
    t1 = (right_unitor(M) @ hcomp(M.identity(), eps) @ associator(M, g, M)
          @ hcomp(eta, M.identity()) @ left_unitor(M).inverse())
    # g -> g A -> g (M g) -> (g M) g -> B g -> g
    t2 = (left_unitor(g) @ hcomp(eps, g.identity()) @ associator(g, M, g).inverse()
          @ hcomp(g.identity(), eta) @ right_unitor(g).inverse())
    tri = t1.mat.is_identity() and t2.mat.is_identity()
    return AdjunctionData(M, g, eta, eps, tri)


def is_equivalence(M: Bimodule) -> tuple[bool, AdjunctionData | None]:
    """Whether ``M`` is invertible; the witness is the adjunction when it is."""
    for A in (M.left_alg, M.right_alg):
        if not is_semisimple(A)[0]:
            raise NotSemisimple(f"{A.label or 'algebra'} is not semisimple")
    adj = right_adjoint(M)
    ok = adj.triangles_ok and adj.unit.is_invertible() and adj.counit.is_invertible()
    return ok, (adj if ok else None)


# ---------------------------------------------------------------------------
# dual objects


@dataclass(frozen=True)
class DualObjectData:
    alg: Algebra
    dual: Algebra
    ev: Bimodule
    coev: Bimodule
    zigzag_left: Intertwiner | None
    zigzag_right: Intertwiner | None

    @property
    def zigzag_ok(self) -> bool:
        return self.zigzag_left is not None and self.zigzag_right is not None


def _ev(A: Algebra) -> Bimodule:
    Aop = opposite(A)
    AA = algebra_tensor(A, Aop)
    L, R = A.left_mats(), A.right_mats()
    left = [L[i] @ R[j] for i in range(A.dim) for j in range(A.dim)]
    return Bimodule(AA, K, A.dim, left, [Mat.identity(A.dim)], label=f"ev({A.label})")


def _coev(A: Algebra) -> Bimodule:
    Aop = opposite(A)
    AA = algebra_tensor(Aop, A)
    L, R = A.left_mats(), A.right_mats()
    right = [L[i] @ R[j] for i in range(A.dim) for j in range(A.dim)]
    return Bimodule(K, AA, A.dim, [Mat.identity(A.dim)], right, label=f"coev({A.label})")


def _as_over(M: Bimodule, left: Algebra, right: Algebra) -> Bimodule:
    if M.left_alg != left or M.right_alg != right:
        raise CompositionMismatch("algebras are not identified on the nose")
    return Bimodule(left, right, M.dim, M.left_act, M.right_act, M.label)


def dual_object_data(A: Algebra, seed: int = 0) -> DualObjectData:
    """Evaluation and coevaluation exhibiting ``A^op`` as dual to ``A``.

    Each zig-zag composite is compared with the identity 1-cell by searching
    for an invertible intertwiner; ``None`` marks a failed search.
    """
    Aop = opposite(A)
    ev, coev = _ev(A), _coev(A)
    # A = A (x) k -> A (x) A^op (x) A -> k (x) A = A
    z1 = compose1(external_tensor(regular(A), coev), external_tensor(ev, regular(A)))
    z1 = _as_over(z1, A, A)
    # A^op = k (x) A^op -> A^op (x) A (x) A^op -> A^op (x) k = A^op
    z2 = compose1(external_tensor(coev, regular(Aop)), external_tensor(regular(Aop), ev))
    z2 = _as_over(z2, Aop, Aop)
    i1 = find_isomorphism(z1, regular(A), seed=seed)
    i2 = find_isomorphism(z2, regular(Aop), seed=seed)
    return DualObjectData(A, Aop, ev, coev, i1, i2)


# ---------------------------------------------------------------------------
# suites

ANCHOR_PENTAGON = "bicategory coherence: pentagon"
ANCHOR_TRIANGLE = "bicategory coherence: triangle"
ANCHOR_INTERCHANGE = "bicategory: interchange law"
ANCHOR_UNITORS = "bicategory: unitors are invertible intertwiners"
ANCHOR_ADJOINT = "adjoint 1-morphism: triangle identities"
ANCHOR_EQUIV = "Morita equivalence detection"
ANCHOR_ZIGZAG = "dual objects: zig-zag identities"


def _random_endo(M: Bimodule, rng: random.Random) -> Intertwiner:
    from .bimodule import bimodule_hom

    basis = bimodule_hom(M, M)
    mat = Mat.zeros(M.dim, M.dim)
    for b in basis:
        c = rng.randint(-2, 2)
        if c:
            mat = mat + b.scale(c)
    return Intertwiner(M, M, mat)


def verify_bicategory(corpus: "Corpus", seed: int = 0, cells: CoherenceCells | None = None,
                      n_chains: int = 50) -> Recorder:
    cells = cells or CoherenceCells()
    rec = Recorder()
    rng = random.Random(seed)
    for i, chain in enumerate(corpus.chains(4, n_chains, rng)):
        rec.run("pentagon", ANCHOR_PENTAGON, corpus.describe_chain(chain),
                lambda c=chain: pentagon_holds(*c, cells=cells))
    for i, chain in enumerate(corpus.chains(2, n_chains, rng)):
        rec.run("triangle", ANCHOR_TRIANGLE, corpus.describe_chain(chain),
                lambda c=chain: triangle_holds(*c, cells=cells))
    for M in corpus.one_cells():
        rec.run("unitors", ANCHOR_UNITORS, corpus.describe(M), lambda M=M: unitors_valid(M, cells))
    for chain in corpus.chains(2, max(10, n_chains // 5), rng):
        M, N = chain
        rec.run("interchange", ANCHOR_INTERCHANGE, corpus.describe_chain(chain),
                lambda M=M, N=N: interchange_holds(_random_endo(M, rng), _random_endo(M, rng),
                                                   _random_endo(N, rng), _random_endo(N, rng)))
    return rec


def morita_examples() -> list[tuple[str, Bimodule, bool]]:
    """Fixed detection cases: ``(name, M, expected is_equivalence)``."""
    out = []
    for n in (2, 3):
        out.append((f"rows Q^{n}: Q->M{n}", simple_module(matrix_algebra(n), 0), True))
    out.append(("first projection: Q->QxQ", simple_module(product(field(), field()), 0), False))
    return out


def _detection(M: Bimodule, expected: bool) -> tuple[bool, list[int]]:
    from .kv import rep_1

    eq, _ = is_equivalence(M)
    ok = eq == expected
    if eq:
        ok = ok and rep_1(M).functor.is_permutation()
    return ok, [M.dim, int(eq)]


def verify_morita(corpus: "Corpus", seed: int = 0) -> Recorder:
    rec = Recorder()
    for name, M, expected in morita_examples():
        rec.run("equivalence_detection", ANCHOR_EQUIV, name, lambda M=M, e=expected: _detection(M, e))
    for M in corpus.one_cells():
        inst = corpus.describe(M)
        if not (corpus.semisimple(M.left_alg) and corpus.semisimple(M.right_alg)):
            rec.skip("adjoint_triangles", ANCHOR_ADJOINT, inst, "NotSemisimple")
            continue

        def adj(M=M):
            a = right_adjoint(M)
            return a.triangles_ok and a.unit.is_valid() and a.counit.is_valid(), [M.dim, a.g.dim]

        rec.run("adjoint_triangles", ANCHOR_ADJOINT, inst, adj)

        def equiv(M=M):
            ok, w = is_equivalence(M)
            if not ok:
                return True, [M.dim]
            # an equivalence has an equivalence as its adjoint
            ok2, _ = is_equivalence(w.g)
            if corpus.cell_certified(M):
                # a detected equivalence permutes the simples
                ok2 = ok2 and _detection(M, True)[0]
            return ok2, [M.dim, w.g.dim]

        rec.run("equivalence_symmetric", ANCHOR_EQUIV, inst, equiv)
    return rec


def verify_dual_objects(corpus: "Corpus", seed: int = 0) -> Recorder:
    rec = Recorder()
    for A in corpus.algebras:
        def check(A=A):
            d = dual_object_data(A, seed=seed)
            return d.zigzag_ok, [A.dim, d.ev.dim, d.coev.dim]

        label = A.label if corpus.semisimple(A) else f"{A.label} (exploratory, not semisimple)"
        rec.run("zigzag", ANCHOR_ZIGZAG, label, check)
    return rec
