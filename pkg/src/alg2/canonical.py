"""Checks of the canonical isomorphisms between tensor and hom constructions.

Each of braiding, currying, double dual and tensor-hom is tested for
invertibility, for being a bimodule map, and for naturality against random
intertwiners.  The double dual and tensor-hom maps need a semisimple base
algebra; other inputs produce SKIP records without attempting the map.
"""

from __future__ import annotations

import random
from typing import TYPE_CHECKING

from .bimodule import (
    Bimodule,
    Intertwiner,
    adjoint_iso,
    braid_iso,
    double_dual_iso,
    hcomp,
    hom_right,
    intertwiner_adjoint,
    postcompose_map,
    regular,
    swap,
    tensor_hom_iso,
    tensor_over,
)
from .exactla import Mat, is_invertible
from .records import Recorder

if TYPE_CHECKING:
    from .corpus import Corpus

__all__ = [
    "CanonicalIsos",
    "braid_ok",
    "adjoint_ok",
    "double_dual_ok",
    "tensor_hom_ok",
    "tensor_over_ok",
    "verify_canonical",
]

A_TENSOR = "tensor over an algebra: quotient and section"
A_BRAID = "braiding of tensor products: invertible and natural"
A_ADJ = "currying of hom and tensor: invertible and natural"
A_PSI = "double dual: invertible and natural"
A_TH = "tensor-hom map: invertible and natural"


class CanonicalIsos:
    """The isomorphisms under test; override a method to substitute a map."""

    def braid(self, M: Bimodule, N: Bimodule) -> Mat:
        return braid_iso(M, N)

    def adjoint(self, X: Bimodule, M: Bimodule, Y: Bimodule) -> Intertwiner:
        return adjoint_iso(X, M, Y)

    def double_dual(self, P: Bimodule) -> Intertwiner:
        return double_dual_iso(P)

    def tensor_hom(self, X: Bimodule, P: Bimodule) -> Intertwiner:
        return tensor_hom_iso(X, P)


def _swap2(f: Intertwiner) -> Intertwiner:
    return Intertwiner(swap(f.source), swap(f.target), f.mat)


def tensor_over_ok(M: Bimodule, N: Bimodule) -> tuple[bool, list[int]]:
    T = tensor_over(M, N)
    ok = (T.proj @ T.sect).is_identity() and not T.module.defects()
    return ok, [M.dim * N.dim, T.module.dim]


def braid_ok(isos: CanonicalIsos, f: Intertwiner, g: Intertwiner) -> tuple[bool, list[int]]:
    """``f: M -> M'`` and ``g: N -> N'`` with ``M, N`` composable."""
    M, N = f.source, g.source
    b = isos.braid(M, N)
    back = isos.braid(swap(N), swap(M))
    S = tensor_over(M, N).module
    T = tensor_over(swap(N), swap(M)).module
    ok = is_invertible(b) and (back @ b).is_identity()
    ok = ok and Intertwiner(S, swap(T), b).is_valid()
    b2 = isos.braid(f.target, g.target)
    lhs = b2 @ hcomp(f, g).mat
    rhs = hcomp(_swap2(g), _swap2(f)).mat @ b
    return ok and lhs == rhs, [S.dim]


def adjoint_ok(isos: CanonicalIsos, X: Bimodule, M: Bimodule, h: Intertwiner) -> tuple[bool, list[int]]:
    """Currying for ``(X, M, Y)`` and naturality along ``h: Y -> Y'``."""
    Y, Y2 = h.source, h.target
    a, a2 = isos.adjoint(X, M, Y), isos.adjoint(X, M, Y2)
    ok = a.is_valid() and a.is_invertible()
    T = tensor_over(X, M).module
    H1, H1b = hom_right(T, Y), hom_right(T, Y2)
    H2, H2b = hom_right(M, Y), hom_right(M, Y2)
    H3, H3b = hom_right(X, H2.module), hom_right(X, H2b.module)
    p1 = postcompose_map(h.mat, H1, H1b)
    p3 = postcompose_map(postcompose_map(h.mat, H2, H2b), H3, H3b)
    return ok and a2.mat @ p1 == p3 @ a.mat, [H1.module.dim]


def double_dual_ok(isos: CanonicalIsos, f: Intertwiner) -> tuple[bool, list[int]]:
    """``psi_{P'} f == f^oo psi_P`` for ``f: P -> P'``."""
    p, p2 = isos.double_dual(f.source), isos.double_dual(f.target)
    ok = p.is_valid() and p.is_invertible() and p.source.dim == p.target.dim
    ff = intertwiner_adjoint(intertwiner_adjoint(f))
    return ok and (p2 @ f).mat == (ff @ p).mat, [f.source.dim]


def tensor_hom_ok(isos: CanonicalIsos, h: Intertwiner, P: Bimodule) -> tuple[bool, list[int]]:
    """Tensor-hom map for ``(X, P)`` and naturality along ``h: X -> X'``."""
    X, X2 = h.source, h.target
    t, t2 = isos.tensor_hom(X, P), isos.tensor_hom(X2, P)
    ok = t.is_valid() and t.is_invertible()
    H = hom_right(P, regular(P.right_alg)).module
    lhs = t2.mat @ hcomp(h, H.identity()).mat
    rhs = postcompose_map(h.mat, hom_right(P, X), hom_right(P, X2)) @ t.mat
    return ok and lhs == rhs, [t.source.dim]


def _cycle(pool, n):
    for k in range(n):
        yield k, pool[k % len(pool)]


def verify_canonical(corpus: "Corpus", seed: int = 0, isos: CanonicalIsos | None = None,
                     n_instances: int = 100, rec: Recorder | None = None) -> Recorder:
    isos = isos or CanonicalIsos()
    rec = rec or Recorder()
    rng = random.Random(seed + 3)
    cells = corpus.one_cells()

    pairs = corpus.chains(2, n_instances, rng)
    for M, N in pairs:
        inst = corpus.describe_chain((M, N))
        rec.run("tensor_over", A_TENSOR, inst, lambda M=M, N=N: tensor_over_ok(M, N))
        f, g = corpus.random_map_from(M, rng), corpus.random_map_from(N, rng)
        rec.run("braid", A_BRAID, inst, lambda f=f, g=g: braid_ok(isos, f, g))

    for X, M in corpus.chains(2, n_instances, rng):
        ys = [Y for Y in cells if Y.right_alg == M.right_alg]
        Y = ys[rng.randrange(len(ys))]
        h = corpus.random_map_from(Y, rng)
        inst = f"{corpus.describe_chain((X, M))} into {corpus.describe_chain((Y,))}"
        rec.run("adjoint", A_ADJ, inst, lambda X=X, M=M, h=h: adjoint_ok(isos, X, M, h))

    skipped = set()
    eligible = []
    for P in cells:
        if corpus.semisimple(P.right_alg):
            eligible.append(P)
        elif P not in skipped:
            skipped.add(P)
            rec.skip("double_dual", A_PSI, corpus.describe(P), "NotSemisimple")
    for k, P in _cycle(eligible, n_instances):
        f = corpus.random_map_from(P, rng)
        rec.run("double_dual", A_PSI, f"{corpus.describe(P)} #{k}", lambda f=f: double_dual_ok(isos, f))

    th_pool = []
    for X in cells:
        for P in cells:
            if P.right_alg == X.right_alg:
                if corpus.semisimple(X.right_alg):
                    th_pool.append((X, P))
                elif (X, P) not in skipped:
                    skipped.add((X, P))
                    rec.skip("tensor_hom", A_TH, corpus.describe_chain((X, P)), "NotSemisimple")
    rng.shuffle(th_pool)
    for k, (X, P) in _cycle(th_pool, n_instances):
        h = corpus.random_map_from(X, rng)
        rec.run("tensor_hom", A_TH, f"{corpus.describe_chain((X, P))} #{k}",
                lambda h=h, P=P: tensor_hom_ok(isos, h, P))
    return rec
