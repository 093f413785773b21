"""Providers with one cell entry bumped by +1, for mutation tests."""

from __future__ import annotations

from alg2.bimodule import Intertwiner
from alg2.canonical import CanonicalIsos
from alg2.duality import DualityInvolution
from alg2.exactla import ONE, Mat
from alg2.kv import RepDuality
from alg2.morita import CoherenceCells
from alg2.report import Providers


def bump(m: Mat) -> Mat:
    if m.rows == 0 or m.cols == 0:
        return m
    return m.with_entry(0, 0, m[0, 0] + ONE)


def _corrupt(base: type, method: str) -> type:
    original = getattr(base, method)

    def patched(self, *args):
        out = original(self, *args)
        if isinstance(out, Intertwiner):
            return Intertwiner(out.source, out.target, bump(out.mat))
        return bump(out)

    return type(f"Mutant{base.__name__}_{method}", (base,), {method: patched})


# (provider slot, provider class, cell method, suite expected to fail)
MUTATIONS = [
    ("coherence", CoherenceCells, "associator", "bicategory"),
    ("coherence", CoherenceCells, "left_unitor", "bicategory"),
    ("coherence", CoherenceCells, "right_unitor", "bicategory"),
    ("canonical", CanonicalIsos, "braid", "canonical"),
    ("canonical", CanonicalIsos, "adjoint", "canonical"),
    ("canonical", CanonicalIsos, "double_dual", "canonical"),
    ("canonical", CanonicalIsos, "tensor_hom", "canonical"),
    ("duality", DualityInvolution, "comp_cell", "duality"),
    ("duality", DualityInvolution, "unit_cell", "duality"),
    ("duality", DualityInvolution, "y_cell", "duality"),
    ("duality", DualityInvolution, "zeta", "duality"),
    ("rep", RepDuality, "theta", "rep"),
    ("rep", RepDuality, "i_square", "rep"),
    ("rep", RepDuality, "epsilon", "rep"),
    ("rep", RepDuality, "zeta", "rep"),
]


def mutant_providers(slot: str, cls: type, method: str) -> Providers:
    return Providers(**{slot: _corrupt(cls, method)()})
