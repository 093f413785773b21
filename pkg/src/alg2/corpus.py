"""Test corpora: algebras, seeded random bimodules and the samplers the suites use.

Random bimodules are assembled from Wedderburn data, so the action axioms hold
by construction: the ``(A, B)``-bimodule ``S_i^* (x) T_j`` pairs the dual of a
simple right ``A``-module with a simple right ``B``-module, blocks are summed
with random multiplicities and the result is conjugated by a random
unitriangular change of basis.
"""

from __future__ import annotations

import copy
import hashlib
import json
import random
from functools import cached_property
from typing import Iterator, Sequence

from .algebra import (
    Algebra,
    AlgebraError,
    algebra_tensor,
    field,
    from_structure_constants,
    group_algebra_elementary_2,
    is_semisimple,
    matrix_algebra,
    opposite,
    product,
    strip_certificate,
    truncated_polynomial,
    wedderburn,
    with_certificate,
)
from .bimodule import Bimodule, Intertwiner, K, bimodule_hom, change_basis, direct_sum, regular
from .exactla import Mat, kron
from .serialize import algebra_from_json, algebra_to_json, bimodule_from_json, bimodule_to_json

__all__ = [
    "CorpusError",
    "Corpus",
    "default_spec",
    "build_algebra",
    "generate_corpus",
    "random_bimodule",
    "CORPUS_FORMAT",
]

CORPUS_FORMAT = "alg2-corpus/1"


class CorpusError(ValueError):
    """Malformed corpus spec or corpus file."""


def default_spec() -> dict:
    return {
        "algebras": [
            {"kind": "field"},
            {"kind": "product", "factors": [{"kind": "field"}, {"kind": "field"}], "label": "Q2"},
            {"kind": "matrix", "d": 2},
            {"kind": "product", "factors": [{"kind": "matrix", "d": 2}, {"kind": "field"}]},
            {"kind": "group_z2", "k": 1},
            {"kind": "truncated_polynomial", "n": 2},
        ],
        "bimodules": {"count": 30, "max_dim": 4, "max_mult": 2, "seed": 7},
    }


def build_algebra(desc: dict) -> Algebra:
    kind = desc.get("kind")
    label = desc.get("label")
    try:
        if kind == "field":
            A = field(label or "Q")
        elif kind == "matrix":
            A = matrix_algebra(int(desc["d"]), label)
        elif kind == "product":
            fs = [build_algebra(f) for f in desc["factors"]]
            if not fs:
                raise CorpusError("product needs at least one factor")
            A = fs[0]
            for F in fs[1:]:
                A = product(A, F)
            if label:
                A = with_certificate(A, A.certificate, label)
        elif kind == "group_z2":
            A = group_algebra_elementary_2(int(desc["k"]), label)
        elif kind == "truncated_polynomial":
            A = truncated_polynomial(int(desc["n"]), label)
        elif kind == "tensor":
            A = algebra_tensor(build_algebra(desc["left"]), build_algebra(desc["right"]), label)
        elif kind == "opposite":
            A = opposite(build_algebra(desc["of"]))
        elif kind == "raw":
            A = from_structure_constants(desc["mult"], desc["unit"], label or "raw")
            if desc.get("certify"):
                A = with_certificate(A, wedderburn(A, seed=int(desc.get("seed", 0))))
        elif kind == "stripped":
            A = strip_certificate(build_algebra(desc["of"]), label)
        else:
            raise CorpusError(f"unknown algebra kind {kind!r}")
    except (KeyError, TypeError, ValueError, AlgebraError) as exc:
        if isinstance(exc, CorpusError):
            raise
        raise CorpusError(f"bad algebra descriptor {desc!r}: {exc}") from exc
    return A


def _left_simple(A: Algebra, i: int) -> tuple[Mat, ...]:
    """Left action on the dual of the ``i``-th simple right module (transposes)."""
    return tuple(x.T for x in A.certificate.blocks[i].action)


def _block(A: Algebra, i: int, B: Algebra, j: int) -> Bimodule:
    L = _left_simple(A, i)
    R = B.certificate.blocks[j].action
    d, e = A.certificate.blocks[i].dim, B.certificate.blocks[j].dim
    Id, Ie = Mat.identity(d), Mat.identity(e)
    return Bimodule(A, B, d * e, [kron(x, Ie) for x in L], [kron(Id, y) for y in R])


def _unitriangular(n: int, rng: random.Random) -> Mat:
    lower = Mat.from_rows([[1 if i == j else (rng.randint(-1, 1) if j < i else 0) for j in range(n)]
                           for i in range(n)], n)
    upper = Mat.from_rows([[1 if i == j else (rng.randint(-1, 1) if j > i else 0) for j in range(n)]
                           for i in range(n)], n)
    return lower @ upper


def random_bimodule(A: Algebra, B: Algebra, rng: random.Random, max_dim: int, max_mult: int,
                    label: str = "") -> Bimodule | None:
    """A random nonzero ``(A, B)``-bimodule of dimension at most ``max_dim``, or ``None``."""
    ca, cb = A.certificate, B.certificate
    pairs = [(i, j) for i in range(len(ca.blocks)) for j in range(len(cb.blocks))
             if ca.blocks[i].dim * cb.blocks[j].dim <= max_dim]
    if not pairs:
        return None
    for _ in range(16):
        mult = {p: rng.randint(0, max_mult) for p in pairs}
        total = sum(m * ca.blocks[i].dim * cb.blocks[j].dim for (i, j), m in mult.items())
        if 0 < total <= max_dim:
            break
    else:
        mult = {p: 0 for p in pairs}
        mult[pairs[rng.randrange(len(pairs))]] = 1
    parts = [_block(A, i, B, j) for (i, j) in pairs for _ in range(mult[(i, j)])]
    M = direct_sum(*parts)
    N, _ = change_basis(M, _unitriangular(M.dim, rng), label)
    return N


def _residue(A: Algebra) -> Bimodule:
    """``Q`` as a ``(Q, A)``-bimodule through the augmentation killing the radical."""
    # works when the unit is a basis vector and the other basis vectors span an ideal
    act = [Mat.from_rows([[1 if A.basis_vector(k) == A.unit else 0]]) for k in range(A.dim)]
    M = Bimodule(K, A, 1, [Mat.identity(1)], act, label=f"res({A.label})")
    if M.defects():
        raise AlgebraError(f"no residue module found for {A.label}")
    return M


class Corpus:
    """Algebras plus random bimodules, with deterministic samplers.

    ``max_dim`` caps the dimension of sampled corpus bimodules; regular
    bimodules are always available.
    """

    def __init__(self, algebras: Sequence[Algebra], bimodules: Sequence[Bimodule], seed: int,
                 max_dim: int, spec: dict | None = None):
        self.algebras = tuple(algebras)
        self.bimodules = tuple(bimodules)
        self.seed = seed
        self.max_dim = max_dim
        self.spec = spec or {}
        self._ss: dict[Algebra, bool] = {}

    # -- predicates -------------------------------------------------------
    def semisimple(self, A: Algebra) -> bool:
        if A not in self._ss:
            self._ss[A] = is_semisimple(A)[0]
        return self._ss[A]

    def cell_semisimple(self, M: Bimodule) -> bool:
        return self.semisimple(M.left_alg) and self.semisimple(M.right_alg)

    def cell_certified(self, M: Bimodule) -> bool:
        return (self.cell_semisimple(M) and M.left_alg.certificate is not None
                and M.right_alg.certificate is not None)

    # -- cells ------------------------------------------------------------
    @cached_property
    def _names(self) -> dict[Bimodule, str]:
        names = {}
        for M in self.one_cells():
            names.setdefault(M, M.label)
        return names

    def one_cells(self) -> tuple[Bimodule, ...]:
        return self._cells

    @cached_property
    def _cells(self) -> tuple[Bimodule, ...]:
        cells = [M for M in self.bimodules if M.dim <= self.max_dim]
        seen = set(cells)
        for A in self.algebras:
            R = regular(A)
            if R not in seen:
                cells.append(Bimodule(A, A, R.dim, R.left_act, R.right_act, label=f"reg({A.label})"))
            if not self.semisimple(A):
                try:
                    cells.append(_residue(A))
                except AlgebraError:
                    pass
        return tuple(cells)

    def describe(self, M: Bimodule) -> str:
        name = self._names.get(M, M.label or "?")
        return f"{name}: {M.left_alg.label}->{M.right_alg.label} (dim {M.dim})"

    def describe_chain(self, chain: Sequence[Bimodule]) -> str:
        return " ; ".join(self._names.get(M, M.label or "?") for M in chain)

    # -- samplers ---------------------------------------------------------
    def chains(self, length: int, count: int, rng: random.Random, semisimple: bool = False,
               certified: bool = False, budget: int = 64) -> list[tuple[Bimodule, ...]]:
        """``count`` random composable chains whose dimension product stays within ``budget``."""
        pool = [M for M in self.one_cells()
                if (not semisimple or self.cell_semisimple(M)) and (not certified or self.cell_certified(M))]
        by_left: dict[Algebra, list[Bimodule]] = {}
        for M in pool:
            by_left.setdefault(M.left_alg, []).append(M)
        out: list[tuple[Bimodule, ...]] = []
        attempts = 0
        while len(out) < count and attempts < 200 * max(count, 1):
            attempts += 1
            chain = [pool[rng.randrange(len(pool))]]
            size = chain[0].dim
            while len(chain) < length:
                nxt = [N for N in by_left.get(chain[-1].right_alg, ()) if size * max(N.dim, 1) <= budget]
                if not nxt:
                    break
                N = nxt[rng.randrange(len(nxt))]
                chain.append(N)
                size *= max(N.dim, 1)
            if len(chain) == length:
                out.append(tuple(chain))
        return out

    def random_map_from(self, M: Bimodule, rng: random.Random) -> Intertwiner:
        """A random intertwiner from ``M`` to ``M`` or to a parallel corpus cell."""
        from .duality import random_hom

        targets = [N for N in self.one_cells() if N.left_alg == M.left_alg and N.right_alg == M.right_alg]
        N = targets[rng.randrange(len(targets))] if targets else M
        if N is not M and not bimodule_hom(M, N):
            N = M
        return random_hom(M, N, rng)

    # -- persistence --------------------------------------------------------
    def to_json(self) -> dict:
        index = {A: k for k, A in enumerate(self.algebras)}
        return {
            "format": CORPUS_FORMAT,
            "seed": self.seed,
            "max_dim": self.max_dim,
            "spec": self.spec,
            "algebras": [algebra_to_json(A) for A in self.algebras],
            "bimodules": [bimodule_to_json(M, index) for M in self.bimodules],
        }

    @classmethod
    def from_json(cls, d: dict) -> "Corpus":
        if d.get("format") != CORPUS_FORMAT:
            raise CorpusError(f"unsupported corpus format {d.get('format')!r}")
        try:
            algebras = [algebra_from_json(a) for a in d["algebras"]]
            bimodules = [bimodule_from_json(m, algebras) for m in d["bimodules"]]
        except (KeyError, IndexError, TypeError, ValueError, AlgebraError) as exc:
            raise CorpusError(f"bad corpus: {exc}") from exc
        return cls(algebras, bimodules, int(d["seed"]), int(d["max_dim"]), d.get("spec"))

    @property
    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def with_max_dim(self, max_dim: int) -> "Corpus":
        return Corpus(self.algebras, self.bimodules, self.seed, max_dim, self.spec)


def generate_corpus(spec: dict | None = None) -> Corpus:
    spec = copy.deepcopy(spec if spec is not None else default_spec())
    try:
        algebras = [build_algebra(a) for a in spec["algebras"]]
        policy = spec.get("bimodules", {})
        count = int(policy.get("count", 0))
        max_dim = int(policy.get("max_dim", 4))
        max_mult = int(policy.get("max_mult", 2))
        seed = int(policy.get("seed", 0))
    except (KeyError, TypeError, ValueError) as exc:
        raise CorpusError(f"bad corpus spec: {exc}") from exc
    if count < 0 or max_dim < 1 or max_mult < 1:
        raise CorpusError("count must be >= 0, max_dim and max_mult >= 1")
    rng = random.Random(seed)
    usable = [A for A in algebras if A.certificate is not None and is_semisimple(A)[0]]
    bimodules: list[Bimodule] = []
    if count and not usable:
        raise CorpusError("random bimodules need at least one certified semisimple algebra")
    attempts = 0
    while len(bimodules) < count:
        attempts += 1
        if attempts > 100 * count:
            raise CorpusError(f"cannot fit {count} bimodules within max_dim {max_dim}")
        A, B = usable[rng.randrange(len(usable))], usable[rng.randrange(len(usable))]
        M = random_bimodule(A, B, rng, max_dim, max_mult, label=f"B{len(bimodules):02d}")
        if M is not None and M not in bimodules:
            bimodules.append(M)
    return Corpus(algebras, bimodules, seed, max_dim, spec)


def iter_parallel(corpus: Corpus) -> Iterator[tuple[Bimodule, Bimodule]]:
    """All ordered pairs of parallel cells (same source and target)."""
    cells = corpus.one_cells()
    for M in cells:
        for N in cells:
            if M.left_alg == N.left_alg and M.right_alg == N.right_alg:
                yield M, N
