"""Finite-dimensional unital associative algebras given by structure constants.

Basis products are stored sparsely: ``table[i][j]`` lists the nonzero
``(k, c_ijk)`` with ``e_i e_j = sum_k c_ijk e_k``.  Equality and hashing are
structural (structure constants and unit); labels, generators and Wedderburn
certificates are metadata.

Certificates are normally propagated by the constructors.  :func:`wedderburn`
recomputes one from scratch for rationally split semisimple algebras.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Sequence

from .exactla import (
    ONE,
    ZERO,
    Echelon,
    Mat,
    NoSolution,
    Scalar,
    Subspace,
    kernel_of_rows,
    q,
    solve,
)

__all__ = [
    "Algebra",
    "WedderburnBlock",
    "WedderburnCertificate",
    "AlgebraError",
    "InvalidAlgebra",
    "NotSemisimple",
    "NotSplit",
    "NoCertificate",
    "validate",
    "from_structure_constants",
    "field",
    "matrix_algebra",
    "product",
    "group_algebra_elementary_2",
    "truncated_polynomial",
    "opposite",
    "algebra_tensor",
    "is_semisimple",
    "center",
    "wedderburn",
    "strip_certificate",
]

Vec = tuple[Scalar, ...]


class AlgebraError(Exception):
    pass


class InvalidAlgebra(AlgebraError):
    pass


class NotSemisimple(AlgebraError):
    pass


class NotSplit(AlgebraError):
    pass


class NoCertificate(AlgebraError):
    pass


@dataclass(frozen=True)
class WedderburnBlock:
    """One simple summand: its central idempotent and a simple right module.

    ``action[k]`` is the ``dim x dim`` matrix of ``s -> s * e_k`` on the
    simple module.
    """

    idempotent: Vec
    dim: int
    action: tuple[Mat, ...]


@dataclass(frozen=True)
class WedderburnCertificate:
    blocks: tuple[WedderburnBlock, ...]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(b.dim for b in self.blocks)


_PENDING = object()


class Algebra:
    __slots__ = ("dim", "table", "unit", "label", "_certificate", "_cert_thunk",
                 "_generators", "_op", "_hash", "_left", "_right")

    def __init__(self, dim: int, table, unit: Sequence, certificate=None, label: str = "",
                 generators: Sequence[Sequence] | None = None):
        self.dim = dim
        self.table: tuple[tuple[tuple[tuple[int, Scalar], ...], ...], ...] = table
        self.unit: Vec = tuple(q(x) for x in unit)
        self.label = label
        self._certificate = certificate
        self._cert_thunk = None
        self._generators = None if generators is None else tuple(tuple(q(x) for x in g) for g in generators)
        self._op = None
        self._hash = None
        self._left = None
        self._right = None

    # -- metadata -------------------------------------------------------
    @property
    def certificate(self) -> WedderburnCertificate | None:
        if self._certificate is _PENDING:
            self._certificate = self._cert_thunk()
            self._cert_thunk = None
        return self._certificate

    @property
    def generators(self) -> tuple[Vec, ...]:
        """Elements generating the algebra (together with the unit)."""
        if self._generators is None:
            self._generators = tuple(self.basis_vector(i) for i in range(self.dim))
        return self._generators

    def __eq__(self, other) -> bool:
        if not isinstance(other, Algebra):
            return NotImplemented
        return self is other or (self.dim == other.dim and self.unit == other.unit and self.table == other.table)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dim, self.unit, self.table))
        return self._hash

    def __repr__(self) -> str:
        return f"Algebra({self.label or '?'}, dim={self.dim})"

    # -- arithmetic -----------------------------------------------------
    def basis_vector(self, i: int) -> Vec:
        return tuple(ONE if k == i else ZERO for k in range(self.dim))

    def mul(self, x: Sequence, y: Sequence) -> Vec:
        out = [ZERO] * self.dim
        ynz = [(j, b) for j, b in enumerate(y) if b]
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.table[i]
            for j, b in ynz:
                ab = a * b
                for k, c in row[j]:
                    out[k] += ab * c
        return tuple(out)

    def coefficient(self, i: int, j: int, k: int) -> Scalar:
        for kk, c in self.table[i][j]:
            if kk == k:
                return c
        return ZERO

    def mult_dense(self) -> list[list[list[Scalar]]]:
        n = self.dim
        out = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                for k, c in self.table[i][j]:
                    out[i][j][k] = c
        return out

    def left_mats(self) -> tuple[Mat, ...]:
        """``L_i``: matrix of ``x -> e_i x``."""
        if self._left is None:
            n = self.dim
            self._left = tuple(
                Mat.from_sparse(n, n, {(k, j): c for j in range(n) for k, c in self.table[i][j]})
                for i in range(n))
        return self._left

    def right_mats(self) -> tuple[Mat, ...]:
        """``R_j``: matrix of ``x -> x e_j``."""
        if self._right is None:
            n = self.dim
            self._right = tuple(
                Mat.from_sparse(n, n, {(k, i): c for i in range(n) for k, c in self.table[i][j]})
                for j in range(n))
        return self._right

    def left_mult(self, x: Sequence) -> Mat:
        n = self.dim
        ent: dict[tuple[int, int], Scalar] = {}
        for i, a in enumerate(x):
            if a:
                for j in range(n):
                    for k, c in self.table[i][j]:
                        ent[(k, j)] = ent.get((k, j), ZERO) + a * c
        return Mat.from_sparse(n, n, ent)

    def right_mult(self, y: Sequence) -> Mat:
        n = self.dim
        ent: dict[tuple[int, int], Scalar] = {}
        for j, b in enumerate(y):
            if b:
                for i in range(n):
                    for k, c in self.table[i][j]:
                        ent[(k, i)] = ent.get((k, i), ZERO) + b * c
        return Mat.from_sparse(n, n, ent)


# ---------------------------------------------------------------------------
# construction and validation


def _table_from_dense(n: int, mult) -> tuple:
    return tuple(
        tuple(tuple((k, q(mult[i][j][k])) for k in range(n) if q(mult[i][j][k])) for j in range(n))
        for i in range(n))


def _table_from_dict(n: int, prods: dict) -> tuple:
    return tuple(
        tuple(tuple(sorted((k, q(v)) for k, v in prods.get((i, j), {}).items() if v)) for j in range(n))
        for i in range(n))


def validate(A: Algebra) -> list[tuple]:
    """Defect report: empty when associativity and both unit laws hold.

    Associativity failures are reported as ``("assoc", i, j, k)`` meaning
    ``(e_i e_j) e_k != e_i (e_j e_k)``; unit failures as ``("unit_left", j)``
    or ``("unit_right", j)``.
    """
    n = A.dim
    defects: list[tuple] = []
    if len(A.unit) != n:
        return [("shape", "unit")]
    for i, j in itertools.product(range(n), repeat=2):
        eij = dict(A.table[i][j])
        for k in range(n):
            lhs = A.mul(tuple(eij.get(t, ZERO) for t in range(n)), A.basis_vector(k))
            rhs = A.mul(A.basis_vector(i), A.mul(A.basis_vector(j), A.basis_vector(k)))
            if lhs != rhs:
                defects.append(("assoc", i, j, k))
    for j in range(n):
        ej = A.basis_vector(j)
        if A.mul(A.unit, ej) != ej:
            defects.append(("unit_left", j))
        if A.mul(ej, A.unit) != ej:
            defects.append(("unit_right", j))
    return defects


def from_structure_constants(mult, unit, label: str = "") -> Algebra:
    """Algebra from a dense ``n x n x n`` array; no certificate is attached."""
    n = len(unit)
    if len(mult) != n or any(len(r) != n or any(len(c) != n for c in r) for r in mult):
        raise InvalidAlgebra("structure constants must form an n x n x n array")
    A = Algebra(n, _table_from_dense(n, mult), unit, label=label)
    defects = validate(A)
    if defects:
        raise InvalidAlgebra(f"{label or 'algebra'}: {len(defects)} defects, first {defects[:3]}")
    return A


def field(label: str = "Q") -> Algebra:
    return matrix_algebra(1, label=label)


def matrix_algebra(d: int, label: str | None = None) -> Algebra:
    """Full matrix algebra M_d(Q) on matrix units ``E_ij`` (index ``i*d + j``)."""
    if d < 1:
        raise ValueError("d must be >= 1")
    n = d * d
    prods = {}
    for i, j, l in itertools.product(range(d), repeat=3):
        prods[(i * d + j, j * d + l)] = {i * d + l: 1}
    unit = [ONE if (k // d) == (k % d) else ZERO for k in range(n)]
    # row vectors: e_i * E_ij = e_j
    action = []
    for k in range(n):
        i, j = divmod(k, d)
        action.append(Mat.from_sparse(d, d, {(j, i): 1}))
    block = WedderburnBlock(tuple(unit), d, tuple(action))
    gens = []
    for i in range(d - 1):
        gens.append(tuple(ONE if k == i * d + i + 1 else ZERO for k in range(n)))
        gens.append(tuple(ONE if k == (i + 1) * d + i else ZERO for k in range(n)))
    if label is None:
        label = "Q" if d == 1 else f"M{d}"
    return Algebra(n, _table_from_dict(n, prods), unit, WedderburnCertificate((block,)), label, gens)


def product(A: Algebra, B: Algebra, label: str | None = None) -> Algebra:
    """Direct product ``A x B`` (basis of A followed by basis of B)."""
    n, m = A.dim, B.dim
    table = tuple(
        tuple(A.table[i][j] if j < n else () for j in range(n + m)) for i in range(n)
    ) + tuple(
        tuple(() if j < n else tuple((n + k, c) for k, c in B.table[i][j - n]) for j in range(n + m))
        for i in range(m))
    unit = A.unit + B.unit
    zA, zB = (ZERO,) * n, (ZERO,) * m
    gens = [g + zB for g in A.generators] + [zA + h for h in B.generators] + [A.unit + zB]
    cert = None
    ca, cb = A.certificate, B.certificate
    if ca is not None and cb is not None:
        blocks = []
        for b in ca.blocks:
            zero = Mat.zeros(b.dim, b.dim)
            blocks.append(WedderburnBlock(b.idempotent + zB, b.dim, b.action + (zero,) * m))
        for b in cb.blocks:
            zero = Mat.zeros(b.dim, b.dim)
            blocks.append(WedderburnBlock(zA + b.idempotent, b.dim, (zero,) * n + b.action))
        cert = WedderburnCertificate(tuple(blocks))
    if label is None:
        label = f"{A.label}x{B.label}"
    return Algebra(n + m, table, unit, cert, label, gens)


def group_algebra_elementary_2(k: int, label: str | None = None) -> Algebra:
    """Group algebra of (Z/2)^k; basis indexed by bitmasks, ``e_g e_h = e_{g^h}``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    n = 2 ** k
    prods = {(g, h): {g ^ h: 1} for g in range(n) for h in range(n)}
    unit = tuple(ONE if g == 0 else ZERO for g in range(n))
    blocks = []
    for chi in range(n):
        sign = [(-1) ** bin(chi & g).count("1") for g in range(n)]
        idem = tuple(q(s) / n for s in sign)
        blocks.append(WedderburnBlock(idem, 1, tuple(Mat.from_rows([[s]]) for s in sign)))
    gens = [tuple(ONE if g == 1 << t else ZERO for g in range(n)) for t in range(k)]
    if label is None:
        label = f"QZ2^{k}" if k != 1 else "QZ2"
    return Algebra(n, _table_from_dict(n, prods), unit, WedderburnCertificate(tuple(blocks)), label, gens)


def truncated_polynomial(n: int, label: str | None = None) -> Algebra:
    """Q[x]/(x^n) on the monomial basis; not semisimple for n >= 2."""
    prods = {(i, j): {i + j: 1} for i in range(n) for j in range(n) if i + j < n}
    unit = tuple(ONE if i == 0 else ZERO for i in range(n))
    gens = [tuple(ONE if i == 1 else ZERO for i in range(n))] if n > 1 else []
    if label is None:
        label = f"Q[x]/x^{n}"
    return Algebra(n, _table_from_dict(n, prods), unit, None, label, gens)


def strip_certificate(A: Algebra, label: str | None = None) -> Algebra:
    return Algebra(A.dim, A.table, A.unit, None, A.label if label is None else label, A._generators)


def opposite(A: Algebra) -> Algebra:
    """Opposite algebra, ``c'_ijk = c_jik``.

    The result is cached on ``A`` and linked back, so ``opposite(opposite(A))``
    is ``A`` itself.  Certificates are transported by dualizing the simple
    modules: the simple of ``A^op`` in block ``i`` is ``hom_A(S_i, A)``.
    """
    if A._op is not None:
        return A._op
    n = A.dim
    table = tuple(tuple(A.table[j][i] for j in range(n)) for i in range(n))
    label = A.label[:-3] if A.label.endswith("^op") else A.label + "^op"
    Aop = Algebra(n, table, A.unit, None, label, A._generators)
    A._op = Aop
    Aop._op = A
    if A.certificate is not None:
        Aop._certificate = _PENDING
        Aop._cert_thunk = lambda: _transport_certificate(A, Aop)
    return Aop


def _transport_certificate(A: Algebra, Aop: Algebra) -> WedderburnCertificate:
    from .bimodule import dual_module, simple_module

    blocks = []
    for i, b in enumerate(A.certificate.blocks):
        D = dual_module(simple_module(A, i))
        if D.dim != b.dim:
            raise NotSplit(f"dual of simple {i} of {A.label} has dim {D.dim} != {b.dim}")
        blocks.append(WedderburnBlock(b.idempotent, b.dim, D.right_act))
    return WedderburnCertificate(tuple(blocks))


def algebra_tensor(A: Algebra, B: Algebra, label: str | None = None) -> Algebra:
    """``A (x)_Q B``; basis pair ``(i, j)`` has index ``i * dim B + j``."""
    n, m = A.dim, B.dim
    table = []
    for i in range(n):
        for j in range(m):
            row = []
            for k in range(n):
                pa = A.table[i][k]
                for l in range(m):
                    pb = B.table[j][l]
                    row.append(tuple(sorted((p * m + r, a * b) for p, a in pa for r, b in pb)))
            table.append(tuple(row))
    unit = tuple(a * b for a in A.unit for b in B.unit)
    gens = [tuple(a * b for a in g for b in B.unit) for g in A.generators]
    gens += [tuple(a * b for a in A.unit for b in h) for h in B.generators]
    cert = None
    ca, cb = A.certificate, B.certificate
    if ca is not None and cb is not None:
        from .exactla import kron

        blocks = []
        for ba in ca.blocks:
            for bb in cb.blocks:
                idem = tuple(a * b for a in ba.idempotent for b in bb.idempotent)
                action = tuple(kron(x, y) for x in ba.action for y in bb.action)
                blocks.append(WedderburnBlock(idem, ba.dim * bb.dim, action))
        cert = WedderburnCertificate(tuple(blocks))
    if label is None:
        label = f"({A.label}(x){B.label})"
    return Algebra(n * m, tuple(table), unit, cert, label, gens)


# ---------------------------------------------------------------------------
# semisimplicity and Wedderburn data


def trace_form(A: Algebra) -> Mat:
    """Gram matrix ``tr(L_i L_j)`` of the left regular representation."""
    n = A.dim
    # c_i[(l, k)] = c_ilk
    cs = [{(l, k): c for l in range(n) for k, c in A.table[i][l]} for i in range(n)]
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            cj = cs[j]
            s = ZERO
            for (l, k), c in cs[i].items():
                d = cj.get((k, l))
                if d:
                    s += c * d
            row.append(s)
        rows.append(row)
    return Mat.from_rows(rows, n)


def is_semisimple(A: Algebra) -> tuple[bool, Subspace]:
    """Semisimplicity via the radical of the trace form (valid in char 0)."""
    G = trace_form(A)
    rad = kernel_of_rows(A.dim, (dict(r) for r in G.nz_rows() if r))
    return rad.dim == 0, rad


def center(A: Algebra) -> Subspace:
    n = A.dim
    rows = []
    for g in A.generators:
        # z -> z g - g z
        D = A.right_mult(g) - A.left_mult(g)
        rows.extend(dict(r) for r in D.nz_rows() if r)
    return kernel_of_rows(n, rows)


def _span_dim(vecs: Sequence[Sequence]) -> int:
    ech = Echelon(len(vecs[0]) if vecs else 0)
    for v in vecs:
        ech.add({i: x for i, x in enumerate(v) if x})
    return ech.rank


def _corner_dim(A: Algebra, e: Vec, f: Vec | None = None) -> int:
    """dim of e A f."""
    f = e if f is None else f
    vecs = [A.mul(A.mul(e, A.basis_vector(k)), f) for k in range(A.dim)]
    return _span_dim(vecs)


def _minpoly(A: Algebra, w: Vec, e: Vec) -> list[Scalar]:
    """Minimal polynomial (low-to-high, monic) of ``w`` in a corner with unit ``e``."""
    powers = [e]
    while True:
        nxt = A.mul(powers[-1], w)
        M = Mat.from_rows([list(col) for col in zip(*powers)], len(powers))
        try:
            c = solve(M, Mat.column(nxt))
        except NoSolution:
            powers.append(nxt)
            continue
        return [-c[i, 0] for i in range(len(powers))] + [ONE]


def _poly_eval(A: Algebra, poly: Sequence[Scalar], w: Vec, e: Vec) -> Vec:
    acc = tuple(ZERO for _ in e)
    for c in reversed(poly):
        acc = A.mul(acc, w)
        acc = tuple(a + c * b for a, b in zip(acc, e))
    return acc


def _trim(p: list[Scalar]) -> list[Scalar]:
    while p and not p[-1]:
        p.pop()
    return p


def _pmul(a: Sequence[Scalar], b: Sequence[Scalar]) -> list[Scalar]:
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _psub(a: Sequence[Scalar], b: Sequence[Scalar]) -> list[Scalar]:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else ZERO) - (b[i] if i < len(b) else ZERO) for i in range(n)])


def _pdivmod(a: Sequence[Scalar], b: Sequence[Scalar]) -> tuple[list[Scalar], list[Scalar]]:
    a = _trim(list(a))
    b = _trim(list(b))
    if len(a) < len(b):
        return [], a
    quo = [ZERO] * (len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        d = len(a) - len(b)
        quo[d] = c
        a = _psub(a, [ZERO] * d + [c * x for x in b])
    return _trim(quo), a


def _pgcdex(a: Sequence[Scalar], b: Sequence[Scalar]) -> tuple[list[Scalar], list[Scalar], list[Scalar]]:
    """``(g, s, t)`` with ``s a + t b = g`` and ``g`` monic."""
    r0, r1 = _trim(list(a)), _trim(list(b))
    s0, s1, t0, t1 = [ONE], [], [], [ONE]
    while r1:
        quo, rem = _pdivmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, _psub(s0, _pmul(quo, s1))
        t0, t1 = t1, _psub(t0, _pmul(quo, t1))
    lead = r0[-1]
    return [x / lead for x in r0], [x / lead for x in s0], [x / lead for x in t0]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(poly: Sequence[Scalar]) -> tuple[list[tuple[Scalar, int]], list[Scalar]]:
    """Rational roots with multiplicity, and the root-free cofactor.

    Uses the rational root theorem on the integer-cleared polynomial.
    """
    p = _trim([q(x) for x in poly])
    roots: list[tuple[Scalar, int]] = []
    mult0 = 0
    while len(p) > 1 and not p[0]:
        p = p[1:]
        mult0 += 1
    if mult0:
        roots.append((ZERO, mult0))
    if len(p) <= 1:
        return roots, p
    den = math.lcm(*[int(x.denominator) for x in p])
    ints = [int(x * den) for x in p]
    g = math.gcd(*ints)
    ints = [x // g for x in ints]
    cands = set()
    for a in _divisors(ints[0]):
        for b in _divisors(ints[-1]):
            cands.add(q(a) / b)
            cands.add(-q(a) / b)
    for r in sorted(cands):
        m = 0
        while len(p) > 1:
            quo, rem = _pdivmod(p, [-r, ONE])
            if rem:
                break
            p = quo
            m += 1
        if m:
            roots.append((r, m))
    return roots, p


def _split_idempotent(A: Algebra, y: Vec, f: Vec) -> Vec | None:
    """A nontrivial idempotent of the corner ``fAf`` built from ``y``, if any.

    Takes the generalized eigenspace projector ``v(y) r(y)`` for a rational
    root ``lam`` of the minimal polynomial ``m = (t - lam)^k r``.
    """
    mp = _minpoly(A, y, f)
    if len(mp) <= 2:
        return None
    roots, _ = rational_roots(mp)
    for lam, k in roots:
        lin = [ONE]
        for _ in range(k):
            lin = _pmul(lin, [-lam, ONE])
        r, rem = _pdivmod(mp, lin)
        if rem or len(r) <= 1:
            continue
        g, s, t = _pgcdex(lin, r)
        if len(g) != 1:
            continue
        idem = _poly_eval(A, _pmul(t, r), y, f)
        if any(idem) and idem != f:
            return idem
    return None


def wedderburn(A: Algebra, seed: int = 0, retries: int = 32) -> WedderburnCertificate:
    """Return the attached certificate, or compute one for a split semisimple algebra."""
    if A.certificate is not None:
        return A.certificate
    ok, _ = is_semisimple(A)
    if not ok:
        raise NotSemisimple(f"{A.label or 'algebra'} has a nonzero radical")
    rng = random.Random(seed)
    Z = center(A)
    zbasis = [tuple(Z.basis.row(i)) for i in range(Z.dim)]
    attempts = 0

    def random_central() -> Vec:
        coeffs = [rng.randint(-3, 3) for _ in zbasis]
        return tuple(sum((c * v[k] for c, v in zip(coeffs, zbasis)), ZERO) for k in range(A.dim))

    # central primitive idempotents
    pending, central = [A.unit], []
    while pending:
        e = pending.pop(0)
        if _span_dim([A.mul(e, z) for z in zbasis]) == 1:
            central.append(e)
            continue
        while True:
            if attempts >= retries:
                raise NotSplit(f"center of {A.label or 'algebra'} does not split over Q")
            w = A.mul(e, random_central())
            roots, rest = rational_roots(_minpoly(A, w, e))
            if len(rest) > 1 or len(roots) < 2:
                attempts += 1
                continue
            lams = [r for r, _ in roots]
            for lam in lams:
                idem = e
                for mu in lams:
                    if mu == lam:
                        continue
                    shifted = tuple(a - mu * b for a, b in zip(w, e))
                    idem = A.mul(idem, tuple(x / (lam - mu) for x in shifted))
                pending.append(idem)
            break
    central.sort(key=lambda v: [i for i, x in enumerate(v) if x])

    blocks = []
    for e in central:
        block_dim = _corner_dim(A, e)
        d = math.isqrt(block_dim)
        if d * d != block_dim:
            raise NotSplit(f"block of dimension {block_dim} is not a split matrix algebra")
        f = e
        tries = 0
        while _corner_dim(A, f) > 1:
            basis_cands = [A.mul(A.mul(f, A.basis_vector(k)), f) for k in range(A.dim)]
            found = None
            for y in basis_cands:
                if any(y):
                    found = _split_idempotent(A, y, f)
                    if found is not None:
                        break
            while found is None:
                if tries >= retries:
                    raise NotSplit(f"no rank-one idempotent found in a block of {A.label or 'algebra'}")
                tries += 1
                coeffs = [rng.randint(-2, 2) for _ in range(A.dim)]
                y = A.mul(A.mul(f, tuple(q(c) for c in coeffs)), f)
                found = _split_idempotent(A, y, f)
            other = tuple(a - b for a, b in zip(f, found))
            f = found if _corner_dim(A, found) <= _corner_dim(A, other) else other
        # simple right module S = fA
        ech = Echelon(A.dim)
        for k in range(A.dim):
            ech.add({i: x for i, x in enumerate(A.mul(f, A.basis_vector(k))) if x})
        S = Subspace(A.dim, ech.as_mat())
        if S.dim != d:
            raise NotSplit("minimal right ideal has unexpected dimension")
        emb, coords = S.embedding(), S.coordinates()
        action = tuple(coords @ A.right_mats()[k] @ emb for k in range(A.dim))
        blocks.append(WedderburnBlock(e, d, action))
    return WedderburnCertificate(tuple(blocks))


def with_certificate(A: Algebra, cert: WedderburnCertificate | None, label: str | None = None) -> Algebra:
    return Algebra(A.dim, A.table, A.unit, cert, A.label if label is None else label, A._generators)


def check_certificate(A: Algebra, cert: WedderburnCertificate | None = None) -> list[str]:
    """Problems with a certificate; empty list when it is sound."""
    cert = A.certificate if cert is None else cert
    if cert is None:
        return ["no certificate"]
    problems = []
    idems = [b.idempotent for b in cert.blocks]
    total = tuple(sum((e[k] for e in idems), ZERO) for k in range(A.dim))
    if total != A.unit:
        problems.append("idempotents do not sum to the unit")
    zero = (ZERO,) * A.dim
    for a, ea in enumerate(idems):
        for b, eb in enumerate(idems):
            want = ea if a == b else zero
            if A.mul(ea, eb) != want:
                problems.append(f"idempotents {a},{b} not orthogonal idempotents")
        for k in range(A.dim):
            v = A.basis_vector(k)
            if A.mul(ea, v) != A.mul(v, ea):
                problems.append(f"idempotent {a} not central")
                break
    if sum(b.dim ** 2 for b in cert.blocks) != A.dim:
        problems.append("sum of squared block dimensions differs from dim")
    for a, blk in enumerate(cert.blocks):
        I = Mat.identity(blk.dim)

        def act(x):
            acc = Mat.zeros(blk.dim, blk.dim)
            for k, c in enumerate(x):
                if c:
                    acc = acc + blk.action[k].scale(c)
            return acc

        if act(A.unit) != I:
            problems.append(f"simple {a}: unit does not act as identity")
        for i in range(A.dim):
            for j in range(A.dim):
                if blk.action[j] @ blk.action[i] != act(A.mul(A.basis_vector(i), A.basis_vector(j))):
                    problems.append(f"simple {a}: not a right action")
                    break
        for b, eb in enumerate(idems):
            want = I if a == b else Mat.zeros(blk.dim, blk.dim)
            if act(eb) != want:
                problems.append(f"simple {a}: idempotent {b} acts wrongly")
    return problems
