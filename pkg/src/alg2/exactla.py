"""Exact dense linear algebra over the rationals.

Matrices act on column vectors: a map ``k^n -> k^m`` is an ``m x n`` :class:`Mat`.
Storage is dense (tuple of row tuples of :class:`gmpy2.mpq`), but every
kernel below walks nonzero entries only, since the matrices produced by
tensor products and hom-spaces are overwhelmingly sparse.

Reductions are driven by :class:`Echelon`, an incremental reduced row
echelon form.  Because the RREF of a row space is unique, every basis handed
out by this module (kernels, column spaces, quotient complements) is
canonical and bit-for-bit reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from gmpy2 import mpq

__all__ = [
    "Scalar",
    "ZERO",
    "ONE",
    "q",
    "format_q",
    "Mat",
    "Subspace",
    "Echelon",
    "NoSolution",
    "SingularMatrix",
    "rref",
    "rank",
    "kernel_basis",
    "kernel_of_rows",
    "solve",
    "column_space",
    "cokernel",
    "cokernel_of_columns",
    "kron",
    "kron_apply",
    "matmul",
    "transpose",
    "direct_sum",
    "inverse",
    "is_invertible",
    "hstack",
    "vstack",
]

Scalar = type(mpq())
ZERO = mpq(0)
ONE = mpq(1)


class NoSolution(ValueError):
    """The right-hand side is not in the column space."""


class SingularMatrix(ValueError):
    """Inverse requested for a non-invertible matrix."""


def q(x) -> Scalar:
    """Coerce ``x`` (int, Fraction, mpq or ``"p/q"`` string) to a scalar."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, bool):
        return mpq(int(x))
    if isinstance(x, int):
        return mpq(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_q(x: Scalar) -> str:
    x = q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class Mat:
    """Immutable rational matrix."""

    __slots__ = ("rows", "cols", "_data", "_nzr", "_nzc", "_hash")

    def __init__(self, rows: int, cols: int, data: tuple[tuple[Scalar, ...], ...]):
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"data does not have shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self._data = data
        self._nzr = None
        self._nzc = None
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Mat":
        data = tuple(tuple(q(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Sequence) -> "Mat":
        if len(entries) != rows * cols:
            raise ValueError("entries length must equal rows*cols")
        ent = [q(x) for x in entries]
        return cls(rows, cols, tuple(tuple(ent[i * cols:(i + 1) * cols]) for i in range(rows)))

    @classmethod
    def from_sparse(cls, rows: int, cols: int, entries: dict) -> "Mat":
        buf = [[ZERO] * cols for _ in range(rows)]
        for (i, j), v in entries.items():
            if v:
                buf[i][j] = q(v)
        return cls(rows, cols, tuple(tuple(r) for r in buf))

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[dict]) -> "Mat":
        """Build from sparse columns given as ``{row: value}`` dicts."""
        cols = len(columns)
        buf = [[ZERO] * cols for _ in range(rows)]
        for j, c in enumerate(columns):
            for i, v in c.items():
                if v:
                    buf[i][j] = v
        return cls(rows, cols, tuple(tuple(r) for r in buf))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        row = (ZERO,) * cols
        return cls(rows, cols, (row,) * rows)

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(n, n, tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def column(cls, vec: Sequence) -> "Mat":
        return cls(len(vec), 1, tuple((q(x),) for x in vec))

    # -- access -------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple[Scalar, ...]:
        return tuple(x for r in self._data for x in r)

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self._data[i]

    def col(self, j: int) -> tuple[Scalar, ...]:
        return tuple(r[j] for r in self._data)

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self._data[i][j]

    def tolist(self) -> list[list[Scalar]]:
        return [list(r) for r in self._data]

    def nz_rows(self) -> list[list[tuple[int, Scalar]]]:
        if self._nzr is None:
            self._nzr = [[(j, x) for j, x in enumerate(r) if x] for r in self._data]
        return self._nzr

    def nz_cols(self) -> list[list[tuple[int, Scalar]]]:
        if self._nzc is None:
            cols: list[list[tuple[int, Scalar]]] = [[] for _ in range(self.cols)]
            for i, r in enumerate(self.nz_rows()):
                for j, x in r:
                    cols[j].append((i, x))
            self._nzc = cols
        return self._nzc

    def col_dict(self, j: int) -> dict[int, Scalar]:
        return dict(self.nz_cols()[j])

    def apply(self, vec: dict[int, Scalar]) -> dict[int, Scalar]:
        """Multiply a sparse column vector ``{index: value}``."""
        out: dict[int, Scalar] = {}
        cols = self.nz_cols()
        for j, v in vec.items():
            for i, x in cols[j]:
                out[i] = out.get(i, ZERO) + v * x
        return {i: x for i, x in out.items() if x}

    # -- algebra ------------------------------------------------------
    def __matmul__(self, other: "Mat") -> "Mat":
        return matmul(self, other)

    def __add__(self, other: "Mat") -> "Mat":
        _same_shape(self, other)
        return Mat(self.rows, self.cols,
                   tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)))

    def __sub__(self, other: "Mat") -> "Mat":
        _same_shape(self, other)
        return Mat(self.rows, self.cols,
                   tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)))

    def __neg__(self) -> "Mat":
        return Mat(self.rows, self.cols, tuple(tuple(-a for a in r) for r in self._data))

    def scale(self, c) -> "Mat":
        c = q(c)
        return Mat(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self._data))

    @property
    def T(self) -> "Mat":
        return transpose(self)

    def is_zero(self) -> bool:
        return not any(self.nz_rows()[i] for i in range(self.rows))

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == Mat.identity(self.rows)

    def with_entry(self, i: int, j: int, value) -> "Mat":
        rows = [list(r) for r in self._data]
        rows[i][j] = q(value)
        return Mat(self.rows, self.cols, tuple(tuple(r) for r in rows))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        if self is other:
            return True
        return self.rows == other.rows and self.cols == other.cols and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_q(x) for x in r) for r in self._data[:8])
        more = " ..." if self.rows > 8 else ""
        return f"Mat({self.rows}x{self.cols}: [{body}{more}])"


def _same_shape(a: Mat, b: Mat) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


@dataclass(frozen=True)
class Subspace:
    """Subspace of ``k^ambient_dim`` with an RREF basis (one vector per row)."""

    ambient_dim: int
    basis: Mat

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(r[0][0] for r in self.basis.nz_rows())

    def embedding(self) -> Mat:
        """``ambient x dim`` matrix whose columns are the basis vectors."""
        return self.basis.T

    def coordinates(self) -> Mat:
        """``dim x ambient`` matrix reading coordinates off the pivots.

        Only meaningful on vectors that lie in the subspace.
        """
        return Mat.from_sparse(self.dim, self.ambient_dim, {(i, p): ONE for i, p in enumerate(self.pivots)})

    def contains(self, vec: Sequence) -> bool:
        ech = Echelon(self.ambient_dim)
        for r in self.basis.nz_rows():
            ech.add(dict(r))
        return not ech.reduce({i: q(x) for i, x in enumerate(vec) if x})


class Echelon:
    """Incrementally maintained reduced row echelon form of a row space.

    Rows are sparse dicts ``{column: value}``.  Invariant: every stored row has
    leading entry 1 at its pivot and zeros at all other pivot columns, so the
    stored set is always *the* RREF of the span seen so far.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.piv: dict[int, dict[int, Scalar]] = {}
        self._where: dict[int, set[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.piv)

    def reduce(self, vec: dict[int, Scalar]) -> dict[int, Scalar]:
        v = {k: x for k, x in vec.items() if x}
        piv = self.piv
        for c in [c for c in v if c in piv]:
            coef = v[c]
            for k, x in piv[c].items():
                nv = v.get(k, ZERO) - coef * x
                if nv:
                    v[k] = nv
                else:
                    del v[k]
        return v

    def add(self, vec: dict[int, Scalar]) -> bool:
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v)
        inv = 1 / v[p]
        row = {k: x * inv for k, x in v.items()}
        where = self._where
        for qcol in list(where.get(p, ())):
            r = self.piv[qcol]
            coef = r.pop(p)
            for k, x in row.items():
                if k == p:
                    continue
                nv = r.get(k, ZERO) - coef * x
                if nv:
                    if k not in r:
                        where.setdefault(k, set()).add(qcol)
                    r[k] = nv
                elif k in r:
                    del r[k]
                    where[k].discard(qcol)
        where.pop(p, None)
        for k in row:
            if k != p:
                where.setdefault(k, set()).add(p)
        self.piv[p] = row
        return True

    def extend(self, vecs: Iterable[dict[int, Scalar]], stop_at_full: bool = True) -> None:
        for v in vecs:
            self.add(v)
            if stop_at_full and self.rank == self.ncols:
                return

    def pivots(self) -> list[int]:
        return sorted(self.piv)

    def sorted_rows(self) -> Iterator[tuple[int, dict[int, Scalar]]]:
        for p in sorted(self.piv):
            yield p, self.piv[p]

    def as_mat(self, nrows: int | None = None) -> Mat:
        piv = self.pivots()
        n = len(piv) if nrows is None else nrows
        return Mat.from_sparse(n, self.ncols,
                               {(i, k): x for i, p in enumerate(piv) for k, x in self.piv[p].items()})


def _row_dicts(m: Mat) -> Iterator[dict[int, Scalar]]:
    for r in m.nz_rows():
        if r:
            yield dict(r)


def rref(m: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form (same shape as ``m``) and pivot columns."""
    ech = Echelon(m.cols)
    ech.extend(_row_dicts(m))
    return ech.as_mat(m.rows), ech.pivots()


def rank(m: Mat) -> int:
    ech = Echelon(m.cols)
    ech.extend(_row_dicts(m))
    return ech.rank


def _kernel_from_echelon(ech: Echelon) -> Subspace:
    n = ech.ncols
    pivots = set(ech.piv)
    free = [c for c in range(n) if c not in pivots]
    # column -> [(pivot, value)] restricted to free columns
    by_free: dict[int, list[tuple[int, Scalar]]] = {}
    for p, row in ech.piv.items():
        for k, x in row.items():
            if k != p:
                by_free.setdefault(k, []).append((p, x))
    out = Echelon(n)
    for f in free:
        vec = {f: ONE}
        for p, x in by_free.get(f, ()):
            vec[p] = -x
        out.add(vec)
    return Subspace(n, out.as_mat())


def kernel_basis(m: Mat) -> Subspace:
    """Right null space ``{x : m x = 0}`` with an RREF basis."""
    ech = Echelon(m.cols)
    ech.extend(_row_dicts(m))
    return _kernel_from_echelon(ech)


def kernel_of_rows(ncols: int, rows: Iterable[dict[int, Scalar]]) -> Subspace:
    """Null space of the matrix whose (sparse) rows are ``rows``."""
    ech = Echelon(ncols)
    ech.extend(rows)
    return _kernel_from_echelon(ech)


def solve(m: Mat, rhs: Mat) -> Mat:
    """A particular solution ``x`` of ``m x = rhs`` (free variables set to 0)."""
    if m.rows != rhs.rows:
        raise ValueError("m and rhs must have the same number of rows")
    n = m.cols
    ech = Echelon(n + rhs.cols)
    mr, rr = m.nz_rows(), rhs.nz_rows()
    for i in range(m.rows):
        row = dict(mr[i])
        for j, x in rr[i]:
            row[n + j] = x
        if row:
            ech.add(row)
    if any(p >= n for p in ech.piv):
        raise NoSolution("right-hand side is outside the column space")
    sol = {}
    for p, row in ech.piv.items():
        for k, x in row.items():
            if k >= n:
                sol[(p, k - n)] = x
    return Mat.from_sparse(n, rhs.cols, sol)


def column_space(m: Mat) -> Subspace:
    ech = Echelon(m.rows)
    ech.extend(dict(c) for c in m.nz_cols() if c)
    return Subspace(m.rows, ech.as_mat())


def cokernel_of_columns(n: int, columns: Iterable[dict[int, Scalar]]) -> tuple[Mat, Mat]:
    """Quotient of ``k^n`` by the span of sparse ``columns``.

    Returns ``(proj, section)`` with ``proj @ section = I``; the quotient basis
    is the images of the non-pivot standard vectors of the column-space RREF.
    """
    ech = Echelon(n)
    ech.extend(columns)
    pivots = ech.piv
    free = [c for c in range(n) if c not in pivots]
    idx = {c: t for t, c in enumerate(free)}
    proj: dict[tuple[int, int], Scalar] = {(t, c): ONE for t, c in enumerate(free)}
    for p, row in pivots.items():
        for k, x in row.items():
            if k != p:
                proj[(idx[k], p)] = -x
    section = {(c, t): ONE for t, c in enumerate(free)}
    return Mat.from_sparse(len(free), n, proj), Mat.from_sparse(n, len(free), section)


def cokernel(m: Mat) -> tuple[Mat, Mat]:
    """Projection onto ``k^rows / im(m)`` and a section of it."""
    return cokernel_of_columns(m.rows, (dict(c) for c in m.nz_cols() if c))


def matmul(a: Mat, b: Mat) -> Mat:
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    brows = b.nz_rows()
    out = []
    zero_row = (ZERO,) * b.cols
    for r in a.nz_rows():
        if not r:
            out.append(zero_row)
            continue
        acc = [ZERO] * b.cols
        for k, x in r:
            for j, y in brows[k]:
                acc[j] += x * y
        out.append(tuple(acc))
    return Mat(a.rows, b.cols, tuple(out))


def transpose(m: Mat) -> Mat:
    return Mat(m.cols, m.rows, tuple(zip(*m._data)) if m.rows else tuple(() for _ in range(m.cols)))


def kron(a: Mat, b: Mat) -> Mat:
    """Kronecker product; basis pair ``(i, j)`` sits at index ``i * dim_b + j``."""
    rows, cols = a.rows * b.rows, a.cols * b.cols
    ent = {}
    bnz = b.nz_rows()
    for i, ar in enumerate(a.nz_rows()):
        for k, x in ar:
            for i2 in range(b.rows):
                for l, y in bnz[i2]:
                    ent[(i * b.rows + i2, k * b.cols + l)] = x * y
    return Mat.from_sparse(rows, cols, ent)


def kron_apply(a: Mat, b: Mat, vec: dict[int, Scalar]) -> dict[int, Scalar]:
    """``kron(a, b) @ vec`` without materializing the Kronecker product."""
    acols, bcols = a.nz_cols(), b.nz_cols()
    nb_in, nb_out = b.cols, b.rows
    out: dict[int, Scalar] = {}
    for idx, v in vec.items():
        i, j = divmod(idx, nb_in)
        for r, x in acols[i]:
            xv = x * v
            base = r * nb_out
            for s, y in bcols[j]:
                key = base + s
                out[key] = out.get(key, ZERO) + xv * y
    return {k: x for k, x in out.items() if x}


def direct_sum(*mats: Mat) -> Mat:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    ent = {}
    r0 = c0 = 0
    for m in mats:
        for i, r in enumerate(m.nz_rows()):
            for j, x in r:
                ent[(r0 + i, c0 + j)] = x
        r0 += m.rows
        c0 += m.cols
    return Mat.from_sparse(rows, cols, ent)


def hstack(*mats: Mat) -> Mat:
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ValueError("hstack needs equal row counts")
    return Mat(rows, sum(m.cols for m in mats),
               tuple(tuple(x for m in mats for x in m._data[i]) for i in range(rows)))


def vstack(*mats: Mat) -> Mat:
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ValueError("vstack needs equal column counts")
    return Mat(sum(m.rows for m in mats), cols, tuple(r for m in mats for r in m._data))


def inverse(m: Mat) -> Mat:
    if m.rows != m.cols:
        raise SingularMatrix(f"non-square matrix {m.shape}")
    try:
        return solve(m, Mat.identity(m.rows))
    except NoSolution:
        raise SingularMatrix("matrix is singular") from None


def is_invertible(m: Mat) -> bool:
    return m.rows == m.cols and rank(m) == m.rows
