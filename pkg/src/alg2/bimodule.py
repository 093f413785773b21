"""Bimodules, intertwiners, tensor products over an algebra and hom-bimodules.

Conventions
-----------
* A bimodule ``M`` over ``(A, B)`` stores ``left_act[i]``, the matrix of
  ``m -> e_i m``, and ``right_act[j]``, the matrix of ``m -> m e_j``.  Both act
  on column vectors, so ``right_act`` is an anti-homomorphism:
  ``rho(b b') = rho(b') rho(b)``.
* ``M (x)_k N`` uses the Kronecker basis, pair ``(x, y)`` at ``x * dim N + y``.
* Elements of hom-spaces are ``dim N x dim M`` matrices flattened row-major.
* Quotients and hom-spaces use the echelon bases from :mod:`alg2.exactla`, so
  every canonical isomorphism below is a definite matrix.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .algebra import (
    Algebra,
    AlgebraError,
    NoCertificate,
    NotSemisimple,
    algebra_tensor,
    field as field_algebra,
    is_semisimple,
    opposite,
)
from .exactla import (
    ONE,
    ZERO,
    Mat,
    Scalar,
    Subspace,
    cokernel_of_columns,
    inverse,
    is_invertible,
    kernel_of_rows,
    kron,
    kron_apply,
    q,
)

__all__ = [
    "Bimodule",
    "Intertwiner",
    "TensorProduct",
    "HomSpace",
    "CompositionMismatch",
    "NotAnIntertwiner",
    "K",
    "regular",
    "simple_module",
    "swap",
    "as_right_over_op",
    "external_tensor",
    "direct_sum",
    "change_basis",
    "tensor_over",
    "hcomp",
    "hom_right",
    "postcompose_map",
    "bimodule_hom",
    "dual_module",
    "intertwiner_adjoint",
    "braid_iso",
    "adjoint_iso",
    "double_dual_iso",
    "tensor_hom_iso",
    "dual_of_tensor",
    "dual_of_tensor_inverse_formula",
    "find_isomorphism",
]

K = field_algebra("Q")


class CompositionMismatch(AlgebraError):
    """Algebras or bimodules do not line up for the requested composite."""


class NotAnIntertwiner(AlgebraError):
    pass


def _combine(mats: Sequence[Mat], coeffs: Sequence, n: int) -> Mat:
    ent: dict[tuple[int, int], Scalar] = {}
    for c, m in zip(coeffs, mats):
        if not c:
            continue
        for i, r in enumerate(m.nz_rows()):
            for j, x in r:
                ent[(i, j)] = ent.get((i, j), ZERO) + c * x
    return Mat.from_sparse(n, n, ent)


class Bimodule:
    """An ``(A, B)``-bimodule with explicit action matrices.

    Equality is structural (algebras, dimension and actions); the label is
    ignored.
    """

    __slots__ = ("left_alg", "right_alg", "dim", "left_act", "right_act", "label", "_hash")

    def __init__(self, left_alg: Algebra, right_alg: Algebra, dim: int,
                 left_act: Sequence[Mat], right_act: Sequence[Mat], label: str = ""):
        if len(left_act) != left_alg.dim or len(right_act) != right_alg.dim:
            raise ValueError("one action matrix per basis element is required")
        self.left_alg = left_alg
        self.right_alg = right_alg
        self.dim = dim
        self.left_act = tuple(left_act)
        self.right_act = tuple(right_act)
        self.label = label
        self._hash = None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Bimodule):
            return NotImplemented
        if self is other:
            return True
        return (self.dim == other.dim and self.left_alg == other.left_alg
                and self.right_alg == other.right_alg and self.left_act == other.left_act
                and self.right_act == other.right_act)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dim, self.left_alg, self.right_alg, self.left_act, self.right_act))
        return self._hash

    def __repr__(self) -> str:
        return f"Bimodule({self.label or '?'}: {self.left_alg.label}->{self.right_alg.label}, dim={self.dim})"

    def lam(self, a: Sequence) -> Mat:
        return _combine(self.left_act, a, self.dim)

    def rho(self, b: Sequence) -> Mat:
        return _combine(self.right_act, b, self.dim)

    def left_gen_mats(self) -> list[Mat]:
        return [self.lam(g) for g in self.left_alg.generators]

    def right_gen_mats(self) -> list[Mat]:
        return [self.rho(g) for g in self.right_alg.generators]

    def identity(self) -> "Intertwiner":
        return Intertwiner(self, self, Mat.identity(self.dim))

    def zero_to(self, other: "Bimodule") -> "Intertwiner":
        return Intertwiner(self, other, Mat.zeros(other.dim, self.dim))

    def defects(self) -> list[str]:
        """Violations of the bimodule axioms; empty when valid."""
        out = []
        A, B, n = self.left_alg, self.right_alg, self.dim
        I = Mat.identity(n)
        if self.lam(A.unit) != I:
            out.append("unit of left algebra does not act as identity")
        if self.rho(B.unit) != I:
            out.append("unit of right algebra does not act as identity")
        for i in range(A.dim):
            for j in range(A.dim):
                if self.left_act[i] @ self.left_act[j] != self.lam(A.mul(A.basis_vector(i), A.basis_vector(j))):
                    out.append(f"left action not multiplicative at ({i},{j})")
        for i in range(B.dim):
            for j in range(B.dim):
                if self.right_act[j] @ self.right_act[i] != self.rho(B.mul(B.basis_vector(i), B.basis_vector(j))):
                    out.append(f"right action not multiplicative at ({i},{j})")
        for a in self.left_act:
            for b in self.right_act:
                if a @ b != b @ a:
                    out.append("left and right actions do not commute")
                    return out
        return out


@dataclass(frozen=True, eq=False)
class Intertwiner:
    """A bimodule map ``source -> target`` given by a ``target.dim x source.dim`` matrix."""

    source: Bimodule
    target: Bimodule
    mat: Mat

    def __post_init__(self):
        if self.mat.shape != (self.target.dim, self.source.dim):
            raise ValueError(f"matrix shape {self.mat.shape} does not match "
                             f"{self.target.dim}x{self.source.dim}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Intertwiner):
            return NotImplemented
        return self.mat == other.mat and self.source == other.source and self.target == other.target

    def __hash__(self) -> int:
        return hash(self.mat)

    def __matmul__(self, other: "Intertwiner") -> "Intertwiner":
        """``self @ other`` is ``self`` after ``other``."""
        if other.target != self.source:
            raise CompositionMismatch("target of the right factor differs from source of the left factor")
        return Intertwiner(other.source, self.target, self.mat @ other.mat)

    def __add__(self, other: "Intertwiner") -> "Intertwiner":
        return Intertwiner(self.source, self.target, self.mat + other.mat)

    def scale(self, c) -> "Intertwiner":
        return Intertwiner(self.source, self.target, self.mat.scale(c))

    def inverse(self) -> "Intertwiner":
        return Intertwiner(self.target, self.source, inverse(self.mat))

    def is_invertible(self) -> bool:
        return is_invertible(self.mat)

    def defects(self) -> list[str]:
        s, t, f = self.source, self.target, self.mat
        out = []
        if s.left_alg != t.left_alg or s.right_alg != t.right_alg:
            return ["source and target live over different algebras"]
        for a, (ls, lt) in enumerate(zip(s.left_gen_mats(), t.left_gen_mats())):
            if f @ ls != lt @ f:
                out.append(f"does not commute with left generator {a}")
        for b, (rs, rt) in enumerate(zip(s.right_gen_mats(), t.right_gen_mats())):
            if f @ rs != rt @ f:
                out.append(f"does not commute with right generator {b}")
        return out

    def is_valid(self) -> bool:
        return not self.defects()

    def checked(self) -> "Intertwiner":
        d = self.defects()
        if d:
            raise NotAnIntertwiner("; ".join(d))
        return self


# ---------------------------------------------------------------------------
# basic bimodules


def regular(A: Algebra) -> Bimodule:
    """``A`` as an ``(A, A)``-bimodule."""
    return Bimodule(A, A, A.dim, A.left_mats(), A.right_mats(), label=f"{A.label}")


def simple_module(A: Algebra, i: int) -> Bimodule:
    """The ``i``-th simple right ``A``-module of the certificate, as a ``(Q, A)``-bimodule."""
    cert = A.certificate
    if cert is None:
        raise NoCertificate(f"{A.label or 'algebra'} carries no Wedderburn certificate")
    b = cert.blocks[i]
    return Bimodule(K, A, b.dim, (Mat.identity(b.dim),), b.action, label=f"S{i}({A.label})")


def swap(M: Bimodule) -> Bimodule:
    """View an ``(A, B)``-bimodule as a ``(B^op, A^op)``-bimodule on the same space."""
    return Bimodule(opposite(M.right_alg), opposite(M.left_alg), M.dim, M.right_act, M.left_act,
                    label=_swap_label(M.label))


def _swap_label(s: str) -> str:
    return s[:-2] if s.endswith("^s") else s + "^s"


as_right_over_op = swap


def external_tensor(M: Bimodule, N: Bimodule) -> Bimodule:
    """``M (x)_k N`` over ``(A (x) C, B (x) D)``."""
    AC = algebra_tensor(M.left_alg, N.left_alg)
    BD = algebra_tensor(M.right_alg, N.right_alg)
    left = [kron(x, y) for x in M.left_act for y in N.left_act]
    right = [kron(x, y) for x in M.right_act for y in N.right_act]
    return Bimodule(AC, BD, M.dim * N.dim, left, right, label=f"({M.label}[x]{N.label})")


def direct_sum(*mods: Bimodule) -> Bimodule:
    from .exactla import direct_sum as dsum

    A, B = mods[0].left_alg, mods[0].right_alg
    if any(m.left_alg != A or m.right_alg != B for m in mods):
        raise CompositionMismatch("direct summands must share both algebras")
    left = [dsum(*(m.left_act[i] for m in mods)) for i in range(A.dim)]
    right = [dsum(*(m.right_act[j] for m in mods)) for j in range(B.dim)]
    return Bimodule(A, B, sum(m.dim for m in mods), left, right, label="+".join(m.label for m in mods))


def change_basis(M: Bimodule, g: Mat, label: str | None = None) -> tuple[Bimodule, Intertwiner]:
    """Transport ``M`` along an invertible ``g``; returns the new module and ``g`` as an intertwiner."""
    gi = inverse(g)
    N = Bimodule(M.left_alg, M.right_alg, M.dim,
                 [g @ x @ gi for x in M.left_act], [g @ x @ gi for x in M.right_act],
                 label=M.label if label is None else label)
    return N, Intertwiner(M, N, g)


# ---------------------------------------------------------------------------
# tensor over the middle algebra


@dataclass(frozen=True, eq=False)
class TensorProduct:
    """``M (x)_B N`` with the quotient map from ``M (x)_k N`` and a section of it."""

    module: Bimodule
    proj: Mat
    sect: Mat
    left: Bimodule
    right: Bimodule

    def element(self, x: int, y: int) -> dict[int, Scalar]:
        """Coordinates of the class of ``e_x (x) e_y``."""
        return dict(self.proj.nz_cols()[x * self.right.dim + y])


def _restrict(op: Callable[[dict], dict], sect: Mat, proj: Mat) -> Mat:
    cols = [proj.apply(op(c)) for c in (dict(v) for v in sect.nz_cols())]
    return Mat.from_columns(proj.rows, cols)


@functools.lru_cache(maxsize=4096)
def tensor_over(M: Bimodule, N: Bimodule) -> TensorProduct:
    """``M (x)_B N`` for ``M`` over ``(A, B)`` and ``N`` over ``(B, C)``.

    The relations ``m b (x) n - m (x) b n`` only need ``b`` to run over
    generators of ``B``.
    """
    if M.right_alg != N.left_alg:
        raise CompositionMismatch(f"cannot tensor {M!r} with {N!r}: middle algebras differ")
    m, n = M.dim, N.dim
    Im, In = Mat.identity(m), Mat.identity(n)

    def relations():
        for rg, lg in zip(M.right_gen_mats(), N.left_gen_mats()):
            for idx in range(m * n):
                e = {idx: ONE}
                v = kron_apply(rg, In, e)
                for k, x in kron_apply(Im, lg, e).items():
                    nv = v.get(k, ZERO) - x
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
                if v:
                    yield v

    proj, sect = cokernel_of_columns(m * n, relations())
    left = [_restrict(lambda v, a=a: kron_apply(a, In, v), sect, proj) for a in M.left_act]
    right = [_restrict(lambda v, c=c: kron_apply(Im, c, v), sect, proj) for c in N.right_act]
    T = Bimodule(M.left_alg, N.right_alg, proj.rows, left, right, label=f"{M.label}*{N.label}")
    return TensorProduct(T, proj, sect, M, N)


def hcomp(f: Intertwiner, g: Intertwiner) -> Intertwiner:
    """``f (x)_B g`` for ``f: M -> M'`` and ``g: N -> N'``."""
    S = tensor_over(f.source, g.source)
    T = tensor_over(f.target, g.target)
    mat = _restrict(lambda v: kron_apply(f.mat, g.mat, v), S.sect, T.proj)
    return Intertwiner(S.module, T.module, mat)


# ---------------------------------------------------------------------------
# hom bimodules


@dataclass(frozen=True, eq=False)
class HomSpace:
    """``hom_B(M, N)`` as a ``(C, A)``-bimodule for ``M`` over ``(A, B)``, ``N`` over ``(C, B)``.

    ``emb`` maps coordinates to flattened matrices, ``coords`` reads them back.
    """

    module: Bimodule
    source: Bimodule
    target: Bimodule
    space: Subspace

    @functools.cached_property
    def emb(self) -> Mat:
        return self.space.embedding()

    @functools.cached_property
    def pivots(self) -> tuple[int, ...]:
        return self.space.pivots

    @functools.cached_property
    def basis_mats(self) -> tuple[Mat, ...]:
        n, m = self.target.dim, self.source.dim
        return tuple(Mat.from_sparse(n, m, {divmod(k, m): x for k, x in r})
                     for r in self.space.basis.nz_rows())

    def element_matrix(self, coords: Sequence) -> Mat:
        n, m = self.target.dim, self.source.dim
        ent: dict[tuple[int, int], Scalar] = {}
        for c, r in zip(coords, self.space.basis.nz_rows()):
            if c:
                for k, x in r:
                    ij = divmod(k, m)
                    ent[ij] = ent.get(ij, ZERO) + c * x
        return Mat.from_sparse(n, m, ent)

    def coords_of(self, F: Mat) -> tuple[Scalar, ...]:
        m = self.source.dim
        return tuple(F[divmod(p, m)] for p in self.pivots)

    def coords_of_flat(self, v: dict[int, Scalar]) -> dict[int, Scalar]:
        return {t: v[p] for t, p in enumerate(self.pivots) if p in v and v[p]}


def _commutator_rows(n: int, m: int, X: Mat, Y: Mat):
    """Rows of ``vec(F X - Y F)`` for ``F`` an ``n x m`` matrix (row-major)."""
    xcols = X.nz_cols()
    yrows = Y.nz_rows()
    for r in range(n):
        for s in range(m):
            row: dict[int, Scalar] = {}
            for s2, x in xcols[s]:
                row[r * m + s2] = row.get(r * m + s2, ZERO) + x
            for r2, y in yrows[r]:
                k = r2 * m + s
                row[k] = row.get(k, ZERO) - y
            row = {k: v for k, v in row.items() if v}
            if row:
                yield row


@functools.lru_cache(maxsize=4096)
def hom_right(M: Bimodule, N: Bimodule) -> HomSpace:
    """Right-module maps ``M -> N`` with actions ``(c f)(x) = c f(x)``, ``(f a)(x) = f(a x)``."""
    if M.right_alg != N.right_alg:
        raise CompositionMismatch(f"hom between {M!r} and {N!r}: right algebras differ")
    m, n = M.dim, N.dim

    def rows():
        for X, Y in zip(M.right_gen_mats(), N.right_gen_mats()):
            yield from _commutator_rows(n, m, X, Y)

    space = kernel_of_rows(n * m, rows())
    H = HomSpace(None, M, N, space)  # type: ignore[arg-type]
    E = [dict(r) for r in space.basis.nz_rows()]
    piv = space.pivots
    In, Im = Mat.identity(n), Mat.identity(m)

    def restrict(op):
        cols = []
        for v in E:
            w = op(v)
            cols.append({t: w[p] for t, p in enumerate(piv) if p in w})
        return Mat.from_columns(len(E), cols)

    left = [restrict(lambda v, c=c: kron_apply(c, Im, v)) for c in N.left_act]
    right = [restrict(lambda v, a=a: kron_apply(In, a.T, v)) for a in M.left_act]
    mod = Bimodule(N.left_alg, M.left_alg, len(E), left, right, label=f"hom({M.label},{N.label})")
    object.__setattr__(H, "module", mod)
    return H


def bimodule_hom(M: Bimodule, N: Bimodule) -> list[Mat]:
    """Basis of the space of intertwiners ``M -> N``."""
    if M.right_alg != N.right_alg or M.left_alg != N.left_alg:
        raise CompositionMismatch("bimodule maps need matching algebras")
    m, n = M.dim, N.dim

    def rows():
        for X, Y in zip(M.right_gen_mats(), N.right_gen_mats()):
            yield from _commutator_rows(n, m, X, Y)
        for X, Y in zip(M.left_gen_mats(), N.left_gen_mats()):
            yield from _commutator_rows(n, m, X, Y)

    space = kernel_of_rows(n * m, rows())
    return [Mat.from_sparse(n, m, {divmod(k, m): x for k, x in r}) for r in space.basis.nz_rows()]


def find_isomorphism(M: Bimodule, N: Bimodule, seed: int = 0, tries: int = 64) -> Intertwiner | None:
    """An invertible intertwiner ``M -> N`` if one turns up, searched with seeded combinations."""
    if M.dim != N.dim:
        return None
    basis = bimodule_hom(M, N)
    if not basis:
        return Intertwiner(M, N, Mat.zeros(0, 0)) if M.dim == 0 else None
    rng = random.Random(seed)
    candidates = list(basis)
    for _ in range(tries):
        candidates.append(_combine(basis, [q(rng.randint(-5, 5)) for _ in basis], M.dim))
    for f in candidates:
        if is_invertible(f):
            return Intertwiner(M, N, f)
    return None


# ---------------------------------------------------------------------------
# duals


def _require_semisimple(*algs: Algebra) -> None:
    for A in algs:
        ok, _ = _semisimple_cached(A)
        if not ok:
            raise NotSemisimple(f"{A.label or 'algebra'} is not semisimple")


@functools.lru_cache(maxsize=256)
def _semisimple_cached(A: Algebra):
    return is_semisimple(A)


def dual_module(M: Bimodule) -> Bimodule:
    """``M^o``: ``hom_B(M, B)`` viewed as an ``(A^op, B^op)``-bimodule."""
    D = swap(hom_right(M, regular(M.right_alg)).module)
    return Bimodule(D.left_alg, D.right_alg, D.dim, D.left_act, D.right_act, label=f"{M.label}'")


def intertwiner_adjoint(f: Intertwiner) -> Intertwiner:
    """``f^*: N^o -> M^o``, ``g -> g f``."""
    M, N = f.source, f.target
    B = M.right_alg
    HM, HN = hom_right(M, regular(B)), hom_right(N, regular(B))
    Ib = Mat.identity(B.dim)
    mat = _restrict_hom(lambda v: kron_apply(Ib, f.mat.T, v), HN, HM)
    return Intertwiner(dual_module(N), dual_module(M), mat)


def postcompose_map(phi: Mat, src: HomSpace, tgt: HomSpace) -> Mat:
    """Matrix of ``h -> phi h`` from ``src`` to ``tgt`` (hom-spaces with the same source)."""
    I = Mat.identity(src.source.dim)
    return _restrict_hom(lambda v: kron_apply(phi, I, v), src, tgt)


def _restrict_hom(op, src: HomSpace, tgt: HomSpace) -> Mat:
    cols = [tgt.coords_of_flat(op(dict(r))) for r in src.space.basis.nz_rows()]
    return Mat.from_columns(tgt.module.dim, cols)


def double_dual_iso(P: Bimodule) -> Intertwiner:
    """``psi_P: P -> P^oo``, ``p -> (g -> g(p))``."""
    _require_semisimple(P.right_alg)
    B = P.right_alg
    H1 = hom_right(P, regular(B))
    D = dual_module(P)
    H2 = hom_right(D, regular(D.right_alg))
    nD = D.dim
    Gs = H1.basis_mats
    cols = []
    for s in range(P.dim):
        flat = {}
        for t, G in enumerate(Gs):
            for k in range(B.dim):
                x = G[k, s]
                if x:
                    flat[k * nD + t] = x
        cols.append(H2.coords_of_flat(flat))
    DD = dual_module(D)
    return Intertwiner(P, DD, Mat.from_columns(DD.dim, cols))


# ---------------------------------------------------------------------------
# canonical isomorphisms between tensor and hom constructions


def _swap_perm(m: int, n: int) -> Mat:
    """Kronecker swap ``k^m (x) k^n -> k^n (x) k^m``."""
    return Mat.from_sparse(m * n, m * n, {(y * m + x, x * n + y): ONE for x in range(m) for y in range(n)})


def braid_iso(M: Bimodule, N: Bimodule) -> Mat:
    """``M (x)_B N -> N^s (x)_{B^op} M^s`` induced by ``x (x) y -> y (x) x``.

    The result intertwines the ``(A, C)``-structure of the source with the
    ``(C^op, A^op)``-structure of the target read through :func:`swap`.
    """
    S = tensor_over(M, N)
    T = tensor_over(swap(N), swap(M))
    m, n = M.dim, N.dim

    def op(v):
        return {(k % n) * m + k // n: x for k, x in v.items()}

    return _restrict(op, S.sect, T.proj)


def adjoint_iso(X: Bimodule, M: Bimodule, Y: Bimodule) -> Intertwiner:
    """``hom_B(X (x)_A M, Y) -> hom_A(X, hom_B(M, Y))``, ``g -> (x -> (m -> g(x (x) m)))``.

    ``X`` is over ``(D, A)``, ``M`` over ``(A, B)``, ``Y`` over ``(C, B)``; both
    sides are ``(C, D)``-bimodules.
    """
    T = tensor_over(X, M)
    H1 = hom_right(T.module, Y)
    H2 = hom_right(M, Y)
    H3 = hom_right(X, H2.module)
    x_dim, m_dim, y_dim = X.dim, M.dim, Y.dim
    pcols = T.proj.nz_cols()
    cols = []
    for G in H1.basis_mats:
        grows = G.nz_rows()
        flat3: dict[int, Scalar] = {}
        for i in range(x_dim):
            # f_x as a y_dim x m_dim matrix, flattened
            fx: dict[int, Scalar] = {}
            for s in range(m_dim):
                col = dict(pcols[i * m_dim + s])
                for r in range(y_dim):
                    acc = ZERO
                    for k, g in grows[r]:
                        c = col.get(k)
                        if c:
                            acc += g * c
                    if acc:
                        fx[r * m_dim + s] = acc
            for t, x in H2.coords_of_flat(fx).items():
                flat3[t * x_dim + i] = x
        cols.append(H3.coords_of_flat(flat3))
    return Intertwiner(H1.module, H3.module, Mat.from_columns(H3.module.dim, cols))


def tensor_hom_iso(X: Bimodule, P: Bimodule) -> Intertwiner:
    """``X (x)_A hom_A(P, A) -> hom_A(P, X)``, ``x (x) g -> (p -> x g(p))``.

    ``X`` is over ``(D, A)`` and ``P`` over ``(B, A)``; both sides are
    ``(D, B)``-bimodules.
    """
    A = P.right_alg
    _require_semisimple(A)
    H = hom_right(P, regular(A))
    T = tensor_over(X, H.module)
    target = hom_right(P, X)
    h, p_dim = H.module.dim, P.dim
    Gs = H.basis_mats
    racts = [r.nz_cols() for r in X.right_act]
    cols = []
    for c in (dict(v) for v in T.sect.nz_cols()):
        flat: dict[int, Scalar] = {}
        for idx, v in c.items():
            x, t = divmod(idx, h)
            G = Gs[t]
            for k, r in enumerate(G.nz_rows()):
                for s, gks in r:
                    # contributes gks * (e_x . e_k) to column s
                    for row, val in racts[k][x]:
                        key = row * p_dim + s
                        flat[key] = flat.get(key, ZERO) + v * gks * val
        flat = {k: x for k, x in flat.items() if x}
        cols.append(target.coords_of_flat(flat))
    return Intertwiner(T.module, target.module, Mat.from_columns(target.module.dim, cols))


def dual_of_tensor(M: Bimodule, N: Bimodule) -> Mat:
    """The canonical isomorphism ``(M (x)_B N)^o -> M^o (x)_{B^op} N^o``.

    Composite of currying, the inverse tensor-hom map with
    ``X = hom_C(N, C)``, and the braiding.
    """
    C = N.right_alg
    adj = adjoint_iso(M, N, regular(C))
    XN = hom_right(N, regular(C)).module
    th = tensor_hom_iso(XN, M)
    HM = hom_right(M, regular(M.right_alg)).module
    br = braid_iso(XN, HM)
    return br @ inverse(th.mat) @ adj.mat


def dual_of_tensor_inverse_formula(M: Bimodule, N: Bimodule) -> Mat:
    """Closed form of the inverse: ``g (x) h -> (m (x) n -> h(g(m) n))``."""
    B, C = M.right_alg, N.right_alg
    HM, HN = hom_right(M, regular(B)), hom_right(N, regular(C))
    S = tensor_over(dual_module(M), dual_module(N))
    T = tensor_over(M, N)
    Htgt = hom_right(T.module, regular(C))
    nN, nT = N.dim, T.module.dim
    hn = HN.module.dim
    gm, hm = HM.basis_mats, HN.basis_mats
    # value of the functional on class t of M (x)_B N, via the section
    reps = [dict(v) for v in T.sect.nz_cols()]
    cols = []
    for c in (dict(v) for v in S.sect.nz_cols()):
        F: dict[int, Scalar] = {}
        for idx, coef in c.items():
            a, b = divmod(idx, hn)
            G, Hm = gm[a], hm[b]
            for t, rep in enumerate(reps):
                for k2, val in rep.items():
                    mi, ni = divmod(k2, nN)
                    gm_vec = G.col(mi)
                    n_vec = N.lam(gm_vec).col(ni)
                    for r in range(C.dim):
                        s = sum((Hm[r, j] * n_vec[j] for j in range(nN) if n_vec[j]), ZERO)
                        if s:
                            key = r * nT + t
                            F[key] = F.get(key, ZERO) + coef * val * s
        F = {k: x for k, x in F.items() if x}
        cols.append(Htgt.coords_of_flat(F))
    return Mat.from_columns(Htgt.module.dim, cols)
