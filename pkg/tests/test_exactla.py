from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alg2.exactla import (
    Mat,
    NoSolution,
    SingularMatrix,
    cokernel,
    format_q,
    inverse,
    is_invertible,
    kernel_basis,
    kron,
    q,
    rank,
    rref,
    solve,
)


def mats(max_rows=4, max_cols=4, lo=-3, hi=3):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)
            .map(lambda rows: Mat.from_rows(rows))))


def test_scalars_are_exact_and_reduced():
    x = q("6/4")
    assert (x.numerator, x.denominator) == (3, 2)
    assert q(Fraction(-1, 3)) * 3 == -1
    assert format_q(q("-10/4")) == "-5/2"
    assert format_q(q(7)) == "7"
    assert q("1/3") + q("2/3") == 1


def test_rref_examples():
    I = Mat.identity(3)
    assert rref(I) == (I, [0, 1, 2])
    assert rref(Mat.from_rows([[1, 2], [2, 4]])) == (Mat.from_rows([[1, 2], [0, 0]]), [0])
    Z = Mat.zeros(2, 3)
    assert rref(Z) == (Z, [])


def test_kernel_examples():
    assert kernel_basis(Mat.identity(4)).dim == 0
    k = kernel_basis(Mat.from_rows([[1, 2], [2, 4]]))
    assert k.dim == 1 and k.contains([-2, 1])
    assert kernel_basis(Mat.zeros(2, 3)).dim == 3


def test_solve_examples():
    rhs = Mat.from_rows([[5], [7]])
    assert solve(Mat.identity(2), rhs) == rhs
    m = Mat.from_rows([[1, 2], [2, 4]])
    x = solve(m, Mat.from_rows([[1], [2]]))
    assert m @ x == Mat.from_rows([[1], [2]])
    with pytest.raises(NoSolution):
        solve(m, Mat.from_rows([[1], [0]]))


def test_cokernel_examples():
    proj, sect = cokernel(Mat.zeros(3, 2))
    assert proj == Mat.identity(3)
    proj, _ = cokernel(Mat.identity(2))
    assert proj.rows == 0
    proj, sect = cokernel(Mat.from_rows([[1], [1]]))
    assert proj.rows == 1 and (proj @ sect).is_identity()
    assert (proj @ Mat.from_rows([[1], [1]])).is_zero()


def test_kron_examples():
    a = Mat.from_rows([[1, 2], [3, 4]])
    assert kron(a, Mat.identity(1)) == a
    assert kron(Mat.identity(2), Mat.identity(3)) == Mat.identity(6)
    assert kron(Mat.from_rows([[2]]), Mat.from_rows([[3]])) == Mat.from_rows([[6]])
    # index of (i, j) is i * dim2 + j
    e = kron(Mat.from_rows([[0], [1]]), Mat.from_rows([[0], [0], [1]]))
    assert e.col(0)[1 * 3 + 2] == 1


def test_inverse_and_singular():
    a = Mat.from_rows([[2, 1], [1, 1]])
    assert (inverse(a) @ a).is_identity()
    with pytest.raises(SingularMatrix):
        inverse(Mat.from_rows([[1, 2], [2, 4]]))
    assert not is_invertible(Mat.zeros(2, 2))


@settings(max_examples=60, deadline=None)
@given(mats(5, 5))
def test_rank_nullity(m):
    assert rank(m) + kernel_basis(m).dim == m.cols
    for row in kernel_basis(m).basis.tolist():
        assert (m @ Mat.column(row)).is_zero()


@settings(max_examples=60, deadline=None)
@given(mats(5, 4))
def test_cokernel_laws(m):
    proj, sect = cokernel(m)
    assert (proj @ m).is_zero()
    assert (proj @ sect).is_identity()
    assert proj.rows == m.rows - rank(m)


@settings(max_examples=40, deadline=None)
@given(mats(3, 3), mats(3, 3), mats(3, 3), mats(3, 3))
def test_kron_mixed_product(a, b, c, d):
    if a.cols == c.rows and b.cols == d.rows:
        assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)


@settings(max_examples=40, deadline=None)
@given(mats(4, 4))
def test_solve_recovers_consistent_rhs(m):
    x0 = Mat.from_rows([[i + 1] for i in range(m.cols)])
    rhs = m @ x0
    assert m @ solve(m, rhs) == rhs


@settings(max_examples=30, deadline=None)
@given(mats(4, 4))
def test_results_are_reproducible(m):
    assert rref(m) == rref(m) and kernel_basis(m) == kernel_basis(m)
