import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alg2.algebra import (
    Algebra,
    InvalidAlgebra,
    NotSemisimple,
    algebra_tensor,
    check_certificate,
    field,
    from_structure_constants,
    group_algebra_elementary_2,
    is_semisimple,
    matrix_algebra,
    opposite,
    product,
    strip_certificate,
    truncated_polynomial,
    validate,
    wedderburn,
)
from alg2.exactla import q
from alg2.serialize import algebra_from_json, algebra_to_json

SAMPLES = {
    "Q": field(),
    "M2": matrix_algebra(2),
    "M3": matrix_algebra(3),
    "M2xQ": product(matrix_algebra(2), field()),
    "QZ2": group_algebra_elementary_2(1),
    "QZ2^2": group_algebra_elementary_2(2),
}


def test_validate_examples():
    assert validate(matrix_algebra(2)) == []
    assert validate(field()) == []
    bad = matrix_algebra(2).mult_dense()
    bad[0][0][0] += 1
    A = Algebra(4, tuple(tuple(tuple((k, q(v)) for k, v in enumerate(c) if v) for c in r) for r in bad),
                matrix_algebra(2).unit)
    assert any(d[0] == "assoc" for d in validate(A))
    with pytest.raises(InvalidAlgebra):
        from_structure_constants(bad, matrix_algebra(2).unit)


def test_constructor_certificates():
    A = matrix_algebra(2)
    assert A.dim == 4 and A.certificate.dims == (2,)
    P = product(matrix_algebra(2), matrix_algebra(1))
    assert P.dim == 5 and P.certificate.dims == (2, 1)
    G = group_algebra_elementary_2(1)
    assert G.dim == 2 and G.certificate.dims == (1, 1)
    idems = {b.idempotent for b in G.certificate.blocks}
    assert idems == {(q("1/2"), q("1/2")), (q("1/2"), q("-1/2"))}
    assert from_structure_constants(A.mult_dense(), A.unit).certificate is None


@pytest.mark.parametrize("name", SAMPLES)
def test_certificates_are_sound(name):
    A = SAMPLES[name]
    assert check_certificate(A) == []
    assert sum(d * d for d in A.certificate.dims) == A.dim


def test_opposite():
    A = matrix_algebra(2)
    O = opposite(A)
    assert opposite(O) is A
    assert validate(O) == []
    n = A.dim
    assert all(O.coefficient(i, j, k) == A.coefficient(j, i, k)
               for i in range(n) for j in range(n) for k in range(n))
    G = group_algebra_elementary_2(1)
    assert opposite(G) == G
    assert check_certificate(O) == []


def test_semisimplicity():
    for n in (1, 2, 3):
        assert is_semisimple(matrix_algebra(n))[0]
    ok, rad = is_semisimple(truncated_polynomial(2))
    assert not ok and rad.dim == 1 and rad.contains([0, 1])
    assert is_semisimple(product(matrix_algebra(2), group_algebra_elementary_2(1)))[0]
    for A in SAMPLES.values():
        assert is_semisimple(A)[0] == is_semisimple(opposite(A))[0]


def test_wedderburn_recovers_blocks():
    P = strip_certificate(product(matrix_algebra(2), field()))
    cert = wedderburn(P, seed=3)
    assert sorted(cert.dims) == [1, 2]
    idem = {b.dim: b.idempotent for b in cert.blocks}
    assert idem[2] == tuple(q(x) for x in (1, 0, 0, 1, 0))
    assert idem[1] == tuple(q(x) for x in (0, 0, 0, 0, 1))
    assert check_certificate(P, cert) == []
    G = wedderburn(strip_certificate(group_algebra_elementary_2(1)))
    assert {b.idempotent for b in G.blocks} == {(q("1/2"), q("1/2")), (q("1/2"), q("-1/2"))}
    with pytest.raises(NotSemisimple):
        wedderburn(truncated_polynomial(2))


def test_wedderburn_is_deterministic():
    P = strip_certificate(product(matrix_algebra(2), group_algebra_elementary_2(1)))
    assert wedderburn(P, seed=5) == wedderburn(P, seed=5)


def test_algebra_tensor():
    T = algebra_tensor(matrix_algebra(2), matrix_algebra(3))
    assert T.dim == 36 and T.certificate.dims == (6,)
    assert validate(T) == []
    A = product(matrix_algebra(2), field())
    T1 = algebra_tensor(A, field())
    assert T1.table == A.table and T1.unit == A.unit


@pytest.mark.parametrize("name", SAMPLES)
def test_json_round_trip(name):
    A = SAMPLES[name]
    data = json.loads(json.dumps(algebra_to_json(A)))
    B = algebra_from_json(data)
    assert B == A and B.certificate == A.certificate and B.label == A.label
    assert algebra_to_json(B) == data


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from(["Q", "M2", "QZ2"]), min_size=1, max_size=3))
def test_products_stay_valid(names):
    A = SAMPLES[names[0]]
    for n in names[1:]:
        A = product(A, SAMPLES[n])
    assert validate(A) == []
    assert check_certificate(A) == []
    assert opposite(opposite(A)) is A
