from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crossalg.errors import DimensionMismatch, DivisionByZero, MixedScalarFields, NoSolution, SchemaError
from crossalg.exact_arith import (GAUSSIAN, CyclotomicField, CyclotomicScalar, EchelonSpan,
                                  GaussianRational, Matrix, canonical_basis, cyclotomic_polynomial,
                                  format_scalar, kernel, mat_vec, parse_scalar, rank,
                                  scalar_from_json, scalar_to_json, solve_linear, span_equal,
                                  span_membership)

G = GaussianRational
ZETA = G(Fraction(3, 5), Fraction(4, 5))

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)
gaussians = st.builds(G, small, small)


# --- scalars ----------------------------------------------------------------

def test_unimodular_times_conjugate_is_one():
    assert ZETA * ZETA.conjugate() == 1


def test_inverse_of_zero_raises():
    with pytest.raises(DivisionByZero):
        G(0).inverse()
    with pytest.raises(ZeroDivisionError):
        G(1) / G(0)


def test_default_multiplier_is_not_a_root_of_unity_up_to_64():
    p = G(1)
    for _ in range(64):
        p = p * ZETA
        assert p != 1
        assert p.abs2() == 1


def test_normal_form_and_equality_with_rationals():
    z = G(Fraction(2, 4), Fraction(-6, 8))
    assert (z.re, z.im) == (Fraction(1, 2), Fraction(-3, 4))
    assert G(3) == 3 and G(Fraction(1, 2)) == Fraction(1, 2)
    assert hash(G(Fraction(1, 2))) == hash(Fraction(1, 2))
    assert G(0, 1) ** 2 == -1
    assert ZETA ** -1 == ZETA.conjugate()


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0
    if a:
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@given(gaussians)
def test_conjugation_is_an_involution(a):
    assert a.conjugate().conjugate() == a
    assert (a * a.conjugate()).im == 0
    assert a.abs2() == a.re ** 2 + a.im ** 2


@pytest.mark.parametrize('text, value', [
    ('3/5+4/5*i', ZETA),
    ('-i', G(0, -1)),
    ('i', G(0, 1)),
    ('4/5*i', G(0, Fraction(4, 5))),
    ('2', G(2)),
    ('-1/3-2*i', G(Fraction(-1, 3), -2)),
])
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value
    assert parse_scalar(format_scalar(value)) == value


def test_parse_scalar_rejects_garbage():
    with pytest.raises(SchemaError):
        parse_scalar('3+')
    with pytest.raises(SchemaError):
        parse_scalar('')


@given(gaussians)
def test_format_parse_round_trip(z):
    assert parse_scalar(format_scalar(z)) == z
    assert scalar_from_json(scalar_to_json(z)) == z


# --- cyclotomic -------------------------------------------------------------

@pytest.mark.parametrize('n, coeffs', [
    (1, (-1, 1)),
    (2, (1, 1)),
    (4, (1, 0, 1)),
    (8, (1, 0, 0, 0, 1)),
    (6, (1, -1, 1)),
    (12, (1, 0, -1, 0, 1)),
])
def test_cyclotomic_polynomial(n, coeffs):
    assert cyclotomic_polynomial(n) == coeffs


@pytest.mark.parametrize('n', [1, 2, 3, 4, 5, 6, 8, 9, 12])
def test_root_has_exact_order(n):
    F = CyclotomicField(n)
    w = F.root()
    assert w ** n == 1
    for d in range(1, n):
        if n % d == 0:
            assert w ** d != 1


@pytest.mark.parametrize('n', [3, 5, 8])
def test_cyclotomic_inverse_and_conjugate(n):
    F = CyclotomicField(n)
    x = F.root() + F.coerce(2) + F.root(3)
    assert x * x.inverse() == F.one
    assert F.root().conjugate() == F.root(-1)
    assert F.root(-1) * F.root(1) == F.one
    with pytest.raises(DivisionByZero):
        F.zero.inverse()


def test_mixed_fields_raise():
    with pytest.raises(MixedScalarFields):
        CyclotomicField(8).root() + CyclotomicField(5).root()
    with pytest.raises(MixedScalarFields):
        CyclotomicField(8).root() * ZETA
    with pytest.raises(MixedScalarFields):
        rank([[CyclotomicField(4).one, ZETA]])


def test_cyclotomic_json_round_trip():
    x = CyclotomicField(8).root(3) * Fraction(2, 7)
    assert scalar_from_json(scalar_to_json(x)) == x
    assert isinstance(x, CyclotomicScalar)


# --- linear algebra ---------------------------------------------------------

def test_kernel_examples():
    assert kernel(Matrix.identity(3).to_rows()) == []
    assert len(kernel(Matrix.zeros(2, 3).to_rows())) == 3
    (v,) = kernel([[1, 1, 0], [0, 1, 1]])
    assert mat_vec([[1, 1, 0], [0, 1, 1]], v) == (0, 0)
    assert span_equal([v], [(1, -1, 1)], 3)


def test_span_membership_examples():
    e1, e2 = (1, 0), (0, 1)
    assert span_membership([e1], e1) == (True, (1,))
    assert span_membership([e1], e2)[0] is False
    ok, c = span_membership([(1, 1), (1, -1)], (3, 1))
    assert ok and tuple(c) == (2, 1)
    with pytest.raises(DimensionMismatch):
        span_membership([(1, 0, 0)], (1, 0))


def test_solve_linear_examples():
    assert solve_linear(Matrix.identity(2).to_rows(), (5, 7)) == (5, 7)
    with pytest.raises(NoSolution):
        solve_linear(Matrix.zeros(2, 2).to_rows(), (1, 0))
    assert solve_linear([[1, 1], [1, -1]], (3, 1)) == (2, 1)
    with pytest.raises(DimensionMismatch):
        solve_linear([[1, 1]], (1, 2))


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(gaussians, min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_nullity(M):
    cols = len(M[0])
    K = kernel(M)
    assert len(K) + rank(M) == cols
    for v in K:
        assert all(x == 0 for x in mat_vec(M, v))
    assert rank(K) == len(K) if K else True


@settings(max_examples=60, deadline=None)
@given(matrices, st.data())
def test_solve_linear_is_exact(M, data):
    x = data.draw(st.lists(gaussians, min_size=len(M[0]), max_size=len(M[0])))
    b = mat_vec(M, x)
    y = solve_linear(M, b)
    assert mat_vec(M, y) == b


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=6))
def test_echelon_span_matches_rref(vectors):
    vectors = [tuple(GAUSSIAN.coerce(x) for x in v) for v in vectors]
    span = EchelonSpan(4)
    for v in vectors:
        span.add(v)
    assert span.basis() == canonical_basis(vectors, 4)
    assert all(v in span for v in vectors)


def test_matrix_shape_is_checked():
    with pytest.raises(DimensionMismatch):
        Matrix(2, 2, (1, 2, 3))
    with pytest.raises(DimensionMismatch):
        Matrix.from_rows([[1, 2], [3]])
    M = Matrix.from_rows([[1, 2], [3, 4]])
    assert (M @ Matrix.identity(2)) == M
    assert M.transpose().to_rows() == [(1, 3), (2, 4)]
