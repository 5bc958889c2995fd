import numpy as np
import pytest
from hypothesis import given, strategies as st

from isocryst.errors import PrecisionExhausted
from isocryst.linalg import (
    adjugate,
    charpoly,
    columns_in_span,
    det,
    elementary_divisors,
    identity,
    inverse,
    mat,
    mat_equal,
    matmul,
    mscale,
    newton_slopes,
    spans_equal,
)
from isocryst.padic_core import FieldParams

R = FieldParams(3).ring(8)  # Z/3^8, pi = -3
small = st.integers(-40, 40)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


@given(square(3))
def test_det_matches_numpy(rows):
    want = round(np.linalg.det(np.array(rows, dtype=float)))
    assert det(mat(R, rows)) == R(int(want))


@given(square(3), square(3))
def test_det_multiplicative(a, b):
    A, B = mat(R, a), mat(R, b)
    assert det(matmul(A, B)) == det(A) * det(B)


@given(square(3))
def test_adjugate_identity(rows):
    A = mat(R, rows)
    assert mat_equal(matmul(A, adjugate(A)), mscale(det(A), identity(R, 3)))


@given(square(2))
def test_cayley_hamilton_2x2(rows):
    A = mat(R, rows)
    c0, c1, c2 = charpoly(A, R.zero, R.one)
    A2 = matmul(A, A)
    lhs = tuple(
        tuple(A2[i][j] + c1 * A[i][j] + (c0 if i == j else R.zero) for j in range(2)) for i in range(2)
    )
    assert c2 == R.one
    assert all(x.is_zero() for r in lhs for x in r)


def test_inverse_of_unimodular():
    A = mat(R, [[1, 2, 3], [0, 1, 4], [5, 6, 0]])  # det = 1
    assert mat_equal(matmul(A, inverse(A)), identity(R, 3))


def test_elementary_divisors_examples():
    assert elementary_divisors(mat(R, [[0, 3], [1, 0]])) == [0, 1]
    assert elementary_divisors(mat(R, [[3, 0], [0, 9]])) == [1, 2]
    # Smith form of [[3, 1], [0, 3]] is diag(1, 9)
    assert elementary_divisors(mat(R, [[3, 1], [0, 3]])) == [0, 2]


@given(square(3))
def test_elementary_divisors_sum_to_det(rows):
    A = mat(R, rows)
    d = det(A)
    if d.is_zero():
        return
    assert sum(elementary_divisors(A)) == d.ord()


@given(square(2), st.sampled_from([[[1, 1], [0, 1]], [[2, 1], [1, 1]], [[0, 1], [1, 0]]]))
def test_elementary_divisors_unimodular_invariance(rows, u):
    A, U = mat(R, rows), mat(R, u)
    if det(A).is_zero():
        return
    assert elementary_divisors(matmul(U, A)) == elementary_divisors(A) == elementary_divisors(matmul(A, U))


def test_singular_refused():
    with pytest.raises(PrecisionExhausted):
        elementary_divisors(mat(R, [[1, 2], [2, 4]]))


def test_spans():
    A = mat(R, [[3, 0], [0, 1]])
    assert columns_in_span(A, mat(R, [[9, 3], [1, 0]]))
    assert not columns_in_span(A, mat(R, [[1, 0], [0, 1]]))
    assert spans_equal(A, mat(R, [[3, 3], [1, 2]]))


def test_newton_slopes():
    # (t - 3)(t - 9)(t - 1): root valuations 0, 1, 2
    pi = R.pi
    coeffs = [R(-27), R(39), R(-13), R.one]
    assert newton_slopes(coeffs) == [(0, 1), (1, 1), (2, 1)]
    # t^2 - 3 has two roots of valuation 1/2
    from fractions import Fraction

    assert newton_slopes([R(-3), R.zero, R.one]) == [(Fraction(1, 2), 2)]
    assert pi.ord() == 1
