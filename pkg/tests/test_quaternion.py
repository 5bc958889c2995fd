import pytest
from hypothesis import given, strategies as st

from isocryst.errors import AlgebraMismatch
from isocryst.padic_core import FieldParams
from isocryst.quaternion import Kind, QuaternionAlgebra, quat_mul, reduced_norm_trace, twist_invariant

PARAMS = [FieldParams(3), FieldParams(5, 2, 1), FieldParams(3, 1, 2)]
small = st.integers(-20, 20)
lpair = st.lists(small, min_size=2, max_size=2)


@pytest.mark.parametrize("params", PARAMS, ids=str)
def test_division_relations(params):
    B = QuaternionAlgebra(params, Kind.DIVISION)
    R = B.field_ring
    Pi = B.Pi()
    assert Pi * Pi == B.scalar(-R.pi)
    a = B.L([1, 2])
    x = B.element(a)
    assert Pi * x == B.element(0, a.conj())
    assert B.element(B.sqrt_eps) * B.element(B.sqrt_eps) == B.scalar(R.nonresidue)


@pytest.mark.parametrize("params", PARAMS, ids=str)
def test_division_norm_multiplicative(params):
    B = QuaternionAlgebra(params, Kind.DIVISION)

    @given(lpair, lpair, lpair, lpair)
    def check(a, b, c, d):
        x, y = B.element(a, b), B.element(c, d)
        nx, tx = reduced_norm_trace(x)
        ny, _ = reduced_norm_trace(y)
        assert reduced_norm_trace(x * y)[0] == nx * ny
        assert x * x.star() == B.scalar(nx)
        assert x + x.star() == B.scalar(tx)
        assert (x * y).star() == y.star() * x.star()

    check()


@pytest.mark.parametrize("params", PARAMS, ids=str)
def test_matrix_involution(params):
    B = QuaternionAlgebra(params, Kind.MATRIX)

    @given(st.lists(small, min_size=4, max_size=4), st.lists(small, min_size=4, max_size=4))
    def check(u, v):
        x, y = B.matrix([u[:2], u[2:]]), B.matrix([v[:2], v[2:]])
        n, t = reduced_norm_trace(x)
        assert x * x.star() == B.scalar(n)
        assert (x * y).star() == y.star() * x.star()
        assert x.star().star() == x
        assert t == x.data[0][0] + x.data[1][1]

    check()


def test_division_is_division():
    # Nrd is anisotropic on units of the form a + b*Pi: Nrd(x) = 0 only for x = 0
    B = QuaternionAlgebra(FieldParams(3), Kind.DIVISION)
    for a in range(-4, 5):
        for b in range(-4, 5):
            for c in range(-2, 3):
                x = B.element([a, b], [c, 0])
                if not x.is_zero():
                    assert not reduced_norm_trace(x)[0].is_zero()


def test_pure_quaternions():
    B = QuaternionAlgebra(FieldParams(5), Kind.DIVISION)
    assert B.Pi().is_pure()
    assert B.element(B.sqrt_eps).is_pure()
    assert not B.one().is_pure()


def test_mismatch():
    B1 = QuaternionAlgebra(FieldParams(3), Kind.DIVISION)
    B2 = QuaternionAlgebra(FieldParams(3), Kind.MATRIX)
    with pytest.raises(AlgebraMismatch):
        quat_mul(B1.one(), B2.one())
    with pytest.raises(AlgebraMismatch):
        B2.element(1)


@pytest.mark.parametrize(
    "params,kind,expected",
    [
        (FieldParams(3), "division", "matrix"),
        (FieldParams(3), "matrix", "division"),
        (FieldParams(3, 2, 1), "division", "division"),
        (FieldParams(3, 1, 2), "matrix", "matrix"),
    ],
)
def test_twist_invariant(params, kind, expected):
    assert twist_invariant(QuaternionAlgebra(params, kind)).kind == Kind(expected)
