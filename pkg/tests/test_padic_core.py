from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from isocryst.errors import NonUnit, ZeroArgument
from isocryst.padic_core import FieldParams, SquareClass, UnramifiedRing, hilbert_symbol, square_class

FIELDS = [FieldParams(3), FieldParams(5, 2, 1), FieldParams(3, 1, 2), FieldParams(7, 3, 2), FieldParams(3, 2, 2)]


def elements(R, nonzero=False):
    digit = st.integers(0, R.M - 1)
    coeffs = st.tuples(*[st.tuples(*[digit] * R.f)] * R.e)
    s = coeffs.map(R.make)
    return s.filter(lambda x: not x.is_zero()) if nonzero else s


@pytest.mark.parametrize("params", FIELDS, ids=str)
def test_pi_to_the_e_is_minus_p(params):
    R = params.ring(5)
    assert R.pi ** params.e == R(-params.p)
    assert R.pi.ord() == 1
    assert R(params.p).ord() == params.e


@pytest.mark.parametrize("params", FIELDS, ids=str)
def test_ring_axioms(params):
    R = params.ring(4)

    @given(elements(R), elements(R), elements(R))
    def check(a, b, c):
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a - a == R.zero

    check()


@pytest.mark.parametrize("params", FIELDS, ids=str)
def test_valuation_and_division(params):
    R = params.ring(5)

    @given(elements(R, nonzero=True), st.integers(0, 3))
    def check(a, k):
        b = a * R.pi ** k
        if not b.is_zero():
            assert b.ord() == a.ord() + k or b.ord() == b.prec
            assert (b / R.pi ** k) == a or a.ord() + k >= R.cap

    check()


@pytest.mark.parametrize("params", FIELDS, ids=str)
def test_unit_inverse(params):
    R = params.ring(4)

    @given(elements(R, nonzero=True))
    def check(a):
        if a.is_unit():
            assert a * a.inverse() == R.one
        else:
            with pytest.raises(NonUnit):
                a.inverse()

    check()


@pytest.mark.parametrize("p,f", [(3, 2), (5, 3), (3, 4)])
def test_frobenius_has_order_f(p, f):
    R = FieldParams(p, 2, f).ring(4)
    x = R((1, 2) + (0,) * (f - 2)) + R.pi * R((2,) + (1,) * (f - 1))
    assert x.frobenius(f) == x
    assert x.frobenius() != x
    assert (x * x).frobenius() == x.frobenius() * x.frobenius()
    # Frobenius reduces to the p-th power on residues
    rf = R.residue_field
    assert x.frobenius().residue() == rf.pow(x.residue(), p)


def test_unramified_frobenius_inverse():
    U = UnramifiedRing(5, 3, 5)
    a = (1, 2, 3)
    assert U.frob_inv(U.frob(a)) == a
    assert U.frob(a, 3) == a


def test_fraction_coercion():
    R = FieldParams(5).ring(4)
    assert R(Fraction(1, 2)) * R(2) == R.one
    with pytest.raises(NonUnit):
        R(Fraction(1, 5))


@pytest.mark.parametrize("params", [FieldParams(3), FieldParams(5, 2, 1), FieldParams(3, 1, 2)], ids=str)
def test_square_class_reps_are_distinct(params):
    R = params.ring()
    classes = [square_class(x) for x in R.square_class_reps()]
    assert classes == SquareClass.all()
    assert square_class(R(4)) == SquareClass(0, 0)


def test_square_class_of_minus_one():
    # -1 is a square iff q = 1 mod 4
    assert square_class(-1, FieldParams(5).ring()).is_identity
    assert not square_class(-1, FieldParams(3).ring()).is_identity
    assert square_class(-1, FieldParams(3, 1, 2).ring()).is_identity


@pytest.mark.parametrize("params", [FieldParams(3), FieldParams(5), FieldParams(3, 2, 1), FieldParams(7, 1, 2)], ids=str)
def test_hilbert_symbol_properties(params):
    R = params.ring(4)
    reps = R.square_class_reps()
    for a in reps:
        assert hilbert_symbol(a, -a) == 1
        assert hilbert_symbol(a, a) == hilbert_symbol(a, R(-1))
        for b in reps:
            assert hilbert_symbol(a, b) == hilbert_symbol(b, a)
            for c in reps:
                assert hilbert_symbol(a, b * c) == hilbert_symbol(a, b) * hilbert_symbol(a, c)
    # nondegenerate: every nontrivial class pairs to -1 with something
    for a in reps[1:]:
        assert any(hilbert_symbol(a, b) == -1 for b in reps)


@given(st.integers(2, 3 ** 4 - 1))
def test_hilbert_steinberg(a):
    R = FieldParams(3).ring(6)
    b = 1 - a
    if a % 3 == 0 and b % 3 == 0 or b == 0:
        return
    assert hilbert_symbol(a, b, R) == 1


def test_hilbert_known_values():
    # (p, u) = -1 for a nonresidue unit u; (p, p) = (p, -1)
    R = FieldParams(5).ring()
    assert hilbert_symbol(5, 2, R) == -1
    assert hilbert_symbol(5, 5, R) == hilbert_symbol(5, -1, R) == 1
    R3 = FieldParams(3).ring()
    assert hilbert_symbol(3, 3, R3) == -1


def test_zero_argument():
    with pytest.raises(ZeroArgument):
        hilbert_symbol(0, 1, FieldParams(3))


def test_bad_params():
    with pytest.raises(ValueError):
        FieldParams(2)
    with pytest.raises(ValueError):
        FieldParams(9)
