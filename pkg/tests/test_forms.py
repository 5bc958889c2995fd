import itertools

import pytest
from hypothesis import given, strategies as st

from isocryst.errors import ShapeInfeasible, ZeroEntry
from isocryst.forms import (
    classify_quadratic,
    classify_skewhermitian,
    enumerate_quad_classes,
    enumerate_skewherm_classes,
    pure_quaternion_reps,
    quad_class_representatives,
    skewherm_class_representatives,
    standard_selfdual_lattice,
)
from isocryst.padic_core import FieldParams, SquareClass, square_class
from isocryst.quaternion import Kind, QuaternionAlgebra

from oracles import TruncatedLocalRing, binary_isometric, to_library

FIELDS = [FieldParams(3), FieldParams(5), FieldParams(7), FieldParams(3, 2, 1), FieldParams(5, 1, 2)]


@pytest.mark.parametrize("params", FIELDS, ids=str)
def test_counts(params):
    assert [len(enumerate_quad_classes(n, params)) for n in range(1, 6)] == [4, 7, 8, 8, 8]
    assert [len(enumerate_skewherm_classes(n, params)) for n in range(1, 4)] == [3, 4, 4]


@pytest.mark.parametrize("params", FIELDS[:4], ids=str)
def test_representatives_realise_every_class(params):
    for n in range(1, 5):
        reps = quad_class_representatives(n, params)
        assert list(reps) == enumerate_quad_classes(n, params)
        for cls, diag in reps.items():
            assert classify_quadratic(diag) == cls


@pytest.mark.parametrize("params", [FieldParams(3), FieldParams(5, 2, 1)], ids=str)
def test_skewhermitian_representatives(params):
    B = QuaternionAlgebra(params, Kind.DIVISION)
    assert all(x.is_pure() for x in pure_quaternion_reps(B))
    for n in (1, 2, 3):
        reps = skewherm_class_representatives(n, B)
        assert list(reps) == enumerate_skewherm_classes(n, params)
        for cls, gram in reps.items():
            assert classify_skewhermitian(gram) == cls


def test_unary_skewhermitian_misses_minus_one():
    for params in FIELDS:
        R = params.ring()
        classes = {c.disc for c in enumerate_skewherm_classes(1, params)}
        assert square_class(-1, R) not in classes
        assert len(classes) == 3


def test_examples():
    R = FieldParams(3).ring()
    cls = classify_quadratic([R(1), R(-1)])
    assert cls.disc == SquareClass(0, 0) and cls.hasse == 1
    assert classify_quadratic([1, 1, 1], R) == classify_quadratic([1, 1, 4], R)
    with pytest.raises(ZeroEntry):
        classify_quadratic([1, 0], R)


@pytest.mark.parametrize("params", [FieldParams(3), FieldParams(5), FieldParams(3, 2, 1)], ids=str)
def test_classification_properties(params):
    R = params.ring(12)
    nz = st.integers(-60, 60).filter(lambda a: a != 0 and R(a).ord() < 3)

    @given(st.lists(nz, min_size=1, max_size=4), st.randoms(use_true_random=False), st.integers(1, 6))
    def perm_and_squares(entries, rnd, s):
        cls = classify_quadratic(entries, R)
        shuffled = entries[:]
        rnd.shuffle(shuffled)
        assert classify_quadratic(shuffled, R) == cls
        if R(s).is_unit():
            scaled = [x * s * s for x in entries]
            assert classify_quadratic(scaled, R) == cls

    @given(nz, nz)
    def binary_identity(a, b):
        # <a, b> ~ <a + b, ab(a + b)> whenever a + b != 0
        if a + b == 0 or R(a + b).ord() >= 3:
            return
        assert classify_quadratic([a, b], R) == classify_quadratic([a + b, a * b * (a + b)], R)

    perm_and_squares()
    binary_identity()


@pytest.mark.parametrize("p,e,f", [(3, 1, 1), (5, 1, 1), (7, 1, 1), (3, 2, 1), (5, 2, 1), (3, 1, 2)])
def test_binary_classes_against_bruteforce(p, e, f):
    R = FieldParams(p, e, f).ring(4)
    ring = TruncatedLocalRing(p, e, f, R.base.modulus, K=5)
    reps = list(ring.reps().values())
    forms = list(itertools.combinations_with_replacement(range(4), 2))
    lib = {fm: classify_quadratic([to_library(R, reps[i]) for i in fm]) for fm in forms}
    for f1, f2 in itertools.product(forms, forms):
        iso = binary_isometric(ring, tuple(reps[i] for i in f1), tuple(reps[i] for i in f2))
        assert iso == (lib[f1] == lib[f2]), (f1, f2)
    assert len(set(lib.values())) == 7


@pytest.mark.parametrize("shape", [(1, 1), (2, 0), (0, 2)])
def test_standard_lattice_division(shape):
    B = QuaternionAlgebra(FieldParams(3), Kind.DIVISION)
    L = standard_selfdual_lattice(B, shape)
    assert L.is_unimodular() and L.is_compatible()


def test_standard_lattice_division_f2():
    B = QuaternionAlgebra(FieldParams(5, 1, 2), Kind.DIVISION)
    L = standard_selfdual_lattice(B, (1, 2, 1, 0))
    assert L.is_unimodular() and L.is_compatible()


def test_standard_lattice_matrix():
    B = QuaternionAlgebra(FieldParams(3, 1, 2), Kind.MATRIX)
    L = standard_selfdual_lattice(B, (2, 2))
    assert L.is_unimodular() and L.is_compatible()


@pytest.mark.parametrize("shape", [(1, 2, 0, 1), (1,), (-1, 3), (0, 0)])
def test_standard_lattice_infeasible(shape):
    B = QuaternionAlgebra(FieldParams(3, 1, 2), Kind.DIVISION)
    with pytest.raises(ShapeInfeasible):
        standard_selfdual_lattice(B, shape)
