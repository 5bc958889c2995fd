import json

import pytest
from hypothesis import given, strategies as st

from isocryst.dieudonne import build_matrix_lie_type, build_superspecial_division, verify
from isocryst.errors import SearchSpaceTooLarge
from isocryst.local_model import (
    RAMIFIED,
    UNRAMIFIED,
    ChainRing,
    Hermite,
    ReducedLattice,
    classify_orbits,
    enumerate_points,
    expected_points,
    hermite_forms,
    run_local_model,
    search_size,
)
from isocryst.padic_core import FieldParams

from oracles import SmallField, local_model_bruteforce, point_to_kspace


def lattice(p, e, ramified):
    return ReducedLattice(FieldParams(p, e, 1), RAMIFIED if ramified else UNRAMIFIED)


# -- the chain ring -----------------------------------------------------------


@pytest.mark.parametrize("q,e", [(3, 2), (5, 3), (9, 2)])
def test_chain_ring_axioms(q, e):
    R = ChainRing(q, e)
    els = list(R.polys_below(e))
    assert len(els) == q ** e
    sample = els[:: max(1, len(els) // 12)]
    for a in sample:
        assert R.add(a, R.neg(a)) == R.zero
        for b in sample:
            assert R.mul(a, b) == R.mul(b, a)
            assert R.ord(R.mul(a, b)) == min(e, R.ord(a) + R.ord(b))
    for u in sample:
        if R.ord(u) == 0:
            assert R.mul(u, R.unit_inverse(u)) == R.one
    assert R.pi_pow(e) == R.zero


@pytest.mark.parametrize("q,e", [(3, 1), (3, 2), (5, 2), (9, 2)])
def test_hermite_forms_count(q, e):
    R = ChainRing(q, e)
    forms = list(hermite_forms(R))
    assert len(forms) == search_size(q, e)
    # rank-e submodules of R^2 with the generator-matrix parametrisation
    assert len(forms) == sum(q ** a for a in range(e + 1))
    assert len({(h.a, h.b, h.x) for h in forms}) == len(forms)


# -- the point sets -----------------------------------------------------------


@pytest.mark.parametrize("ramified", [False, True], ids=["unramified", "ramified"])
@pytest.mark.parametrize("q,e", [(q, e) for q in (3, 5, 9) for e in (1, 2, 3, 4)])
def test_points_match_closed_form(q, e, ramified):
    p = 3 if q % 3 == 0 else 5
    lat = lattice(p, e, ramified)
    pts = enumerate_points(lat, q)
    key = lambda parts: [(h.a, h.b, h.x) for h in parts]
    assert sorted(map(key, (pt.parts for pt in pts))) == sorted(map(key, expected_points(lat, q)))
    assert len(pts) == (1 if ramified else e + 1)


@pytest.mark.parametrize("ramified", [False, True], ids=["unramified", "ramified"])
@pytest.mark.parametrize("q,e", [(3, 1), (3, 2), (5, 1), (5, 2)])
def test_points_match_bruteforce(q, e, ramified):
    """Raw k-subspace search in k^{2e} gives exactly the same subspaces."""
    bf = local_model_bruteforce(q, e, ramified)
    pts = enumerate_points(lattice(q, e, ramified), q)
    F, R = SmallField(q), ChainRing(q, e)
    mine = sorted(tuple(point_to_kspace(F, e, h.generators(R)) for h in pt.parts) for pt in pts)
    assert mine == sorted(bf)


@pytest.mark.parametrize("ramified", [False, True], ids=["unramified", "ramified"])
@pytest.mark.parametrize("e", [1, 2])
def test_points_count_bruteforce_q9(e, ramified):
    assert len(local_model_bruteforce(9, e, ramified)) == len(enumerate_points(lattice(3, e, ramified), 9))


# -- orbits and Lie types ------------------------------------------------------


@pytest.mark.parametrize("e", [1, 2, 3, 4])
def test_unramified_orbits(e):
    pts = enumerate_points(lattice(3, e, False), 3)
    assert sorted(pt.lie_type for pt in pts) == [(a, e - a) for a in range(e + 1)]
    orbits = classify_orbits(pts, UNRAMIFIED)
    assert [o.lie_type for o in orbits] == [(a, e - a) for a in range(e // 2 + 1)]
    assert sum(len(o.members) for o in orbits) == e + 1


@pytest.mark.parametrize("e", [1, 2, 3, 4])
def test_ramified_single_point(e):
    pts = enumerate_points(lattice(5, e, True), 5)
    (pt,) = pts
    c = e // 2
    assert pt.lie_type == (c, e - c)
    assert len(classify_orbits(pts, RAMIFIED)) == 1


@pytest.mark.parametrize("e", [1, 2, 3])
def test_lie_types_agree_with_dieudonne(e):
    """Unramified points realise exactly the Lie types of the matrix-kind modules."""
    P = FieldParams(3, e, 1)
    pts = enumerate_points(lattice(3, e, False), 3)
    measured = set()
    for a in range(e + 1):
        rep = verify(build_matrix_lie_type(P, [(a, e - a)]))
        measured.add(tuple(rep.lie_type[0]))
    assert {tuple(sorted(pt.lie_type)) for pt in pts} == measured


@pytest.mark.parametrize("e", [1, 2, 3])
def test_ramified_lie_type_agrees_with_superspecial(e):
    (pt,) = enumerate_points(lattice(3, e, True), 3)
    rep = verify(build_superspecial_division(FieldParams(3, e, 1)))
    assert pt.lie_type == (e // 2, e - e // 2)
    assert all(tuple(x) == pt.lie_type for x in rep.lie_type)


@given(st.sampled_from([3, 5, 9]), st.integers(1, 3), st.booleans())
def test_points_are_isotropic_and_stable(q, e, ramified):
    p = 3 if q % 3 == 0 else 5
    lat = lattice(p, e, ramified)
    R = ChainRing(q, e, p)
    for pt in enumerate_points(lat, q):
        for h in pt.parts:
            assert h.a + h.b == e
            g1, g2 = h.generators(R)
            assert h.contains(R, g1) and h.contains(R, g2)
            # closed under pi
            shifted = tuple(R.mul(R.pi_pow(1), c) for c in g1)
            assert h.contains(R, shifted) if e > 1 else True


# -- guard and output ----------------------------------------------------------


def test_search_space_guard():
    with pytest.raises(SearchSpaceTooLarge):
        enumerate_points(lattice(3, 15, False), 3)
    assert search_size(3, 15) > 10 ** 7 > search_size(3, 14)


def test_run_local_model_json():
    doc = json.loads(json.dumps(run_local_model(FieldParams(3, 2, 1), False, 3)))
    assert doc["schema"] == "isocryst/1"
    assert doc["kind"] == "unramified" and doc["q"] == 3
    assert len(doc["points"]) == 3
    assert [o["lie_type"] for o in doc["orbits"]] == [[0, 2], [1, 1]]
    doc = run_local_model(FieldParams(3, 3, 1), True, 9)
    assert len(doc["points"]) == 1 and doc["orbits"][0]["lie_type"] == [1, 2]


def test_hermite_json():
    assert Hermite(1, 1, (0, 0)).to_json() is not None
