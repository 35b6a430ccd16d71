import pytest
from hypothesis import given, strategies as st

from ctcompanion.linalg import bareiss_det
from ctcompanion.root_system import (
    CartanDatum,
    bilinear,
    canonical_order,
    cartan_datum,
    classical_positive_count,
    dynkin_edges,
    format_root,
    height,
    is_root,
    reflect,
    reflection_orbit,
    root_system,
    simple_root,
)
from oracles import cartan, reflection_closure

ALL_TYPES = [("A", n) for n in range(1, 9)] + [("D", n) for n in range(4, 9)] + [("E", n) for n in (6, 7, 8)]

D4_ROOTS = {
    (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
    (1, 0, 1, 0), (0, 1, 1, 0), (0, 0, 1, 1), (1, 1, 1, 0),
    (1, 0, 1, 1), (0, 1, 1, 1), (1, 1, 1, 1), (1, 1, 2, 1),
}


@pytest.mark.parametrize("t,n", ALL_TYPES)
def test_positive_roots_match_reflection_oracle(t, n):
    rs = root_system(t, n)
    oracle = reflection_closure(cartan(n, dynkin_edges(t, n)))
    assert set(rs.positive_roots) == {r for r in oracle if all(x >= 0 for x in r)}
    assert len(oracle) == 2 * len(rs.positive_roots)
    assert len(rs.positive_roots) == classical_positive_count(t, n)


@pytest.mark.parametrize("t,n,count", [("A", 2, 3), ("D", 4, 12), ("E", 6, 36), ("E", 7, 63), ("E", 8, 120)])
def test_counts(t, n, count):
    assert len(root_system(t, n).positive_roots) == count


def test_small_cases():
    assert list(root_system("A", 2).positive_roots) == [(0, 1), (1, 0), (1, 1)]
    rs = root_system("D", 4)
    assert set(rs.positive_roots) == D4_ROOTS
    assert rs.highest_root() == (1, 1, 2, 1)


@pytest.mark.parametrize("t,n", ALL_TYPES)
def test_cartan_is_positive_definite(t, n):
    c = cartan_datum(t, n).cartan
    for k in range(1, n + 1):
        assert bareiss_det([row[:k] for row in c[:k]]) > 0


@pytest.mark.parametrize("t,n", ALL_TYPES)
def test_closed_under_reflections(t, n):
    rs = root_system(t, n)
    pos = set(rs.positive_roots)
    for a in rs.positive_roots:
        for i in range(n):
            b = reflect(rs.datum, a, i)
            assert b in pos or tuple(-x for x in b) in pos


def test_reflection_orbit_agrees():
    d = cartan_datum("E", 6)
    assert {r for r in reflection_orbit(d) if all(x >= 0 for x in r)} == set(root_system("E", 6).positive_roots)


def test_pairings():
    d = cartan_datum("D", 4)
    for i in range(4):
        e = simple_root(4, i)
        assert bilinear(d, e, e) == 2
    assert bilinear(d, (0, 1, 1, 0), (0, 0, 1, 1)) == 0
    assert bilinear(d, (0, 1, 1, 0), (0, 0, 1, 0)) == 1


def test_reflections():
    d = cartan_datum("D", 4)
    assert reflect(d, (1, 0, 0, 0), 0) == (-1, 0, 0, 0)
    assert reflect(d, (1, 0, 0, 0), 2) == (1, 0, 1, 0)


@given(st.sampled_from(ALL_TYPES).flatmap(lambda tn: st.tuples(st.just(tn), st.integers(0, 10_000))))
def test_reflection_involution(arg):
    (t, n), seed = arg
    rs = root_system(t, n)
    a = rs.positive_roots[seed % len(rs.positive_roots)]
    i = seed % n
    assert reflect(rs.datum, reflect(rs.datum, a, i), i) == a


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_membership_is_norm_two(v):
    d = cartan_datum("D", 4)
    assert is_root(d, v) == (bilinear(d, v, v) == 2)
    if is_root(d, v):
        assert all(x >= 0 for x in v) or all(x <= 0 for x in v)


def test_canonical_order():
    roots = root_system("A", 3).positive_roots
    assert list(roots) == canonical_order(reversed(roots))
    assert [height(r) for r in roots] == sorted(height(r) for r in roots)


def test_invalid_data_rejected():
    with pytest.raises(ValueError):
        cartan_datum("D", 3)
    with pytest.raises(ValueError):
        cartan_datum("E", 9)
    with pytest.raises(ValueError):
        CartanDatum("A", 2, ((2, -1), (0, 2)))
    with pytest.raises(ValueError):
        CartanDatum("A", 3, ((2, -1, -1), (-1, 2, -1), (-1, -1, 2)))


def test_json_and_format():
    data = root_system("A", 2).to_json()
    assert data == {"type": "A", "rank": 2, "positive_roots": [[0, 1], [1, 0], [1, 1]]}
    assert format_root((1, 1, 2, 1)) == "a1+a2+2a3+a4"


def test_vertex_labelling():
    assert dynkin_edges("A", 3) == [(0, 1), (1, 2)]
    assert dynkin_edges("D", 4) == [(0, 2), (1, 2), (2, 3)]
    # D_n fork at n-2 (1-based), E_n with node 2 hanging off node 4
    assert sorted(dynkin_edges("D", 6)) == [(0, 1), (1, 2), (2, 3), (3, 4), (3, 5)]
    assert sorted(dynkin_edges("E", 6)) == [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5)]
