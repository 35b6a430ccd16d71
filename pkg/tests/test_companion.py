import random

import pytest
from hypothesis import given, strategies as st

from conftest import GAMMA_D_SET, PSI, PSI_PRIME
from ctcompanion.companion import (
    CompanionBasis,
    SearchLimits,
    d_set,
    d_vector,
    expand_in_basis,
    is_companion_basis,
    iter_companion_bases,
    search_companion_bases,
    transform_basis,
)
from ctcompanion.exchange import Quiver, dynkin_quiver, initial_seed, mutate_sequence
from ctcompanion.root_system import dynkin_edges, root_system
from oracles import brute_companion_bases, cartan


def test_simple_roots_for_initial_seed():
    for t, n in [("A", 3), ("D", 4), ("E", 6)]:
        rs = root_system(t, n)
        b = dynkin_quiver(t, n).exchange_matrix()
        assert is_companion_basis(rs.simple_roots(), b, rs.datum)


def test_psi_is_companion_for_gamma(b_gamma, d4):
    assert is_companion_basis(PSI, b_gamma, d4.datum)
    assert not is_companion_basis(d4.simple_roots(), b_gamma, d4.datum)


def test_rejects_non_roots_and_non_bases(d4):
    b = dynkin_quiver("D", 4).exchange_matrix()
    assert not is_companion_basis([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 2, 0), (0, 0, 0, 1)], b, d4.datum)
    with pytest.raises(ValueError):
        is_companion_basis([(1, 0, 0, 0)], b, d4.datum)
    with pytest.raises(ValueError):
        CompanionBasis(tuple(d4.simple_roots()), d4.datum, ((0,) * 4,) * 4)


def test_search_contains_known_bases(b_gamma, d4):
    sets = [cb.as_set() for cb in search_companion_bases(b_gamma, d4, SearchLimits(max_results=10_000))]
    assert frozenset(PSI) in sets
    assert frozenset(PSI_PRIME) in sets
    assert len(sets) == 576
    a2 = root_system("A", 2)
    found = search_companion_bases(dynkin_quiver("A", 2).exchange_matrix(), a2)
    assert frozenset(a2.simple_roots()) in [cb.as_set() for cb in found]


def test_search_cap(b_gamma, d4):
    assert len(search_companion_bases(b_gamma, d4, SearchLimits(max_results=5))) == 5


@pytest.mark.parametrize(
    "t,n,mutations,signed",
    [("A", 2, [], True), ("A", 3, [1], True), ("A", 3, [0, 2], False), ("D", 4, [2], False), ("D", 4, [0, 2, 3], False)],
)
def test_enumeration_matches_brute_force(t, n, mutations, signed):
    rs = root_system(t, n)
    b = mutate_sequence(initial_seed(dynkin_quiver(t, n)), mutations).b
    roots = list(rs.positive_roots)
    if signed:
        roots += [tuple(-x for x in r) for r in rs.positive_roots]
    oracle = brute_companion_bases(b, cartan(n, dynkin_edges(t, n)), roots)
    assert sorted(iter_companion_bases(b, rs, signed=signed)) == sorted(oracle)


def test_expansion(b_gamma, d4):
    cb = CompanionBasis(tuple(PSI), d4.datum, b_gamma)
    for i, g in enumerate(PSI):
        assert expand_in_basis(g, cb) == tuple(int(i == j) for j in range(4))
        assert d_vector(g, cb) == tuple(int(i == j) for j in range(4))
    assert expand_in_basis((0, 1, 0, 0), cb) == (0, 1, -1, 0)
    assert d_vector((1, 1, 2, 1), cb) == (1, 1, 0, 1)
    assert d_vector((0, 1, 1, 0), cb) == (0, 1, 0, 0)
    assert d_vector((1, 1, 1, 0), cb) == (1, 1, 0, 0)


def test_d_sets(b_gamma, d4):
    assert d_set(CompanionBasis(tuple(PSI), d4.datum, b_gamma), d4) == GAMMA_D_SET
    b0 = dynkin_quiver("D", 4).exchange_matrix()
    assert d_set(CompanionBasis(tuple(d4.simple_roots()), d4.datum, b0), d4) == frozenset(d4.positive_roots)


@given(st.integers(0, 2**32))
def test_transform_invariance(seed):
    rng = random.Random(seed)
    t, n = rng.choice([("A", 4), ("D", 4), ("D", 5), ("E", 6)])
    rs = root_system(t, n)
    s = mutate_sequence(initial_seed(dynkin_quiver(t, n)), [rng.randrange(n) for _ in range(rng.randrange(8))])
    bases = search_companion_bases(s.b, rs, SearchLimits(max_results=8, signed=True))
    cb = rng.choice(bases)
    perm = list(range(n))
    rng.shuffle(perm)
    signs = [rng.choice((1, -1)) for _ in range(n)]
    moved = transform_basis(cb, perm, signs)
    base = d_set(cb, rs)
    assert {tuple(v[p] for p in perm) for v in base} == d_set(moved, rs)
    flipped = transform_basis(cb, list(range(n)), signs)
    assert d_set(flipped, rs) == base


def test_rank_mismatch():
    with pytest.raises(ValueError):
        list(iter_companion_bases(Quiver(2, ((0, 1),)).exchange_matrix(), root_system("A", 3)))
