import random

import pytest
from hypothesis import given, strategies as st

from conftest import GAMMA_ARROWS, GAMMA_D_SET
from ctcompanion.exchange import (
    NotFiniteTypeError,
    Quiver,
    Seed,
    c_matrix_is_unimodular,
    canonical_form,
    canonical_permutation,
    dynkin_quiver,
    exchange_graph,
    gamma_quiver,
    initial_seed,
    is_sign_coherent,
    mutate_matrix,
    mutate_seed,
    mutate_sequence,
    mutation_class,
    permute_matrix,
    positive_c_vectors,
    quiver_from_dot,
    quiver_to_dot,
    seed_from_matrix,
)
from oracles import (
    brute_canonical,
    brute_mutation_class,
    c_vectors_from_graph,
    extended_mutation,
    labeled_exchange_graph,
)


def path(n):
    return Quiver(n, tuple((i, i + 1) for i in range(n - 1)))


def test_initial_seed(quiver_q):
    s = initial_seed(quiver_q)
    b = s.b
    # 1-based: b[2][3] = b[4][3] = b[3][1] = 1
    assert b[1][2] == b[3][2] == b[2][0] == 1
    assert b[2][1] == b[2][3] == b[0][2] == -1
    assert sum(abs(x) for r in b for x in r) == 6
    assert s.c == ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
    assert s.history == ()
    assert initial_seed(Quiver(1)).b == ((0,),)
    assert initial_seed(path(2)).b == ((0, 1), (-1, 0))


def test_dynkin_orientation_d4(quiver_q):
    assert dynkin_quiver("D", 4) == quiver_q


def test_gamma_from_mutation(gamma_seed):
    assert set(gamma_seed.quiver().one_based()) == GAMMA_ARROWS


def test_gamma_quiver():
    assert gamma_quiver(((0, 0), (0, 0))).arrows == ()
    assert gamma_quiver(((0, 1), (-1, 0))).arrows == ((0, 1),)


def test_a2_c_matrix_after_one_mutation():
    s = mutate_seed(initial_seed(path(2)), 0)
    assert s.c == ((-1, 1), (0, 1))
    assert s.c_vectors() == [(-1, 0), (1, 1)]
    assert is_sign_coherent(s)


def random_finite_type_seed(rng, t, n, steps):
    s = initial_seed(dynkin_quiver(t, n))
    return mutate_sequence(s, [rng.randrange(n) for _ in range(steps)])


@given(st.integers(0, 2**32), st.sampled_from([("A", 4), ("D", 5), ("E", 6)]))
def test_mutation_is_an_involution(seed, tn):
    rng = random.Random(seed)
    s = random_finite_type_seed(rng, *tn, steps=rng.randrange(12))
    k = rng.randrange(s.n)
    t = mutate_seed(mutate_seed(s, k), k)
    assert (t.b, t.c) == (s.b, s.c)


@given(st.integers(0, 2**32))
def test_mutation_matches_halved_formula(seed):
    rng = random.Random(seed)
    s = random_finite_type_seed(rng, "D", 5, rng.randrange(10))
    k = rng.randrange(5)
    ext = [list(r) for r in s.b] + [list(r) for r in s.c]
    expected = extended_mutation(ext, 5, k)
    t = mutate_seed(s, k)
    assert [list(r) for r in t.b + t.c] == expected


def test_history_is_recorded():
    s = mutate_sequence(initial_seed(path(3)), [2, 0])
    assert s.history == (2, 0)
    assert Seed.from_json(s.to_json()).history == (2, 0)
    assert s.to_json()["history"] == [3, 1]


@pytest.mark.parametrize(
    "q,count",
    [(Quiver(1), 2), (path(2), 10), (dynkin_quiver("D", 4), 1200)],
)
def test_labelled_exchange_graph_size(q, count):
    g = exchange_graph(initial_seed(q))
    assert len(g) == count
    assert len(labeled_exchange_graph(q.exchange_matrix())) == count


def test_unlabelled_exchange_graph_a2():
    assert len(exchange_graph(initial_seed(path(2)), up_to_relabeling=True)) == 5


@pytest.mark.parametrize("q", [path(2), path(3), Quiver(3, ((0, 1), (2, 1))), dynkin_quiver("D", 4)])
def test_c_vectors_match_oracle(q):
    b = q.exchange_matrix()
    assert positive_c_vectors(seed_from_matrix(b)) == c_vectors_from_graph(labeled_exchange_graph(b), q.n)


def test_c_vector_values(b_gamma):
    assert positive_c_vectors(initial_seed(path(2))) == {(1, 0), (0, 1), (1, 1)}
    assert positive_c_vectors(initial_seed(Quiver(1))) == {(1,)}
    assert positive_c_vectors(seed_from_matrix(b_gamma)) == GAMMA_D_SET


def test_every_seed_is_sign_coherent_and_unimodular():
    for s in exchange_graph(initial_seed(dynkin_quiver("A", 4))):
        assert is_sign_coherent(s)
        assert c_matrix_is_unimodular(s)
        assert max(abs(x) for r in s.b for x in r) <= 1


def test_finite_type_guard():
    with pytest.raises(NotFiniteTypeError):
        exchange_graph(seed_from_matrix(((0, 2), (-2, 0))))
    # the oriented 3-cycle is of type A3 and stays inside the window
    cycle = ((0, 1, -1), (-1, 0, 1), (1, -1, 0))
    assert len(exchange_graph(seed_from_matrix(cycle), up_to_relabeling=True)) == 14


def test_affine_a2_is_rejected():
    # acyclic triangle: affine type, mutation eventually produces a double arrow
    b = ((0, 1, 1), (-1, 0, 1), (-1, -1, 0))
    with pytest.raises(NotFiniteTypeError):
        exchange_graph(seed_from_matrix(b))
    with pytest.raises(NotFiniteTypeError):
        mutation_class(b)


@pytest.mark.parametrize(
    "q,count",
    [(path(2), 1), (path(3), 4), (path(4), 6), (dynkin_quiver("D", 4), 6), (dynkin_quiver("D", 5), 26), (dynkin_quiver("E", 6), 67)],
)
def test_mutation_class_sizes(q, count):
    cls = mutation_class(q.exchange_matrix())
    assert len(cls) == count
    if q.n <= 5:
        assert len(brute_mutation_class(q.exchange_matrix())) == count


@pytest.mark.parametrize("t,n,count", [("A", 5, 19), ("A", 6, 49), ("D", 6, 80)])
def test_mutation_class_sizes_larger(t, n, count):
    assert len(mutation_class(dynkin_quiver(t, n).exchange_matrix())) == count


def test_mutation_class_contains_gamma(b_gamma):
    assert canonical_form(b_gamma) in mutation_class(dynkin_quiver("D", 4).exchange_matrix())


def test_opposite_paths_have_same_form():
    assert canonical_form(path(3).exchange_matrix()) == canonical_form(path(3).opposite().exchange_matrix())


def skew(n):
    entries = st.lists(st.integers(-2, 2), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2)

    def build(xs):
        m = [[0] * n for _ in range(n)]
        it = iter(xs)
        for i in range(n):
            for j in range(i + 1, n):
                m[i][j] = next(it)
                m[j][i] = -m[i][j]
        return tuple(map(tuple, m))

    return entries.map(build)


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(skew(n), st.permutations(range(n)))))
def test_canonical_form_invariance(arg):
    b, p = arg
    c = canonical_form(b)
    assert canonical_form(permute_matrix(b, p)) == c
    assert canonical_form(c) == c
    assert permute_matrix(b, canonical_permutation(b)) == c


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(skew(n), skew(n))))
def test_canonical_form_separates_like_brute_force(arg):
    a, b = arg
    assert (canonical_form(a) == canonical_form(b)) == (brute_canonical(a) == brute_canonical(b))


def test_dot_round_trip(b_gamma):
    q = gamma_quiver(b_gamma)
    text = quiver_to_dot(q)
    for i, j in GAMMA_ARROWS:
        assert f"  {i} -> {j};" in text
    assert quiver_from_dot(text) == q
    double = Quiver(2, ((0, 1), (0, 1)))
    assert quiver_to_dot(double).count("1 -> 2") == 2
    assert quiver_from_dot(quiver_to_dot(double)) == double


def test_json_round_trip(gamma_seed):
    assert Seed.from_json(gamma_seed.to_json()) == gamma_seed
    with pytest.raises(ValueError):
        Seed.from_json({"b": [[0, 1], [1, 0]]})


def test_bad_inputs():
    with pytest.raises(ValueError):
        Quiver(2, ((0, 0),))
    with pytest.raises(ValueError):
        Quiver(2, ((0, 2),))
    with pytest.raises(ValueError):
        initial_seed(Quiver(2, ((0, 1), (1, 0))))
    with pytest.raises(IndexError):
        mutate_matrix(((0,),), 1)
