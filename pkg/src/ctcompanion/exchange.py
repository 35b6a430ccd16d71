"""Exchange matrices, principal-coefficient seeds and their mutation.

Vertices are 0-based.  An exchange matrix ``b`` is a tuple of integer rows;
``b[i][j] > 0`` means ``b[i][j]`` arrows ``i -> j`` in the quiver.

The c-block of a seed stores c-vectors as its *columns*.  Mutation acts on
the extended matrix (b stacked over c) with the usual entry rule, the c rows
being frozen.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from operator import itemgetter
from typing import Iterable, Sequence

from .linalg import bareiss_det, identity

Mat = tuple[tuple[int, ...], ...]


class NotFiniteTypeError(ValueError):
    """An exchange matrix left the finite-type window |b_ij| <= 1."""


class InvariantViolation(AssertionError):
    """A property that must hold for every finite-type seed failed."""


def _freeze(m: Iterable[Iterable[int]]) -> Mat:
    return tuple(tuple(int(x) for x in row) for row in m)


def is_skew_symmetric(b: Sequence[Sequence[int]]) -> bool:
    n = len(b)
    return all(b[i][j] == -b[j][i] for i in range(n) for j in range(n))


@dataclass(frozen=True)
class Quiver:
    """A finite quiver; ``arrows`` is a sorted multiset of (source, target)."""

    n: int
    arrows: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        arrows = tuple(sorted((int(i), int(j)) for i, j in self.arrows))
        for i, j in arrows:
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"arrow {i}->{j} out of range")
            if i == j:
                raise ValueError(f"loop at vertex {i}")
        object.__setattr__(self, "arrows", arrows)

    def has_two_cycle(self) -> bool:
        s = set(self.arrows)
        return any((j, i) in s for i, j in s)

    def arrow_matrix(self) -> list[list[int]]:
        m = [[0] * self.n for _ in range(self.n)]
        for i, j in self.arrows:
            m[i][j] += 1
        return m

    def exchange_matrix(self) -> Mat:
        a = self.arrow_matrix()
        return _freeze([[a[i][j] - a[j][i] for j in range(self.n)] for i in range(self.n)])

    def sinks(self) -> list[int]:
        sources = {i for i, _ in self.arrows}
        return [v for v in range(self.n) if v not in sources]

    def sources(self) -> list[int]:
        targets = {j for _, j in self.arrows}
        return [v for v in range(self.n) if v not in targets]

    def is_acyclic(self) -> bool:
        return self.topological_order() is not None

    def topological_order(self) -> list[int] | None:
        indeg = [0] * self.n
        out: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.arrows:
            indeg[j] += 1
            out[i].append(j)
        queue = deque(v for v in range(self.n) if indeg[v] == 0)
        order = []
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in out[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        return order if len(order) == self.n else None

    def reflect_at(self, k: int) -> "Quiver":
        """Reverse every arrow incident to ``k``."""
        return Quiver(self.n, tuple((j, i) if k in (i, j) else (i, j) for i, j in self.arrows))

    def opposite(self) -> "Quiver":
        return Quiver(self.n, tuple((j, i) for i, j in self.arrows))

    def one_based(self) -> list[tuple[int, int]]:
        return [(i + 1, j + 1) for i, j in self.arrows]

    @classmethod
    def from_one_based(cls, n: int, arrows: Iterable[tuple[int, int]]) -> "Quiver":
        return cls(n, tuple((i - 1, j - 1) for i, j in arrows))


def dynkin_quiver(type_letter: str, rank: int) -> Quiver:
    """Default orientation: every arrow points towards vertex 1 along the tree.

    For D4 this is 2 -> 3, 4 -> 3, 3 -> 1.
    """
    from .root_system import dynkin_edges

    nbrs: dict[int, list[int]] = {v: [] for v in range(rank)}
    for i, j in dynkin_edges(type_letter, rank):
        nbrs[i].append(j)
        nbrs[j].append(i)
    arrows = []
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in nbrs[v]:
            if w not in seen:
                seen.add(w)
                arrows.append((w, v))
                queue.append(w)
    return Quiver(rank, tuple(arrows))


def gamma_quiver(b: Sequence[Sequence[int]]) -> Quiver:
    """Quiver with max(b[i][j], 0) arrows i -> j."""
    n = len(b)
    arrows = [(i, j) for i in range(n) for j in range(n) for _ in range(max(int(b[i][j]), 0))]
    return Quiver(n, tuple(arrows))


@dataclass(frozen=True)
class Seed:
    b: Mat
    c: Mat
    history: tuple[int, ...] = field(default=(), compare=False)

    @property
    def n(self) -> int:
        return len(self.b)

    def c_vectors(self) -> list[tuple[int, ...]]:
        return [tuple(row[j] for row in self.c) for j in range(self.n)]

    def quiver(self) -> Quiver:
        return gamma_quiver(self.b)

    def to_json(self) -> dict:
        return {
            "b": [list(r) for r in self.b],
            "c": [list(r) for r in self.c],
            "history": [k + 1 for k in self.history],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Seed":
        b = _freeze(data["b"])
        c = _freeze(data.get("c") or identity(len(b)))
        if not is_skew_symmetric(b):
            raise ValueError("exchange matrix must be skew-symmetric")
        return cls(b, c, tuple(k - 1 for k in data.get("history", [])))


def seed_from_matrix(b: Sequence[Sequence[int]]) -> Seed:
    b = _freeze(b)
    if not is_skew_symmetric(b):
        raise ValueError("exchange matrix must be skew-symmetric")
    return Seed(b, identity(len(b)))


def initial_seed(q: Quiver) -> Seed:
    if q.has_two_cycle():
        raise ValueError("quiver has a 2-cycle")
    return Seed(q.exchange_matrix(), identity(q.n))


def _shift(x: int, y: int) -> int:
    # (|x| y + x |y|) / 2
    return x * abs(y) if x * y > 0 else 0


def _mutate_rows(rows: Sequence[Sequence[int]], bk: Sequence[int], k: int) -> list[tuple[int, ...]]:
    out = []
    for row in rows:
        x = row[k]
        if x == 0:
            out.append(tuple(row))
            continue
        new = [v + x * abs(y) if x * y > 0 else v for v, y in zip(row, bk)]
        new[k] = -x
        out.append(tuple(new))
    return out


def mutate_matrix(b: Sequence[Sequence[int]], k: int) -> Mat:
    n = len(b)
    if not 0 <= k < n:
        raise IndexError(f"mutation direction {k} out of range for rank {n}")
    bk = b[k]
    rows = _mutate_rows(b, bk, k)
    rows[k] = tuple(-v for v in bk)
    return tuple(rows)


def mutate_seed(s: Seed, k: int) -> Seed:
    n = s.n
    if not 0 <= k < n:
        raise IndexError(f"mutation direction {k} out of range for rank {n}")
    return Seed(mutate_matrix(s.b, k), tuple(_mutate_rows(s.c, s.b[k], k)), s.history + (k,))


def mutate_sequence(s: Seed, ks: Iterable[int]) -> Seed:
    for k in ks:
        s = mutate_seed(s, k)
    return s


def check_finite_type(b: Sequence[Sequence[int]]) -> None:
    for row in b:
        for x in row:
            if abs(x) >= 2:
                raise NotFiniteTypeError(f"exchange matrix entry {x} outside the finite-type window")


def is_sign_coherent(s: Seed) -> bool:
    for v in s.c_vectors():
        if any(x > 0 for x in v) and any(x < 0 for x in v):
            return False
    return True


def _check_seed(s: Seed) -> None:
    check_finite_type(s.b)
    if not is_sign_coherent(s):
        raise InvariantViolation(f"c-matrix {s.c} is not sign-coherent")


def relabel_key(s: Seed) -> tuple[Mat, Mat]:
    """(b, c) with vertices sorted by their c-vector; equal iff seeds differ by relabelling."""
    cols = list(zip(*s.c))
    order = sorted(range(s.n), key=cols.__getitem__)
    if s.n == 1:
        return s.b, tuple(cols)
    get = itemgetter(*order)
    return tuple(get(s.b[p]) for p in order), get(cols)


def exchange_graph(s0: Seed, *, up_to_relabeling: bool = False, max_seeds: int | None = None) -> set[Seed]:
    """All seeds reachable from ``s0`` by mutation.

    Seeds are deduplicated by exact (b, c) equality, or by
    :func:`relabel_key` when ``up_to_relabeling`` is set.  Sign coherence and
    the finite-type bound are checked on every seed reached.
    """
    key = relabel_key if up_to_relabeling else (lambda s: (s.b, s.c))
    _check_seed(s0)
    seen = {key(s0): s0}
    queue = deque([s0])
    while queue:
        s = queue.popleft()
        for k in range(s.n):
            t = mutate_seed(s, k)
            kt = key(t)
            if kt in seen:
                continue
            _check_seed(t)
            seen[kt] = t
            if max_seeds is not None and len(seen) > max_seeds:
                raise NotFiniteTypeError(f"exchange graph exceeds {max_seeds} seeds")
            queue.append(t)
    return set(seen.values())


def positive_c_vectors(s0: Seed) -> set[tuple[int, ...]]:
    """Nonnegative c-vectors over the exchange graph of ``s0``."""
    out = set()
    for s in exchange_graph(s0, up_to_relabeling=True):
        for v in s.c_vectors():
            if all(x >= 0 for x in v):
                out.add(v)
    return out


# -- canonical forms -------------------------------------------------------


def _refined_colors(b: Mat) -> list[int]:
    n = len(b)
    colors = [
        (sum(x for x in b[i] if x > 0), -sum(x for x in b[i] if x < 0)) for i in range(n)
    ]
    ranks = _rank_colors(colors)
    while True:
        sig = [
            (ranks[i], tuple(sorted((b[i][j], ranks[j]) for j in range(n) if b[i][j])))
            for i in range(n)
        ]
        new = _rank_colors(sig)
        if len(set(new)) == len(set(ranks)):
            return new
        ranks = new


def _rank_colors(colors: list) -> list[int]:
    lookup = {c: r for r, c in enumerate(sorted(set(colors)))}
    return [lookup[c] for c in colors]


def canonical_permutation(b: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Permutation p with canonical_form(b)[s][t] == b[p[s]][p[t]].

    Vertices are first split into cells by iterated (out-degree, in-degree)
    refinement; position t is filled from the t-th cell in colour order.
    Among those arrangements the result is the lexicographic minimum, with
    entries ordered column by column (b'[0][t], ..., b'[t-1][t], then
    b'[t][0], ..., b'[t][t-1]), so every prefix of a permutation fixes a
    prefix of the key and ties are expanded breadth-first.
    """
    b = _freeze(b)
    n = len(b)
    if n == 0:
        return ()
    colors = _refined_colors(b)
    slots = sorted(colors)
    frontier: list[tuple[int, ...]] = [()]
    for t in range(n):
        best = None
        nxt: list[tuple[int, ...]] = []
        for partial in frontier:
            used = set(partial)
            for v in range(n):
                if v in used or colors[v] != slots[t]:
                    continue
                k = tuple(b[p][v] for p in partial) + tuple(b[v][p] for p in partial)
                if best is None or k < best:
                    best = k
                    nxt = [partial + (v,)]
                elif k == best:
                    nxt.append(partial + (v,))
        frontier = nxt
    return frontier[0]


def permute_matrix(b: Sequence[Sequence[int]], p: Sequence[int]) -> Mat:
    return tuple(tuple(b[i][j] for j in p) for i in p)


def canonical_form(b: Sequence[Sequence[int]]) -> Mat:
    return permute_matrix(b, canonical_permutation(b))


def mutation_class(b: Sequence[Sequence[int]], *, max_size: int | None = None) -> set[Mat]:
    """Canonical forms of all exchange matrices mutation-equivalent to ``b``."""
    b = _freeze(b)
    check_finite_type(b)
    start = canonical_form(b)
    seen = {start}
    queue = deque([start])
    while queue:
        m = queue.popleft()
        for k in range(len(m)):
            t = mutate_matrix(m, k)
            check_finite_type(t)
            ct = canonical_form(t)
            if ct not in seen:
                seen.add(ct)
                if max_size is not None and len(seen) > max_size:
                    raise NotFiniteTypeError(f"mutation class exceeds {max_size} matrices")
                queue.append(ct)
    return seen


def sorted_class(b: Sequence[Sequence[int]]) -> list[Mat]:
    """Mutation class in a deterministic order (fewest arrows first)."""
    return sorted(mutation_class(b), key=lambda m: (sum(x for r in m for x in r if x > 0), m))


def c_matrix_is_unimodular(s: Seed) -> bool:
    return bareiss_det(s.c) in (1, -1)


# -- DOT ---------------------------------------------------------------------


def quiver_to_dot(q: Quiver, name: str = "Q") -> str:
    lines = [f"digraph {name} {{"]
    for v in range(q.n):
        lines.append(f"  {v + 1};")
    for i, j in q.arrows:
        lines.append(f"  {i + 1} -> {j + 1};")
    lines.append("}")
    return "\n".join(lines) + "\n"


_DOT_ARROW = re.compile(r"^\s*(\d+)\s*->\s*(\d+)\s*;?\s*$")
_DOT_NODE = re.compile(r"^\s*(\d+)\s*;?\s*$")


def quiver_from_dot(text: str) -> Quiver:
    """Parse the subset of DOT emitted by :func:`quiver_to_dot`."""
    arrows = []
    n = 0
    for line in text.splitlines():
        m = _DOT_ARROW.match(line)
        if m:
            i, j = int(m.group(1)), int(m.group(2))
            arrows.append((i - 1, j - 1))
            n = max(n, i, j)
            continue
        m = _DOT_NODE.match(line)
        if m:
            n = max(n, int(m.group(1)))
    return Quiver(n, tuple(arrows))
