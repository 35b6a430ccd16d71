"""Simply-laced root systems in simple-root coordinates.

Vertex numbering (1-based in prose, 0-based in code):

* ``A_n``: the path 1 - 2 - ... - n.
* ``D_4``: nodes 1, 2 and 4 all attached to the branch node 3.
* ``D_n`` (n >= 5): Bourbaki labelling, the path 1 - 2 - ... - (n-1) with
  node n attached to the fork n-2.
* ``E_n``: Bourbaki labelling, the path 1 - 3 - 4 - ... - n with node 2
  attached to node 4.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Root = tuple[int, ...]

_VALID_RANKS = {
    "A": lambda n: n >= 1,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
}


def dynkin_edges(type_letter: str, rank: int) -> list[tuple[int, int]]:
    """Edges of the Dynkin diagram as 0-based pairs (i, j) with i < j."""
    t = type_letter.upper()
    if t not in _VALID_RANKS:
        raise ValueError(f"unsupported Dynkin type {type_letter!r}")
    if not _VALID_RANKS[t](rank):
        raise ValueError(f"invalid rank {rank} for type {t}")
    if t == "A":
        return [(i, i + 1) for i in range(rank - 1)]
    if t == "D" and rank == 4:
        return [(0, 2), (1, 2), (2, 3)]
    if t == "D":
        return [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
    return [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, rank - 1)]


@dataclass(frozen=True)
class CartanDatum:
    type_letter: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.rank
        if len(self.cartan) != n or any(len(r) != n for r in self.cartan):
            raise ValueError("cartan matrix has the wrong shape")
        for i in range(n):
            if self.cartan[i][i] != 2:
                raise ValueError("cartan diagonal must be 2")
            for j in range(n):
                if i != j and self.cartan[i][j] not in (0, -1):
                    raise ValueError("off-diagonal cartan entries must be 0 or -1")
                if self.cartan[i][j] != self.cartan[j][i]:
                    raise ValueError("cartan matrix must be symmetric")
        if sorted(self.edges()) != sorted(dynkin_edges(self.type_letter, n)):
            raise ValueError(f"cartan matrix is not the {self.type_letter}{n} diagram")

    @property
    def name(self) -> str:
        return f"{self.type_letter}{self.rank}"

    def edges(self) -> list[tuple[int, int]]:
        n = self.rank
        return [(i, j) for i in range(n) for j in range(i + 1, n) if self.cartan[i][j] == -1]


def cartan_datum(type_letter: str, rank: int) -> CartanDatum:
    edges = dynkin_edges(type_letter, rank)
    m = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i, j in edges:
        m[i][j] = m[j][i] = -1
    return CartanDatum(type_letter.upper(), rank, tuple(map(tuple, m)))


def bilinear(datum: CartanDatum, a: Sequence[int], b: Sequence[int]) -> int:
    """The symmetric form a^T * cartan * b."""
    n = datum.rank
    if len(a) != n or len(b) != n:
        raise ValueError(f"expected vectors of length {n}")
    total = 0
    for i, ai in enumerate(a):
        if ai:
            row = datum.cartan[i]
            total += ai * sum(row[j] * b[j] for j in range(n))
    return total


def is_root(datum: CartanDatum, a: Sequence[int]) -> bool:
    return len(a) == datum.rank and bilinear(datum, a, a) == 2


def is_positive(a: Sequence[int]) -> bool:
    return all(x >= 0 for x in a) and any(a)


def simple_root(n: int, i: int) -> Root:
    return tuple(int(j == i) for j in range(n))


def reflect(datum: CartanDatum, a: Sequence[int], i: int) -> Root:
    """Simple reflection s_i(a) = a - (a, alpha_i) alpha_i."""
    if not 0 <= i < datum.rank:
        raise IndexError(f"vertex {i} out of range for rank {datum.rank}")
    p = sum(datum.cartan[i][j] * a[j] for j in range(datum.rank))
    out = list(a)
    out[i] -= p
    return tuple(out)


def height(a: Sequence[int]) -> int:
    return sum(a)


def canonical_order(roots: Iterable[Root]) -> list[Root]:
    """Sort by height, then lexicographically."""
    return sorted(roots, key=lambda r: (height(r), r))


def _addition_closure(datum: CartanDatum) -> list[Root]:
    n = datum.rank
    simples = [simple_root(n, i) for i in range(n)]
    seen = set(simples)
    queue = deque(simples)
    while queue:
        a = queue.popleft()
        for i in range(n):
            b = a[:i] + (a[i] + 1,) + a[i + 1:]
            if b not in seen and bilinear(datum, b, b) == 2:
                seen.add(b)
                queue.append(b)
    return canonical_order(seen)


def reflection_orbit(datum: CartanDatum) -> set[Root]:
    """Orbit of the simple roots under all simple reflections (all of Phi)."""
    n = datum.rank
    seen = {simple_root(n, i) for i in range(n)}
    queue = deque(seen)
    while queue:
        a = queue.popleft()
        for i in range(n):
            b = reflect(datum, a, i)
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return seen


def classical_positive_count(type_letter: str, rank: int) -> int:
    t = type_letter.upper()
    if t == "A":
        return rank * (rank + 1) // 2
    if t == "D":
        return rank * (rank - 1)
    return {6: 36, 7: 63, 8: 120}[rank]


@dataclass(frozen=True)
class RootSystem:
    datum: CartanDatum
    positive_roots: tuple[Root, ...]
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {r: k for k, r in enumerate(self.positive_roots)})

    @property
    def rank(self) -> int:
        return self.datum.rank

    @property
    def name(self) -> str:
        return self.datum.name

    def simple_roots(self) -> list[Root]:
        return [simple_root(self.rank, i) for i in range(self.rank)]

    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    def index(self, a: Root) -> int:
        return self._index[tuple(a)]

    def is_positive_root(self, a: Sequence[int]) -> bool:
        return tuple(a) in self._index

    def is_root(self, a: Sequence[int]) -> bool:
        a = tuple(a)
        return a in self._index or tuple(-x for x in a) in self._index

    def pair(self, a: Sequence[int], b: Sequence[int]) -> int:
        return bilinear(self.datum, a, b)

    def to_json(self) -> dict:
        return {
            "type": self.datum.type_letter,
            "rank": self.rank,
            "positive_roots": [list(r) for r in self.positive_roots],
        }


def build_root_system(datum: CartanDatum) -> RootSystem:
    roots = _addition_closure(datum)
    expected = classical_positive_count(datum.type_letter, datum.rank)
    if len(roots) != expected:
        raise RuntimeError(f"{datum.name}: generated {len(roots)} positive roots, expected {expected}")
    return RootSystem(datum, tuple(roots))


def root_system(type_letter: str, rank: int) -> RootSystem:
    return build_root_system(cartan_datum(type_letter, rank))


def format_root(a: Sequence[int]) -> str:
    """Human form in simple roots, e.g. ``a1+a2+2a3+a4`` (1-based)."""
    terms = []
    for i, c in enumerate(a):
        if c == 0:
            continue
        coef = "" if abs(c) == 1 else str(abs(c))
        sign = "-" if c < 0 else "+"
        terms.append((sign, f"{coef}a{i + 1}"))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, t in terms[1:]:
        out += sign + t
    return out
