"""Companion bases of an exchange matrix and their d-vectors."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .linalg import bareiss_det, inverse_unimodular, matvec, transpose
from .root_system import CartanDatum, Root, RootSystem, bilinear, canonical_order, is_root

DVector = tuple[int, ...]


@dataclass(frozen=True)
class SearchLimits:
    max_results: int = 64
    signed: bool = False


@dataclass(frozen=True)
class CompanionBasis:
    gammas: tuple[Root, ...]
    datum: CartanDatum
    b: tuple[tuple[int, ...], ...]
    _inverse: tuple = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "gammas", tuple(tuple(g) for g in self.gammas))
        object.__setattr__(self, "b", tuple(tuple(r) for r in self.b))
        if not is_companion_basis(self.gammas, self.b, self.datum):
            raise ValueError("not a companion basis for this exchange matrix")
        object.__setattr__(self, "_inverse", inverse_unimodular(transpose(self.gammas)))

    @property
    def n(self) -> int:
        return len(self.gammas)

    def as_set(self) -> frozenset[Root]:
        return frozenset(self.gammas)


def is_companion_basis(gammas: Sequence[Sequence[int]], b: Sequence[Sequence[int]], datum: CartanDatum) -> bool:
    """Both companion-basis conditions: a Z-basis, and |(g_i, g_j)| = |b_ij| off the diagonal."""
    n = datum.rank
    if len(gammas) != n or len(b) != n or any(len(g) != n for g in gammas):
        raise ValueError(f"expected {n} roots of length {n} and an {n}x{n} matrix")
    if not all(is_root(datum, g) for g in gammas):
        return False
    for i in range(n):
        for j in range(i + 1, n):
            if abs(bilinear(datum, gammas[i], gammas[j])) != abs(b[i][j]):
                return False
    return bareiss_det(transpose(gammas)) in (1, -1)


def _search_order(b: Sequence[Sequence[int]]) -> list[int]:
    # most constrained vertex next: edges into the placed set, then total degree
    n = len(b)
    degree = [sum(1 for j in range(n) if b[i][j]) for i in range(n)]
    order: list[int] = []
    rest = set(range(n))
    while rest:
        v = max(rest, key=lambda i: (sum(1 for p in order if b[i][p]), degree[i], -i))
        order.append(v)
        rest.remove(v)
    return order


def iter_companion_bases(b: Sequence[Sequence[int]], rs: RootSystem, signed: bool = False) -> Iterator[tuple[Root, ...]]:
    """Depth-first enumeration of all companion bases, in deterministic order.

    Candidates are positive roots (or all roots when ``signed``) in
    canonical order.  Pairing compatibility is kept as one bitmask per
    (candidate, |pairing|) so each extension step is a few ANDs.
    """
    n = rs.rank
    if len(b) != n:
        raise ValueError("exchange matrix rank does not match the root system")
    cands = list(rs.positive_roots)
    if signed:
        cands += [tuple(-x for x in r) for r in rs.positive_roots]
    m = len(cands)
    masks = [[0, 0] for _ in range(m)]
    for x in range(m):
        for y in range(m):
            p = abs(bilinear(rs.datum, cands[x], cands[y]))
            if p <= 1:
                masks[x][p] |= 1 << y
    order = _search_order(b)
    chosen = [0] * n
    full = (1 << m) - 1

    def rec(depth: int) -> Iterator[tuple[Root, ...]]:
        if depth == n:
            gammas = tuple(cands[chosen[v]] for v in range(n))
            if bareiss_det(transpose(gammas)) in (1, -1):
                yield gammas
            return
        v = order[depth]
        allowed = full
        for u in order[:depth]:
            allowed &= masks[chosen[u]][abs(b[v][u])]
            if not allowed:
                return
        while allowed:
            low = allowed & -allowed
            chosen[v] = low.bit_length() - 1
            yield from rec(depth + 1)
            allowed ^= low

    yield from rec(0)


def search_companion_bases(b: Sequence[Sequence[int]], rs: RootSystem, limits: SearchLimits = SearchLimits()) -> list[CompanionBasis]:
    out = []
    b = tuple(tuple(r) for r in b)
    for gammas in iter_companion_bases(b, rs, signed=limits.signed):
        out.append(CompanionBasis(gammas, rs.datum, b))
        if len(out) >= limits.max_results:
            break
    return out


def expand_in_basis(a: Sequence[int], cb: CompanionBasis) -> tuple[int, ...]:
    """Integer coefficients c with sum_i c_i * gamma_i == a."""
    if len(a) != cb.n:
        raise ValueError("dimension mismatch")
    return matvec(cb._inverse, a)


def d_vector(a: Sequence[int], cb: CompanionBasis) -> DVector:
    return tuple(abs(x) for x in expand_in_basis(a, cb))


def d_set(cb: CompanionBasis, rs: RootSystem) -> frozenset[DVector]:
    return frozenset(d_vector(a, cb) for a in rs.positive_roots)


def transform_basis(cb: CompanionBasis, perm: Sequence[int], signs: Sequence[int]) -> CompanionBasis:
    """Reindex by ``perm`` (new vertex t is old vertex perm[t]) and flip signs.

    The exchange matrix is permuted simultaneously, so the result is again a
    companion basis.
    """
    gammas = [tuple(s * x for x in cb.gammas[p]) for p, s in zip(perm, signs)]
    b = tuple(tuple(cb.b[i][j] for j in perm) for i in perm)
    return CompanionBasis(tuple(gammas), cb.datum, b)


def sorted_vectors(vs) -> list[tuple[int, ...]]:
    return canonical_order(vs)
