"""Representations of acyclic quivers over Q, tilting modules and Ringel's map.

A representation assigns a vector space k^dims[v] to each vertex and an
integer matrix of shape dims[j] x dims[i] to each arrow i -> j.  Integer
matrices suffice: kernel and cokernel bases are rescaled to primitive
integer vectors, which only changes the representation up to isomorphism.
All dimension counts are exact ranks.

Projective P_i has a basis of paths starting at i, so that
<dim P_i, x> = x_i and Hom(P_j, P_i) != 0 whenever there is an arrow i -> j.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .exchange import Quiver
from .linalg import bareiss_det, left_nullspace, matmul, matvec, nullspace, rank, transpose
from .root_system import Root, RootSystem, canonical_order

IntMatrix = tuple[tuple[int, ...], ...]


def _zeros(rows: int, cols: int) -> IntMatrix:
    return tuple((0,) * cols for _ in range(rows))


def _mul(a: IntMatrix, b: IntMatrix, inner: int, cols: int) -> IntMatrix:
    if not a:
        return ()
    if inner == 0:
        return _zeros(len(a), cols)
    return tuple(tuple(row) for row in matmul(a, b))


@dataclass(frozen=True)
class Representation:
    quiver: Quiver
    dims: tuple[int, ...]
    maps: tuple[IntMatrix, ...]

    def __post_init__(self):
        q = self.quiver
        if len(self.dims) != q.n or any(d < 0 for d in self.dims):
            raise ValueError("bad dimension vector")
        if len(self.maps) != len(q.arrows):
            raise ValueError("one matrix per arrow is required")
        for (i, j), m in zip(q.arrows, self.maps):
            if len(m) != self.dims[j] or any(len(r) != self.dims[i] for r in m):
                raise ValueError(f"matrix on arrow {i}->{j} has the wrong shape")

    def map_for(self, i: int, j: int) -> IntMatrix:
        return self.maps[self.quiver.arrows.index((i, j))]

    def path_action(self, path: Sequence[int]) -> IntMatrix:
        """Matrix of a path given as a sequence of arrow indices."""
        arrows = self.quiver.arrows
        if not path:
            raise ValueError("trivial paths need a vertex")
        i0 = arrows[path[0]][0]
        m = _identity(self.dims[i0])
        cur = i0
        for a in path:
            i, j = arrows[a]
            if i != cur:
                raise ValueError("arrows do not compose")
            m = _mul(self.maps[a], m, self.dims[i], self.dims[i0])
            cur = j
        return m


def _identity(d: int) -> IntMatrix:
    return tuple(tuple(int(r == c) for c in range(d)) for r in range(d))


def simple_representation(q: Quiver, i: int) -> Representation:
    dims = tuple(int(v == i) for v in range(q.n))
    return Representation(q, dims, tuple(_zeros(dims[t], dims[s]) for s, t in q.arrows))


def _check_simple_arrows(q: Quiver) -> None:
    if len(set(q.arrows)) != len(q.arrows):
        raise ValueError("reflection functors here assume no multiple arrows")


# -- Euler form ----------------------------------------------------------------


@dataclass(frozen=True)
class EulerForm:
    e: IntMatrix

    def pair(self, x: Sequence[int], y: Sequence[int]) -> int:
        return sum(xi * sum(r * yj for r, yj in zip(row, y)) for xi, row in zip(x, self.e) if xi)

    def symmetrized(self) -> IntMatrix:
        n = len(self.e)
        return tuple(tuple(self.e[i][j] + self.e[j][i] for j in range(n)) for i in range(n))


def euler_form(q: Quiver) -> EulerForm:
    """e = I - A with A[i][j] the number of arrows i -> j."""
    if not q.is_acyclic():
        raise ValueError("Euler form requires an acyclic quiver")
    a = q.arrow_matrix()
    return EulerForm(tuple(tuple(int(i == j) - a[i][j] for j in range(q.n)) for i in range(q.n)))


def quiver_positive_roots(q: Quiver) -> list[Root]:
    """Positive roots of the underlying graph, from the symmetrized Euler form."""
    form = euler_form(q).symmetrized()
    n = q.n

    def norm(v):
        return sum(v[i] * form[i][j] * v[j] for i in range(n) for j in range(n))

    simples = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simples)
    queue = deque(simples)
    while queue:
        a = queue.popleft()
        for i in range(n):
            b = a[:i] + (a[i] + 1,) + a[i + 1:]
            if b not in seen and norm(b) == 2:
                seen.add(b)
                if len(seen) > 10_000:
                    raise ValueError("underlying graph is not of Dynkin type")
                queue.append(b)
    return canonical_order(seen)


# -- reflection functors -------------------------------------------------------


def _reflect_dims(q: Quiver, d: Sequence[int], k: int) -> tuple[int, ...]:
    nbr = sum(d[j] for i, j in q.arrows if i == k) + sum(d[i] for i, j in q.arrows if j == k)
    out = list(d)
    out[k] = nbr - d[k]
    return tuple(out)


def sink_reflection(m: Representation, k: int) -> Representation:
    """Reflection functor at a sink k: new space at k is the kernel of the sum map."""
    q = m.quiver
    _check_simple_arrows(q)
    if k not in q.sinks():
        raise ValueError(f"vertex {k} is not a sink")
    incoming = [(idx, i) for idx, (i, j) in enumerate(q.arrows) if j == k]
    total = sum(m.dims[i] for _, i in incoming)
    if m.dims[k] == 0:
        kernel_cols = [tuple(int(r == c) for r in range(total)) for c in range(total)]
    else:
        big = [[] for _ in range(m.dims[k])]
        for idx, i in incoming:
            for r in range(m.dims[k]):
                big[r].extend(m.maps[idx][r])
        kernel_cols = nullspace(big, total) if total else []
    r_new = len(kernel_cols)
    new_q = q.reflect_at(k)
    new_dims = list(m.dims)
    new_dims[k] = r_new
    blocks = {}
    offset = 0
    for idx, i in incoming:
        blocks[i] = tuple(tuple(col[offset + s] for col in kernel_cols) for s in range(m.dims[i]))
        offset += m.dims[i]
    maps = []
    for s, t in new_q.arrows:
        if s == k:
            maps.append(blocks[t] if r_new else _zeros(m.dims[t], 0))
        else:
            maps.append(m.map_for(s, t))
    return Representation(new_q, tuple(new_dims), tuple(maps))


def source_reflection(m: Representation, k: int) -> Representation:
    """Reflection functor at a source k: new space at k is the cokernel of the stacked map."""
    q = m.quiver
    _check_simple_arrows(q)
    if k not in q.sources():
        raise ValueError(f"vertex {k} is not a source")
    outgoing = [(idx, j) for idx, (i, j) in enumerate(q.arrows) if i == k]
    total = sum(m.dims[j] for _, j in outgoing)
    stacked = [row for idx, _ in outgoing for row in m.maps[idx]]
    if m.dims[k] == 0 or not stacked:
        proj = [tuple(int(r == c) for c in range(total)) for r in range(total)]
    else:
        proj = left_nullspace(stacked, total)
    r_new = len(proj)
    new_q = q.reflect_at(k)
    new_dims = list(m.dims)
    new_dims[k] = r_new
    blocks = {}
    offset = 0
    for _, j in outgoing:
        blocks[j] = tuple(tuple(row[offset:offset + m.dims[j]]) for row in proj)
        offset += m.dims[j]
    maps = []
    for s, t in new_q.arrows:
        if t == k:
            maps.append(blocks[s])
        else:
            maps.append(m.map_for(s, t))
    return Representation(new_q, tuple(new_dims), tuple(maps))


def _sink_order(q: Quiver) -> list[int]:
    order = q.topological_order()
    if order is None:
        raise ValueError("quiver has an oriented cycle")
    return order[::-1]


def build_indecomposable(q: Quiver, a: Sequence[int]) -> Representation:
    """The indecomposable representation with dimension vector ``a``.

    Sink reflections (in an admissible order, repeated) carry ``a`` down to
    a simple root; the module is then rebuilt from that simple with source
    reflections in reverse.
    """
    a = tuple(int(x) for x in a)
    if len(a) != q.n or not all(x >= 0 for x in a) or not any(a):
        raise ValueError(f"{a} is not a positive vector of length {q.n}")
    form = euler_form(q).symmetrized()
    if sum(a[i] * form[i][j] * a[j] for i in range(q.n) for j in range(q.n)) != 2:
        raise ValueError(f"{a} is not a root of the underlying graph")
    _check_simple_arrows(q)
    order = _sink_order(q)
    steps: list[tuple[Quiver, int]] = []
    cur_q, d = q, a
    limit = 4 * q.n * (q.n + 1) + 4
    step = 0
    while sum(d) != 1:
        k = order[step % q.n]
        step += 1
        d = _reflect_dims(cur_q, d, k)
        if any(x < 0 for x in d):
            raise ValueError(f"{a} is not a positive root")
        steps.append((cur_q, k))
        cur_q = cur_q.reflect_at(k)
        if step > limit:
            raise ValueError(f"reflection sequence for {a} did not terminate")
    m = simple_representation(cur_q, d.index(1))
    for _, k in reversed(steps):
        m = source_reflection(m, k)
    if m.dims != a or m.quiver != q:
        raise AssertionError("reflection functors produced the wrong dimension vector")
    return m


def indecomposables(q: Quiver) -> list[Representation]:
    return [build_indecomposable(q, a) for a in quiver_positive_roots(q)]


# -- Hom and Ext ---------------------------------------------------------------


def _offsets(m: Representation, n: Representation) -> tuple[list[int], int]:
    offs, total = [], 0
    for v in range(m.quiver.n):
        offs.append(total)
        total += n.dims[v] * m.dims[v]
    return offs, total


def _hom_equations(m: Representation, n: Representation) -> tuple[list[list[int]], int]:
    if m.quiver != n.quiver:
        raise ValueError("representations live on different quivers")
    q = m.quiver
    offs, total = _offsets(m, n)
    rows = []
    for (i, j), ma, na in zip(q.arrows, m.maps, n.maps):
        # (N_a phi_i - phi_j M_a)[r][c] = 0
        for r in range(n.dims[j]):
            for c in range(m.dims[i]):
                row = [0] * total
                for s in range(n.dims[i]):
                    row[offs[i] + s * m.dims[i] + c] += na[r][s]
                for s in range(m.dims[j]):
                    row[offs[j] + r * m.dims[j] + s] -= ma[s][c]
                if any(row):
                    rows.append(row)
    return rows, total


def hom_dim(m: Representation, n: Representation) -> int:
    rows, total = _hom_equations(m, n)
    return total - rank(rows)


Morphism = tuple[IntMatrix, ...]


def hom_basis(m: Representation, n: Representation) -> list[Morphism]:
    rows, total = _hom_equations(m, n)
    if total == 0:
        return []
    vecs = nullspace(rows, total) if rows else [tuple(int(i == j) for j in range(total)) for i in range(total)]
    offs, _ = _offsets(m, n)
    out = []
    for v in vecs:
        mats = []
        for x in range(m.quiver.n):
            dn, dm = n.dims[x], m.dims[x]
            mats.append(tuple(tuple(v[offs[x] + r * dm + c] for c in range(dm)) for r in range(dn)))
        out.append(tuple(mats))
    return out


def compose(g: Morphism, f: Morphism, mid: Representation, src: Representation) -> Morphism:
    """g o f for f: src -> mid and g: mid -> target."""
    return tuple(_mul(gv, fv, mid.dims[v], src.dims[v]) for v, (gv, fv) in enumerate(zip(g, f)))


def _flatten(f: Morphism) -> list[int]:
    return [x for mat in f for row in mat for x in row]


def ext_dim(m: Representation, n: Representation) -> int:
    """dim Ext^1(M, N) = dim Hom(M, N) - <dim M, dim N> (hereditary case)."""
    e = euler_form(m.quiver)
    val = hom_dim(m, n) - e.pair(m.dims, n.dims)
    if val < 0:
        raise ArithmeticError(f"negative Ext dimension {val} for {m.dims}, {n.dims}")
    return val


def _paths_from(q: Quiver, i: int) -> list[tuple[int, ...]]:
    """All paths from i as tuples of arrow indices, the trivial path first."""
    out = [()]
    frontier = [((), i)]
    while frontier:
        nxt = []
        for p, v in frontier:
            for idx, (s, t) in enumerate(q.arrows):
                if s == v:
                    nxt.append((p + (idx,), t))
                    out.append(p + (idx,))
        frontier = nxt
    return out


def _path_end(q: Quiver, start: int, p: Sequence[int]) -> int:
    return q.arrows[p[-1]][1] if p else start


def projective(q: Quiver, i: int) -> Representation:
    paths = _paths_from(q, i)
    at = {v: [p for p in paths if _path_end(q, i, p) == v] for v in range(q.n)}
    dims = tuple(len(at[v]) for v in range(q.n))
    maps = []
    for idx, (s, t) in enumerate(q.arrows):
        mat = [[0] * dims[s] for _ in range(dims[t])]
        for c, p in enumerate(at[s]):
            mat[at[t].index(p + (idx,))][c] = 1
        maps.append(tuple(map(tuple, mat)))
    return Representation(q, dims, tuple(maps))


def ext_oracle(m: Representation, n: Representation) -> int:
    """Ext^1(M, N) from the standard projective presentation of M.

    0 -> (+)_{a:i->j} P_j (x) M_i --d--> (+)_i P_i (x) M_i -> M -> 0.
    A morphism out of P_i (x) V is fixed by a linear map V -> N_i, acting on
    a path p as N_p.  Ext^1 is the cokernel of Hom(d, N), which is computed
    by evaluating each basis morphism of Hom(P0, N) on the images of the
    generators of P1.  The kernel is checked against :func:`hom_dim`.
    """
    q = m.quiver
    if q != n.quiver:
        raise ValueError("representations live on different quivers")
    # Hom(P0, N): elementary maps E_{r,c}: M_i -> N_i
    p0_basis = [(i, r, c) for i in range(q.n) for r in range(n.dims[i]) for c in range(m.dims[i])]
    # Hom(P1, N) coordinates: for arrow a: i -> j, a map M_i -> N_j
    p1_coords = [(a, r, c) for a, (i, j) in enumerate(q.arrows) for r in range(n.dims[j]) for c in range(m.dims[i])]
    col_of = {key: t for t, key in enumerate(p1_coords)}

    def evaluate(psi, start: int, path: tuple[int, ...], vec: Sequence[int]) -> tuple[int, ...]:
        # psi~ applied to path (x) vec in P_start (x) M_start
        i, r, c = psi
        if i != start:
            return (0,) * n.dims[_path_end(q, start, path)]
        image = tuple(int(rr == r) * vec[c] for rr in range(n.dims[i]))
        if not path:
            return image
        return matvec(n.path_action(path), image)

    matrix = []
    for psi in p0_basis:
        row = [0] * len(p1_coords)
        for a, (i, j) in enumerate(q.arrows):
            for c in range(m.dims[i]):
                unit = tuple(int(x == c) for x in range(m.dims[i]))
                # d(e_j (x) u) = a (x) u - e_j (x) M_a u
                first = evaluate(psi, i, (a,), unit)
                second = evaluate(psi, j, (), tuple(m.maps[a][s][c] for s in range(m.dims[j])))
                for r in range(n.dims[j]):
                    row[col_of[(a, r, c)]] += first[r] - second[r]
        matrix.append(row)
    rk = rank(matrix)
    kernel = len(p0_basis) - rk
    if kernel != hom_dim(m, n):
        raise ArithmeticError("projective presentation disagrees with the intertwiner system")
    return len(p1_coords) - rk


# -- tilting modules -----------------------------------------------------------


@dataclass(frozen=True)
class TiltingModule:
    summands: tuple[Representation, ...]

    def __post_init__(self):
        s = self.summands
        if not s:
            raise ValueError("empty tilting module")
        q = s[0].quiver
        if len(s) != q.n or len({t.dims for t in s}) != q.n:
            raise ValueError("a basic tilting module has n pairwise distinct summands")
        for x in s:
            for y in s:
                if ext_dim(x, y):
                    raise ValueError(f"Ext^1({x.dims}, {y.dims}) != 0")
        if bareiss_det([t.dims for t in s]) not in (1, -1):
            raise ValueError("summand dimension vectors do not form a lattice basis")

    @property
    def quiver(self) -> Quiver:
        return self.summands[0].quiver

    def summand_dims(self) -> list[tuple[int, ...]]:
        return [t.dims for t in self.summands]

    def to_json(self) -> dict:
        return {
            "n": self.quiver.n,
            "arrows": [list(a) for a in self.quiver.one_based()],
            "summand_dims": [list(d) for d in self.summand_dims()],
        }


def tilting_from_dims(q: Quiver, dims: Iterable[Sequence[int]]) -> TiltingModule:
    return TiltingModule(tuple(build_indecomposable(q, d) for d in dims))


def tilting_from_json(data: dict) -> TiltingModule:
    """Read {"summand_dims": [...]} plus either "arrows" (1-based) or "type"/"rank"."""
    if "arrows" in data:
        n = data.get("n") or data.get("rank") or len(data["summand_dims"])
        q = Quiver.from_one_based(n, [tuple(a) for a in data["arrows"]])
    else:
        from .exchange import dynkin_quiver

        q = dynkin_quiver(data["type"], data["rank"])
    return tilting_from_dims(q, data["summand_dims"])


def projective_tilting(q: Quiver) -> TiltingModule:
    return TiltingModule(tuple(projective(q, i) for i in range(q.n)))


def ext_table(mods: Sequence[Representation]) -> list[list[int]]:
    return [[ext_dim(x, y) for y in mods] for x in mods]


def tilting_modules(q: Quiver, cap: int = 10_000) -> list[TiltingModule]:
    """Basic tilting modules as n-cliques of the Ext-orthogonality graph.

    Bron-Kerbosch with pivoting, restricted to cliques that can still reach
    size n.  Summands are listed in canonical root order.
    """
    mods = indecomposables(q)
    table = ext_table(mods)
    m = len(mods)
    adj = [
        {y for y in range(m) if y != x and table[x][y] == 0 and table[y][x] == 0}
        for x in range(m)
    ]
    target = q.n
    found: list[tuple[int, ...]] = []

    def bk(r: list[int], p: set[int], x: set[int]) -> None:
        if len(found) >= cap or len(r) + len(p) < target:
            return
        if len(r) == target:
            found.append(tuple(sorted(r)))
            return
        if not p:
            return
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in sorted(p - adj[pivot]):
            bk(r + [v], p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    bk([], set(range(m)), set())
    found.sort()
    return [TiltingModule(tuple(mods[i] for i in clique)) for clique in found]


# -- Ringel's map ----------------------------------------------------------------


@dataclass(frozen=True)
class RingelMap:
    g: IntMatrix

    def __post_init__(self):
        if bareiss_det(self.g) not in (1, -1):
            raise ValueError("Ringel map must be unimodular")

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        return matvec(self.g, x)


def ringel_matrix(t: TiltingModule) -> RingelMap:
    """Row i is (dim T_i)^T e, so g(x)_i = <dim T_i, x>."""
    e = euler_form(t.quiver)
    n = t.quiver.n
    rows = [tuple(sum(d[s] * e.e[s][j] for s in range(n)) for j in range(n)) for d in t.summand_dims()]
    return RingelMap(tuple(rows))


def phi_B_positive(g: RingelMap, rs: RootSystem) -> frozenset[tuple[int, ...]]:
    return frozenset(g(a) for a in rs.positive_roots)


def abs_vector(v: Sequence[int]) -> tuple[int, ...]:
    return tuple(abs(x) for x in v)


def abs_set(vs: Iterable[Sequence[int]]) -> frozenset[tuple[int, ...]]:
    return frozenset(abs_vector(v) for v in vs)


def companion_from_ringel(g: RingelMap, rs: RootSystem) -> list[Root]:
    """Positive roots x_1..x_n with abs(g(x_i)) = e_i."""
    n = rs.rank
    hits: list[list[Root]] = [[] for _ in range(n)]
    for a in rs.positive_roots:
        v = abs_vector(g(a))
        if sum(v) == 1:
            hits[v.index(1)].append(a)
    out = []
    for i, h in enumerate(hits):
        if not h:
            raise ArithmeticError(f"no positive root maps to +-e_{i + 1}")
        if len(h) > 1:
            raise ArithmeticError(f"{len(h)} positive roots map to +-e_{i + 1}")
        out.append(h[0])
    return out


def end_quiver(t: TiltingModule) -> Quiver:
    """Quiver of End(T): arrows i -> j count irreducible maps T_j -> T_i in add T.

    Irreducible maps T_j -> T_i are Hom(T_j, T_i) modulo the span of
    composites T_j -> T_k -> T_i with k distinct from i and j (endomorphism
    rings of the summands are the scalars).
    """
    s = t.summands
    n = len(s)
    bases = {(x, y): hom_basis(s[x], s[y]) for x in range(n) for y in range(n) if x != y}
    arrows = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            direct = bases[(j, i)]
            if not direct:
                continue
            composites = [
                _flatten(compose(g, f, s[k], s[j]))
                for k in range(n)
                if k not in (i, j)
                for f, g in product(bases[(j, k)], bases[(k, i)])
            ]
            irr = len(direct) - (rank(composites) if composites else 0)
            arrows.extend([(i, j)] * irr)
    return Quiver(n, tuple(arrows))
