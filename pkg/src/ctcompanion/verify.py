"""Cross-check companion-basis d-vectors, positive c-vectors and Ringel's map.

For a seed, the d-set of every companion basis found must be one and the
same set, and it must equal the set of positive c-vectors.  For a tilting
module T, abs(g(Phi+)) must be the positive c-vector set of some seed in
the mutation class, and the roots sent to +-e_i by g must form a companion
basis for that seed.
"""

from __future__ import annotations

import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .companion import SearchLimits, d_set, is_companion_basis, search_companion_bases
from .exchange import (
    Mat,
    Quiver,
    Seed,
    canonical_form,
    dynkin_quiver,
    exchange_graph,
    initial_seed,
    permute_matrix,
    positive_c_vectors,
    seed_from_matrix,
    sorted_class,
)
from .linalg import inverse_unimodular, matvec, transpose
from .repq import (
    TiltingModule,
    abs_set,
    companion_from_ringel,
    euler_form,
    phi_B_positive,
    ringel_matrix,
    tilting_modules,
)
from .root_system import RootSystem, canonical_order, root_system

log = logging.getLogger(__name__)

# Default sweep and the opt-in extensions.
DEFAULT_SWEEP = [("A", n) for n in range(2, 7)] + [("D", 4), ("D", 5)]
EXTENDED_SWEEP = [("A", 7), ("A", 8), ("D", 6), ("E", 6)]
DEEP_SWEEP = [("E", 7), ("E", 8)]


@dataclass(frozen=True)
class VerifyOptions:
    max_bases: int = 64
    signed: bool = False
    with_tilting: bool = False
    tilting_cap: int = 10_000
    all_labeled: bool = False
    jobs: int = 1


def _vectors(vs: Iterable[Sequence[int]]) -> list[list[int]]:
    return [list(v) for v in canonical_order(tuple(v) for v in vs)]


@dataclass
class VerificationReport:
    seed_id: str
    b: Mat
    companion_bases_found: int
    d_sets_all_equal: bool
    d_set: frozenset
    c_set: frozenset
    ringel_matches: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (
            self.companion_bases_found >= 1
            and self.d_sets_all_equal
            and self.d_set == self.c_set
            and all(ok for _, ok in self.ringel_matches)
        )

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def diagnostics(self) -> dict:
        return {
            "only_in_d_set": _vectors(self.d_set - self.c_set),
            "only_in_c_set": _vectors(self.c_set - self.d_set),
        }

    def to_json(self) -> dict:
        out = {
            "seed_id": self.seed_id,
            "b": [list(r) for r in self.b],
            "companion_bases_found": self.companion_bases_found,
            "d_sets_all_equal": self.d_sets_all_equal,
            "d_set": _vectors(self.d_set),
            "c_set": _vectors(self.c_set),
            "ringel_matches": [{"summand_dims": [list(d) for d in dims], "matched": ok} for dims, ok in self.ringel_matches],
            "verdict": self.verdict,
        }
        if not self.passed:
            out["diagnostics"] = self.diagnostics()
        return out


def verify_seed(s: Seed, rs: RootSystem, opts: VerifyOptions = VerifyOptions(), seed_id: str = "") -> VerificationReport:
    t0 = time.perf_counter()
    bases = search_companion_bases(s.b, rs, SearchLimits(opts.max_bases, opts.signed))
    t1 = time.perf_counter()
    dsets = {d_set(cb, rs) for cb in bases}
    c_set = frozenset(positive_c_vectors(seed_from_matrix(s.b)))
    t2 = time.perf_counter()
    report = VerificationReport(
        seed_id=seed_id or _matrix_id(s.b),
        b=s.b,
        companion_bases_found=len(bases),
        d_sets_all_equal=len(dsets) <= 1,
        d_set=next(iter(dsets)) if len(dsets) == 1 else frozenset().union(*dsets),
        c_set=c_set,
        timings={"companion_search_s": t1 - t0, "d_and_c_sets_s": t2 - t1},
    )
    if not bases:
        log.error("no companion basis found for %s", report.seed_id)
    elif not report.passed:
        log.error("counterexample at %s: %s", report.seed_id, report.diagnostics())
    return report


def _matrix_id(b: Mat) -> str:
    return ";".join(",".join(str(x) for x in row) for row in b)


# -- Ringel realizations -----------------------------------------------------------


@dataclass
class RingelRealization:
    summand_dims: list
    abs_set: frozenset
    psi: list
    matched: list  # exchange matrices whose positive c-vectors equal abs_set
    companion_for: list  # the subset of matched for which psi is a companion basis
    d_set_ok: bool

    @property
    def passed(self) -> bool:
        return bool(self.matched) and bool(self.companion_for) and self.d_set_ok

    def to_json(self) -> dict:
        return {
            "summand_dims": [list(d) for d in self.summand_dims],
            "psi": [list(r) for r in self.psi],
            "abs_set": _vectors(self.abs_set),
            "matched_b": [[list(r) for r in b] for b in self.matched],
            "companion_for_b": [[list(r) for r in b] for b in self.companion_for],
            "d_set_ok": self.d_set_ok,
            "verdict": "pass" if self.passed else "fail",
        }


def coordinate_permutations(source: frozenset, target: frozenset, n: int) -> list[tuple[int, ...]]:
    """All p with {(v[p[0]], ..., v[p[n-1]]) : v in source} == target."""
    if len(source) != len(target):
        return []

    def signature(vs, t):
        return tuple(sorted(v[t] for v in vs))

    src_sig = [signature(source, t) for t in range(n)]
    tgt_sig = [signature(target, t) for t in range(n)]
    options = [[s for s in range(n) if src_sig[s] == tgt_sig[t]] for t in range(n)]
    out = []
    for p in itertools.product(*options):
        if len(set(p)) != n:
            continue
        if frozenset(tuple(v[s] for s in p) for v in source) == target:
            out.append(p)
    return out


def _roots_dset(gammas: Sequence[Sequence[int]], rs: RootSystem) -> frozenset:
    inv = inverse_unimodular(transpose(gammas))
    return frozenset(tuple(abs(x) for x in matvec(inv, a)) for a in rs.positive_roots)


def _check_orientation(q: Quiver, rs: RootSystem) -> None:
    if euler_form(q).symmetrized() != rs.datum.cartan:
        raise ValueError(f"quiver is not an orientation of the {rs.name} diagram")


def verify_ringel_realization(
    q: Quiver,
    t: TiltingModule,
    seeds: Sequence[Seed | Mat],
    rs: RootSystem,
    c_sets: Sequence[frozenset] | None = None,
) -> RingelRealization:
    """Match abs(g(Phi+)) against the positive c-vectors of the given seeds.

    Each candidate exchange matrix is tried under every vertex relabelling
    that carries its c-vector set onto abs(g(Phi+)); all matches are kept.
    """
    _check_orientation(q, rs)
    if t.quiver != q:
        raise ValueError("tilting module lives on a different quiver")
    g = ringel_matrix(t)
    target = abs_set(phi_B_positive(g, rs))
    mats = [s.b if isinstance(s, Seed) else s for s in seeds]
    if c_sets is None:
        c_sets = [frozenset(positive_c_vectors(seed_from_matrix(b))) for b in mats]
    matched: list[Mat] = []
    for b, cs in zip(mats, c_sets):
        for p in coordinate_permutations(cs, target, rs.rank):
            pb = permute_matrix(b, p)
            if pb not in matched:
                matched.append(pb)
    matched.sort()
    psi = companion_from_ringel(g, rs)
    companion_for = [b for b in matched if is_companion_basis(psi, b, rs.datum)]
    return RingelRealization(
        summand_dims=t.summand_dims(),
        abs_set=target,
        psi=psi,
        matched=matched,
        companion_for=companion_for,
        d_set_ok=_roots_dset(psi, rs) == target,
    )


# -- whole mutation classes --------------------------------------------------------


@dataclass
class ClassReport:
    type_letter: str
    rank: int
    seeds: list
    realizations: list
    timings: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.seeds) and all(r.passed for r in self.realizations)

    def violations(self) -> list[Mat]:
        return [r.b for r in self.seeds if not r.passed]

    def summary(self) -> str:
        bad = len(self.violations())
        bad_ringel = sum(not r.passed for r in self.realizations)
        line = (
            f"{self.type_letter}{self.rank}: {len(self.seeds)} seeds verified, "
            f"{bad} violations"
        )
        if self.realizations:
            line += f", {len(self.realizations)} tilting realizations, {bad_ringel} failed"
        return line + (" -> PASS" if self.passed else " -> FAIL")

    def to_json(self) -> dict:
        return {
            "type": self.type_letter,
            "rank": self.rank,
            "quiver_classes": len(self.seeds),
            "seeds": [r.to_json() for r in self.seeds],
            "realizations": [r.to_json() for r in self.realizations],
            "violations": [[list(row) for row in b] for b in self.violations()],
            "verdict": "pass" if self.passed else "fail",
        }


def _verify_one(args) -> VerificationReport:
    b, type_letter, rank, opts = args
    return verify_seed(seed_from_matrix(b), root_system(type_letter, rank), opts)


def class_representatives(type_letter: str, rank: int, all_labeled: bool = False) -> list[Mat]:
    q = dynkin_quiver(type_letter, rank)
    if all_labeled:
        return sorted({s.b for s in exchange_graph(initial_seed(q))})
    return sorted_class(q.exchange_matrix())


def verify_class(type_letter: str, rank: int, opts: VerifyOptions = VerifyOptions()) -> ClassReport:
    t0 = time.perf_counter()
    rs = root_system(type_letter, rank)
    reps = class_representatives(type_letter, rank, opts.all_labeled)
    work = [(b, type_letter, rank, opts) for b in reps]
    if opts.jobs > 1:
        with ProcessPoolExecutor(max_workers=opts.jobs) as ex:
            seeds = list(ex.map(_verify_one, work, chunksize=4))
    else:
        seeds = [_verify_one(w) for w in work]
    t1 = time.perf_counter()
    realizations = []
    if opts.with_tilting:
        q = dynkin_quiver(type_letter, rank)
        by_canon = {canonical_form(r.b): r for r in seeds}
        for t in tilting_modules(q, cap=opts.tilting_cap):
            real = verify_ringel_realization(q, t, [r.b for r in seeds], rs, [r.c_set for r in seeds])
            realizations.append(real)
            hits = {canonical_form(b) for b in real.matched}
            for canon in sorted(hits):
                if canon in by_canon:
                    by_canon[canon].ringel_matches.append((real.summand_dims, real.passed))
    t2 = time.perf_counter()
    return ClassReport(
        type_letter,
        rank,
        seeds,
        realizations,
        timings={"seeds_s": t1 - t0, "tilting_s": t2 - t1},
    )


def identify_dynkin_type(b: Sequence[Sequence[int]]) -> tuple[str, int]:
    """Dynkin type of a finite-type exchange matrix.

    Within one rank the number of positive c-vectors (= |Phi+|) already
    separates A, D and E.
    """
    from .root_system import classical_positive_count

    n = len(b)
    count = len(positive_c_vectors(seed_from_matrix(b)))
    for t, ok in (("A", n >= 1), ("D", n >= 4), ("E", n in (6, 7, 8))):
        if ok and classical_positive_count(t, n) == count:
            return t, n
    raise ValueError(f"no simply-laced Dynkin type of rank {n} has {count} positive roots")
