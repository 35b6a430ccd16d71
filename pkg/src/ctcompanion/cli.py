"""Command line front end.

Vertex numbers on the command line and in every file format are 1-based,
matching the usual labelling of Dynkin diagrams.  Exit status: 0 when all
checks pass, 1 when a verification counterexample is found, 2 on bad usage
or an internal error.

Relative output paths are resolved against ``$CTCOMPANION_OUTDIR`` when it
is set.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
import time
from pathlib import Path

from . import companion, exchange, repq, verify
from .exchange import Quiver, Seed
from .root_system import root_system

log = logging.getLogger("ctcompanion")

OUTDIR_ENV = "CTCOMPANION_OUTDIR"


class UsageError(Exception):
    pass


def _out_path(name: str) -> Path:
    p = Path(name)
    base = os.environ.get(OUTDIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


_FLAT_LIST = re.compile(r"\[\s*(-?\d+(?:,\s*-?\d+)*)\s*\]")


def _dump(data) -> str:
    """Indented, key-sorted JSON with all-integer lists kept on one line."""
    text = json.dumps(data, sort_keys=True, indent=2)
    text = _FLAT_LIST.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]", text)
    return text + "\n"


def _emit_json(data, path: str | None) -> None:
    text = _dump(data)
    if path:
        _out_path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _parse_mutations(text: str | None, n: int) -> list[int]:
    if not text:
        return []
    try:
        ks = [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError as exc:
        raise UsageError(f"bad --mutations list {text!r}") from exc
    for k in ks:
        if not 1 <= k <= n:
            raise UsageError(f"mutation vertex {k} outside 1..{n}")
    return [k - 1 for k in ks]


def _parse_arrows(text: str, n: int) -> Quiver:
    arrows = []
    for tok in text.replace(" ", "").split(","):
        if not tok:
            continue
        try:
            i, j = (int(x) for x in tok.replace("->", ">").split(">"))
        except ValueError as exc:
            raise UsageError(f"bad arrow {tok!r}; use e.g. '2>3,4>3,3>1'") from exc
        arrows.append((i, j))
    return Quiver.from_one_based(n, arrows)


def _require_type(args) -> None:
    if not args.type or not args.rank:
        raise UsageError("--type and --rank are required")


def _base_quiver(args) -> Quiver:
    _require_type(args)
    if getattr(args, "arrows", None):
        return _parse_arrows(args.arrows, args.rank)
    return exchange.dynkin_quiver(args.type, args.rank)


def _load_seed(args) -> tuple[Seed, str, int]:
    """Seed from --seed, or from the Dynkin orientation plus --mutations."""
    if getattr(args, "seed", None):
        data = json.loads(Path(args.seed).read_text())
        seed = Seed.from_json(data)
        t = args.type or data.get("type")
        r = args.rank or data.get("rank")
        if not t:
            t, r = verify.identify_dynkin_type(seed.b)
        return seed, t, int(r)
    q = _base_quiver(args)
    seed = exchange.initial_seed(q)
    seed = exchange.mutate_sequence(seed, _parse_mutations(getattr(args, "mutations", None), q.n))
    return seed, args.type.upper(), args.rank


def cmd_roots(args) -> int:
    _require_type(args)
    rs = root_system(args.type, args.rank)
    _emit_json(rs.to_json(), args.json)
    return 0


def cmd_mutate(args) -> int:
    seed, t, r = _load_seed(args)
    if args.seed and args.mutations:
        seed = exchange.mutate_sequence(seed, _parse_mutations(args.mutations, seed.n))
    data = seed.to_json()
    data.update(type=t, rank=r)
    if args.emit:
        _out_path(args.emit).write_text(exchange.quiver_to_dot(seed.quiver()))
    _emit_json(data, args.json)
    return 0


def cmd_mutation_class(args) -> int:
    q = _base_quiver(args)
    members = exchange.sorted_class(q.exchange_matrix())
    _emit_json(
        {
            "type": args.type.upper(),
            "rank": args.rank,
            "size": len(members),
            "members": [[list(r) for r in b] for b in members],
        },
        args.json,
    )
    return 0


def cmd_companion(args) -> int:
    seed, t, r = _load_seed(args)
    rs = root_system(t, r)
    bases = companion.search_companion_bases(seed.b, rs, companion.SearchLimits(args.max, args.signed))
    dsets = {companion.d_set(cb, rs) for cb in bases}
    out = {
        "bases": [[list(g) for g in cb.gammas] for cb in bases],
        "d_set": [list(v) for v in companion.sorted_vectors(next(iter(dsets)))] if len(dsets) == 1 else None,
    }
    if len(dsets) > 1:
        out["distinct_d_sets"] = len(dsets)
    _emit_json(out, args.json)
    if not bases:
        log.error("no companion basis found")
        return 1
    return 0 if len(dsets) == 1 else 1


def cmd_dvectors(args) -> int:
    seed, t, r = _load_seed(args)
    rs = root_system(t, r)
    bases = companion.search_companion_bases(seed.b, rs, companion.SearchLimits(1, False))
    if not bases:
        log.error("no companion basis found")
        return 1
    cb = bases[0]
    _emit_json(
        {
            "basis": [list(g) for g in cb.gammas],
            "d_vectors": [
                {"root": list(a), "coefficients": list(companion.expand_in_basis(a, cb)), "d": list(companion.d_vector(a, cb))}
                for a in rs.positive_roots
            ],
            "d_set": [list(v) for v in companion.sorted_vectors(companion.d_set(cb, rs))],
        },
        args.json,
    )
    return 0


def cmd_cvectors(args) -> int:
    seed, _, _ = _load_seed(args)
    cs = exchange.positive_c_vectors(exchange.seed_from_matrix(seed.b))
    _emit_json({"b": [list(r) for r in seed.b], "positive_c_vectors": [list(v) for v in companion.sorted_vectors(cs)]}, args.json)
    return 0


def cmd_tilting(args) -> int:
    q = _base_quiver(args)
    mods = repq.tilting_modules(q, cap=args.cap)
    out = {"type": args.type.upper(), "rank": args.rank, "count": len(mods)}
    if args.list:
        out["tilting_modules"] = [t.to_json() for t in mods]
    _emit_json(out, args.json)
    return 0


def cmd_ringel(args) -> int:
    data = json.loads(Path(args.tilting).read_text())
    t = repq.tilting_from_json(data)
    n = t.quiver.n
    if data.get("type"):
        rs = root_system(data["type"], data.get("rank", n))
    else:
        rs = root_system(*verify.identify_dynkin_type(t.quiver.exchange_matrix()))
    if repq.euler_form(t.quiver).symmetrized() != rs.datum.cartan:
        raise UsageError(f"the quiver is not an orientation of the standard {rs.name} diagram")
    g = repq.ringel_matrix(t)
    phi = repq.phi_B_positive(g, rs)
    out = {"g": [list(r) for r in g.g]}
    if args.emit in ("phi_B", "all"):
        out["phi_B_positive"] = [list(v) for v in sorted(phi)]
    if args.emit in ("abs", "all"):
        out["abs_set"] = [list(v) for v in companion.sorted_vectors(repq.abs_set(phi))]
    if args.emit in ("psi", "all"):
        out["psi"] = [list(x) for x in repq.companion_from_ringel(g, rs)]
    if args.emit in ("end_quiver", "all"):
        out["end_quiver_arrows"] = [list(a) for a in repq.end_quiver(t).one_based()]
    _emit_json(out, args.json)
    return 0


def cmd_verify(args) -> int:
    if args.type:
        if not args.rank:
            raise UsageError("--rank is required with --type")
        targets = [(args.type.upper(), args.rank)]
    else:
        targets = list(verify.DEFAULT_SWEEP)
        if args.extended or args.deep:
            targets += verify.EXTENDED_SWEEP
        if args.deep:
            targets += verify.DEEP_SWEEP
    opts = verify.VerifyOptions(
        max_bases=args.max,
        signed=args.signed,
        with_tilting=args.with_tilting,
        tilting_cap=args.tilting_cap,
        all_labeled=args.all_labeled,
        jobs=args.jobs,
    )
    reports, timings = [], {}
    for t, r in targets:
        t0 = time.perf_counter()
        rep = verify.verify_class(t, r, opts)
        timings[f"{t}{r}"] = round(time.perf_counter() - t0, 3)
        print(rep.summary(), file=sys.stderr if args.json is None else sys.stdout)
        reports.append(rep)
    ok = all(r.passed for r in reports)
    if args.json:
        _emit_json(
            {
                "report": {"classes": [r.to_json() for r in reports], "verdict": "pass" if ok else "fail"},
                "timings": timings,
            },
            args.json,
        )
    return 0 if ok else 1


def _add_type(p, required=False):
    p.add_argument("--type", choices=["A", "D", "E", "a", "d", "e"], required=required)
    p.add_argument("--rank", type=int, required=required)


def _add_seed(p):
    _add_type(p)
    p.add_argument("--seed", help="seed JSON file ({'b': ..., 'c': ..., 'history': ...})")
    p.add_argument("--arrows", help="initial orientation, e.g. '2>3,4>3,3>1'")
    p.add_argument("--mutations", help="comma separated mutation vertices, e.g. '3,1,2'")
    p.add_argument("--json", help="write JSON here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ctcompanion", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", help="positive roots of a Dynkin type")
    _add_type(p, required=True)
    p.add_argument("--json")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("mutate", help="mutate the Dynkin orientation (or a seed file)")
    _add_seed(p)
    p.add_argument("--emit", help="write the mutated quiver as DOT")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("mutation-class", help="quivers in the mutation class, up to isomorphism")
    _add_type(p, required=True)
    p.add_argument("--arrows")
    p.add_argument("--json")
    p.set_defaults(func=cmd_mutation_class)

    p = sub.add_parser("companion", help="companion basis search")
    csub = p.add_subparsers(dest="action", required=True)
    s = csub.add_parser("search")
    _add_seed(s)
    s.add_argument("--signed", action="store_true", help="allow negative roots")
    s.add_argument("--max", type=int, default=64)
    s.set_defaults(func=cmd_companion)

    p = sub.add_parser("dvectors", help="d-vectors of all positive roots in one companion basis")
    _add_seed(p)
    p.set_defaults(func=cmd_dvectors)

    p = sub.add_parser("cvectors", help="positive c-vectors of a seed")
    _add_seed(p)
    p.set_defaults(func=cmd_cvectors)

    p = sub.add_parser("tilting", help="tilting modules over a Dynkin orientation")
    _add_type(p, required=True)
    p.add_argument("--arrows")
    p.add_argument("--list", action="store_true")
    p.add_argument("--cap", type=int, default=10_000)
    p.add_argument("--json")
    p.set_defaults(func=cmd_tilting)

    p = sub.add_parser("ringel", help="Ringel's map for a tilting module file")
    p.add_argument("--tilting", required=True)
    p.add_argument("--emit", choices=["phi_B", "abs", "psi", "end_quiver", "all"], default="all")
    p.add_argument("--json")
    p.set_defaults(func=cmd_ringel)

    p = sub.add_parser("verify", help="check d-sets against c-vectors over mutation classes")
    _add_type(p)
    p.add_argument("--extended", action="store_true", help="add A7, A8, D6, E6 to the sweep")
    p.add_argument("--deep", action="store_true", help="also E7 and E8")
    p.add_argument("--with-tilting", action="store_true")
    p.add_argument("--tilting-cap", type=int, default=10_000)
    p.add_argument("--all-labeled", action="store_true", help="every labelled exchange matrix, not one per class")
    p.add_argument("--signed", action="store_true")
    p.add_argument("--max", type=int, default=64, help="companion bases per seed")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, AssertionError, OSError, KeyError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
