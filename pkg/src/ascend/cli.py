"""Command-line interface.

Exit status: 0 when everything checks out, 1 when a computed result
contradicts the data or an identity fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from pathlib import Path

from . import bounds as bnd
from .catalog import CatalogEntry, CatalogError, load_catalog, validate_witnesses
from .diagram import (
    DiagramError,
    LinkDiagram,
    Marking,
    ascending_count,
    enumerate_markings,
    marking_to_json,
    min_ascending,
    parse_pd,
    reverse_marking,
)
from .generators import connected_sum, random_braid_diagram
from .moves import ALL_FAMILIES
from .search import DEFAULT_NODE_CAP, search_upper_bound

OK, CONTRADICTION, INPUT_ERROR = 0, 1, 2
DEFAULT_SEED = 20240601

log = logging.getLogger("ascend")


class InputError(Exception):
    pass


# -- helpers -----------------------------------------------------------------


def _read_pd(arg: str) -> LinkDiagram:
    if arg == "-":
        text = sys.stdin.read()
    elif Path(arg).is_file():
        text = Path(arg).read_text()
    else:
        text = arg
    text = text.strip()
    if text.startswith("{"):
        text = json.loads(text)["pd"]
    return parse_pd(text)


def _moves(text: str) -> frozenset[str]:
    fams = frozenset(t.strip().lower() for t in text.split(",") if t.strip())
    bad = fams - ALL_FAMILIES
    if not fams or bad:
        raise argparse.ArgumentTypeError(f"--moves takes a subset of r1,r2,r3 (got {text!r})")
    return fams


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _emit_witness(path: str | None, d: LinkDiagram, m: Marking) -> None:
    if path is None:
        return
    obj = {"pd": d.to_pd(), "marking": marking_to_json(m), "ascending_count": ascending_count(d, m)}
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")


def _out(args, obj: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(obj, indent=2))
    else:
        print("\n".join(lines))


def _catalog(args) -> list[CatalogEntry]:
    return load_catalog(args.catalog)


def _by_name(entries: list[CatalogEntry], name: str) -> CatalogEntry:
    for e in entries:
        if e.name == name:
            return e
    raise InputError(f"no catalog entry named {name!r}")


def _bounds_json(b: bnd.BoundSet) -> dict:
    return {
        "lower": b.lower,
        "lower_source": b.lower_source,
        "upper": b.upper,
        "upper_source": b.upper_source,
        "exact": b.exact,
    }


# -- commands ----------------------------------------------------------------


def cmd_ascend(args) -> int:
    d = _read_pd(args.pd)
    value, m = min_ascending(d)
    rev = reverse_marking(d, m)
    rev_value = ascending_count(d, rev)
    identity = value + rev_value == d.n_crossings
    cb = bnd.crossing_upper_bound(d.n_crossings, d.is_knot)
    _emit_witness(args.emit_witness, d, m)
    obj = {
        "crossings": d.n_crossings,
        "components": d.n_components,
        "a_min": value,
        "marking": marking_to_json(m),
        "crossing_bound": cb,
        "reversal": {"a": value, "a_reversed": rev_value, "sum": value + rev_value, "holds": identity},
    }
    _out(args, obj, [
        f"c = {d.n_crossings}, n = {d.n_components}",
        f"a_min(diagram) = {value}",
        f"marking: {json.dumps(marking_to_json(m))}",
        f"crossing bound: {cb}",
        f"reversal: {value} + {rev_value} = {value + rev_value} "
        f"({'ok' if identity else 'FAILED'}, c = {d.n_crossings})",
    ])
    return OK if identity and value <= cb else CONTRADICTION


def cmd_search(args) -> int:
    d = _read_pd(args.pd)
    cap = args.crossing_cap if args.crossing_cap is not None else d.n_crossings + 2
    if cap < d.n_crossings:
        raise InputError(f"--crossing-cap {cap} is below the diagram's {d.n_crossings} crossings")
    t0 = time.perf_counter()
    rep = search_upper_bound(d, cap, args.node_cap, args.moves, args.target)
    elapsed = time.perf_counter() - t0
    _emit_witness(args.emit_witness, rep.witness_diagram, rep.witness_marking)
    obj = {
        "best_value": rep.best_value,
        "nodes": rep.nodes,
        "frontier_exhausted": rep.frontier_exhausted,
        "crossing_cap": rep.budget[0],
        "node_cap": rep.budget[1],
        "moves": sorted(args.moves),
        "witness_pd": rep.witness_diagram.to_pd(),
        "witness_marking": marking_to_json(rep.witness_marking),
        "seconds": round(elapsed, 3),
    }
    _out(args, obj, [
        f"best value: {rep.best_value}",
        f"nodes: {rep.nodes} (frontier {'exhausted' if rep.frontier_exhausted else 'not exhausted'})",
        f"budget: crossing cap {cap}, node cap {args.node_cap}, moves {','.join(sorted(args.moves))}",
        f"witness: {rep.witness_diagram.to_pd()}",
        f"marking: {json.dumps(marking_to_json(rep.witness_marking))}",
    ])
    return OK


def cmd_bounds(args) -> int:
    entries = _catalog(args)
    e = _by_name(entries, args.name)
    if args.search:
        rep = search_upper_bound(e.diagram, args.crossing_cap, args.node_cap, args.moves,
                                 bnd.lower_bound(e)[0])
        b = bnd.certify(e, rep)
        _emit_witness(args.emit_witness, rep.witness_diagram, rep.witness_marking)
    else:
        b = bnd.certify_entry(e)
    obj = {"name": e.name, "known_a": [e.a_lo, e.a_hi], **_bounds_json(b)}
    _out(args, obj, [
        f"{e.name}: a = {b.as_text()}",
        f"lower {b.lower} from {b.lower_source}; upper {b.upper} from {b.upper_source}",
    ])
    return OK


def _row_status(e: CatalogEntry, b: bnd.BoundSet) -> str:
    if b.lower > e.a_hi or b.upper < e.a_lo:
        return "contradiction"
    if (b.lower, b.upper) == (e.a_lo, e.a_hi):
        return "ok"
    return "unresolved"


def _known_text(e: CatalogEntry) -> str:
    return str(e.a_lo) if e.a_lo == e.a_hi else f"{e.a_lo} or {e.a_hi}"


def cmd_table(args) -> int:
    entries = [e for e in _catalog(args) if args.all or not e.extra]
    rows = []
    failed = False
    for e in entries:
        try:
            b = bnd.certify_entry(e)
        except bnd.IntegrityError as exc:
            rows.append({"name": e.name, "status": "integrity-failure", "error": str(exc)})
            failed = True
            continue
        status = _row_status(e, b)
        failed |= status != "ok"
        rows.append({
            "name": e.name, "u": e.unknotting, "b": e.bridge, "known_a": _known_text(e),
            "certified": b.as_text(), **_bounds_json(b), "status": status,
        })
    lines = [f"{'K':<6}{'a(K)':>7}{'u':>4}{'b':>4}   {'lower (source)':<26}{'upper (source)':<24}status"]
    for r in rows:
        if r["status"] == "integrity-failure":
            lines.append(f"{r['name']:<6}  integrity failure: {r['error']}")
            continue
        lines.append(
            f"{r['name']:<6}{r['certified']:>7}{r['u']:>4}{r['b']:>4}   "
            f"{str(r['lower']) + ' (' + r['lower_source'] + ')':<26}"
            f"{str(r['upper']) + ' (' + r['upper_source'] + ')':<24}{r['status']}"
        )
    n_ok = sum(r["status"] == "ok" for r in rows)
    lines.append(f"{n_ok}/{len(rows)} rows reproduced")
    _out(args, {"rows": rows, "reproduced": n_ok, "total": len(rows)}, lines)
    return CONTRADICTION if failed else OK


def cmd_validate(args) -> int:
    entries = _catalog(args)
    rep = validate_witnesses(entries)
    integrity = []
    for e in entries:
        try:
            bnd.certify_entry(e)
        except bnd.IntegrityError as exc:
            integrity.append(str(exc))
    obj = {
        "entries": len(entries),
        "witnesses_checked": len(rep.checked),
        "mismatches": [{"name": n, "recomputed": v, "expected": x} for n, v, x in rep.mismatches],
        "missing": rep.missing,
        "integrity_failures": integrity,
    }
    lines = [f"{len(entries)} entries, {len(rep.checked)} stored witnesses recomputed"]
    lines += [f"mismatch: {n} recomputes to {v}, expected {x}" for n, v, x in rep.mismatches]
    lines += [f"missing witness: {n}" for n in rep.missing]
    lines += [f"integrity failure: {msg}" for msg in integrity]
    if rep.ok and not integrity:
        lines.append("catalog ok")
    _out(args, obj, lines)
    return OK if rep.ok and not integrity else CONTRADICTION


# -- experiments ---------------------------------------------------------------


def _experiment_connected_sum(args) -> int:
    entries = _catalog(args)
    names = args.knots or ["8_17"]
    if args.n is not None:
        if len(names) != 1:
            raise InputError("--n takes a single knot name")
        if args.n < 1:
            raise InputError("--n must be positive")
        names = names * args.n
    parts = [_by_name(entries, n) for n in names]
    for p in parts:
        if p.n_components != 1:
            raise InputError(f"{p.name} is not a knot")
    d, m = None, None
    counts = []
    for p in parts:
        w = p.witness()
        pd_, pm = w if w is not None else (p.diagram, min_ascending(p.diagram)[1])
        counts.append(ascending_count(pd_, pm))
        d, m = (pd_, pm) if d is None else connected_sum(d, pd_, m, pm)
    total = ascending_count(d, m)
    k = len(parts)
    bridge = sum(p.bridge for p in parts) - (k - 1)  # Schubert
    # sums of two or more nontrivial knots are composite, hence not twist knots
    nontwist = k > 1 or not parts[0].is_twist
    lower = max(bridge - 1, 2 if nontwist else 1)
    u_upper = sum(p.unknotting for p in parts)
    additive = total == sum(counts)
    obj = {
        "knots": names,
        "part_counts": counts,
        "sum_count": total,
        "additive": additive,
        "crossings": d.n_crossings,
        "bridge": bridge,
        "a_lower": lower,
        "u_upper": u_upper,
        "gap_at_least": lower - u_upper,
    }
    _out(args, obj, [
        f"{' # '.join(names)}: {d.n_crossings} crossings",
        f"ascending count of spliced marking: {total} = {' + '.join(map(str, counts))} "
        f"({'additive' if additive else 'NOT additive'})",
        f"b = {bridge}, so a >= {lower}; u <= {u_upper}; gap a - u >= {lower - u_upper}",
    ])
    return OK if additive else CONTRADICTION


def _parse_pair(text: str) -> tuple[int, int]:
    try:
        p, q = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"torus parameters look like p,q (got {text!r})") from exc
    return p, q


def _experiment_torus(args) -> int:
    pairs = [_parse_pair(t) for t in (args.pairs or ["2,3", "2,5", "2,7", "3,4", "3,5"])]
    results, lines, good = [], [], True
    for p, q in pairs:
        try:
            b, (ca, cb) = bnd.certify_torus(p, q)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        formula = bnd.torus_ascending(p, q)
        ok = ca + cb == (p - 1) * (q - 1) and b.exact and b.lower == formula
        good &= ok
        results.append({"p": p, "q": q, "counts": [ca, cb], "sum": ca + cb, "formula": formula,
                        **_bounds_json(b), "ok": ok})
        lines.append(f"T({p},{q}): proof markings {ca} + {cb} = {ca + cb}, formula a = {formula}, "
                     f"certified {b.as_text()} {'ok' if ok else 'FAILED'}")
    _out(args, {"torus": results}, lines)
    return OK if good else CONTRADICTION


def _experiment_reversal(args) -> int:
    rng = random.Random(args.seed)
    failures, markings = 0, 0
    for _ in range(args.count):
        d = random_braid_diagram(rng, args.max_crossings, args.max_components)
        for m in enumerate_markings(d):
            markings += 1
            if ascending_count(d, m) + ascending_count(d, reverse_marking(d, m)) != d.n_crossings:
                failures += 1
    obj = {"diagrams": args.count, "markings": markings, "failures": failures, "seed": args.seed}
    _out(args, obj, [f"reversal identity: {args.count} diagrams, {markings} markings, {failures} failures "
                     f"(seed {args.seed})"])
    return OK if failures == 0 else CONTRADICTION


def cmd_experiment(args) -> int:
    return {
        "connected-sum": _experiment_connected_sum,
        "torus": _experiment_torus,
        "reversal": _experiment_reversal,
    }[args.kind](args)


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--catalog", default=None, help="catalog file (default: shipped knots.jsonl)")
    common.add_argument("--crossing-cap", type=_positive, default=None, help="search crossing cap (default c+2)")
    common.add_argument("--node-cap", type=_positive, default=DEFAULT_NODE_CAP)
    common.add_argument("--moves", type=_moves, default=ALL_FAMILIES, help="move families, e.g. r1,r2,r3")
    common.add_argument("--emit-witness", metavar="FILE", default=None, help="write witness PD and marking as JSON")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--threads", type=_positive, default=1, help="worker cap (evaluation is sequential)")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="ascend", description="Ascending numbers of knot and link diagrams.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ascend", parents=[common], help="min ascending count of one diagram")
    p.add_argument("pd", help="PD code, a file holding one, or - for stdin")
    p.set_defaults(func=cmd_ascend)

    p = sub.add_parser("search", parents=[common], help="search Reidemeister moves for a lower count")
    p.add_argument("pd")
    p.add_argument("--target", type=int, default=None, help="stop once this value is reached")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("bounds", parents=[common], help="certified bounds for a catalog knot")
    p.add_argument("name")
    p.add_argument("--search", action="store_true", help="use a live search instead of the stored witness")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("table", parents=[common], help="certify the knot table")
    p.add_argument("--all", action="store_true", help="include rows flagged as extras")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("validate", parents=[common], help="recompute stored witnesses")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("experiment", parents=[common], help="connected-sum, torus or reversal experiments")
    p.add_argument("kind", choices=["connected-sum", "torus", "reversal"])
    p.add_argument("--knots", nargs="+", help="connected-sum: catalog knots to splice")
    p.add_argument("--n", type=int, default=None, help="connected-sum: n-fold sum of a single knot")
    p.add_argument("--pairs", nargs="+", metavar="P,Q", help="torus: parameter pairs")
    p.add_argument("--count", type=_positive, default=100, help="reversal: number of random diagrams")
    p.add_argument("--max-crossings", type=_positive, default=8)
    p.add_argument("--max-components", type=_positive, default=3)
    p.set_defaults(func=cmd_experiment)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (DiagramError, CatalogError, InputError, json.JSONDecodeError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except bnd.IntegrityError as exc:
        print(f"integrity failure: {exc}", file=sys.stderr)
        return CONTRADICTION


if __name__ == "__main__":
    sys.exit(main())
