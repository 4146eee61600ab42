"""Command-line interface.

Exit status: 0 on success, 1 on a domain failure (no schedule, a failed
validation, an unsupported input), 2 on usage or format errors.  Every file
argument accepts ``-`` for standard input or output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import basic, bounds, composite, oracle, zero_excess
from .errors import CapExceeded, FormatError, GrowthError, ScheduleError, TargetMismatch
from .graph import Coloring, Graph, grid_graph, is_connected, path_graph, random_tree, star_graph
from .graph_io import emit_dot, emit_graph, parse_graph
from .kernels import max_matching, parse_cnf, two_sat
from .schedule import Schedule, normalize_deletions, simulate, validate
from .schedule_io import emit_schedule, schedule_from_obj, schedule_to_obj

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad arguments or unreadable input; reported with exit status 2."""


# -- stream helpers ----------------------------------------------------------------


def _read_text(path: str, what: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {what} file {path!r}: {exc.strerror}") from None


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path!r}: {exc.strerror}") from None


def _parse_graph_from(text: str, path: str) -> Graph:
    try:
        return parse_graph(text)
    except FormatError as exc:
        raise FormatError(exc.message, f"{path}: {exc.where}" if exc.where else path) from None


def _load_graph(path: str) -> Graph:
    return _parse_graph_from(_read_text(path, "graph"), path)


def _load_schedule_doc(path: str) -> tuple[Schedule, dict]:
    text = _read_text(path, "schedule")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, f"{path}: line {exc.lineno} column {exc.colno}") from None
    try:
        return schedule_from_obj(doc), doc
    except FormatError as exc:
        raise FormatError(exc.message, f"{path}: {exc.where}") from None


def _plain(x):
    """Tuples (edges, generations) as JSON lists, recursively."""
    if isinstance(x, (tuple, list, set, frozenset)):
        items = [_plain(y) for y in x]
        return sorted(items, key=repr) if isinstance(x, (set, frozenset)) else items
    return x


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


# -- gen -----------------------------------------------------------------------------


def _need(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"gen {args.family} requires --{name.replace('_', '-')}")
    return value


def cmd_gen(args) -> int:
    fam = args.family
    if fam == "path":
        g = path_graph(_need(args, "n"))
    elif fam == "star":
        g = star_graph(_need(args, "n"))
    elif fam == "tree":
        g = random_tree(_need(args, "n"), args.seed)
    elif fam == "grid":
        g = grid_graph(_need(args, "rows"), _need(args, "cols"))
    elif fam == "binomial":
        g = bounds.binomial_tree(_need(args, "delta"))
    elif fam == "gfull":
        g = bounds.g_full(_need(args, "delta"))
    elif fam == "gbipart":
        g = bounds.g_bipart(_need(args, "delta"))
    else:  # gadget
        g = bounds.hardness_gadget(_load_graph(_need(args, "base")))
    _write_text(args.out, emit_graph(g))
    return EXIT_OK


# -- grow ----------------------------------------------------------------------------


def _load_coloring(path: str, n: int) -> Coloring:
    text = _read_text(path, "colouring")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, f"{path}: line {exc.lineno} column {exc.colno}") from None
    if not isinstance(raw, dict):
        raise FormatError("colouring must be a JSON object mapping vertex to colour", path)
    try:
        mapping = {int(k): int(v) for k, v in raw.items()}
    except (TypeError, ValueError):
        raise FormatError("colouring keys and values must be integers", path) from None
    return Coloring.from_mapping(mapping, n)


def synthesize(algo: str, target: Graph, ell: int = 1, coloring: Coloring | None = None) -> Schedule | None:
    """Run one synthesis algorithm by its CLI name; None means no schedule."""
    if algo == "clique":
        return basic.clique_schedule(target)
    if algo == "iclique":
        return basic.improved_clique_schedule(target)
    if algo == "path":
        return normalize_deletions(basic.path_schedule(target.n), target)
    if algo == "star":
        return normalize_deletions(basic.star_schedule(target.n), target)
    if algo == "trim":
        return basic.trimming_schedule(target)
    if algo == "star4":
        return basic.star_spanning_schedule(target)
    if algo == "clique3":
        return basic.clique_maintaining_schedule(target)
    if algo == "elim":
        return zero_excess.elimination_schedule(target)
    if algo == "elim+L":
        return zero_excess.constant_excess_schedule(target, ell)
    if algo == "fast":
        return zero_excess.fast_growth(target)
    if algo == "tree":
        return composite.tree_schedule(target)
    if algo == "colored":
        if coloring is None:
            raise UsageError("--algo colored requires --coloring")
        return composite.colored_schedule(target, coloring)
    if algo == "planar":
        return composite.planar_schedule(target)
    raise UsageError(f"unknown algorithm {algo!r}")


ALGOS = ("clique", "iclique", "path", "star", "trim", "star4", "clique3",
         "elim", "elim+L", "fast", "tree", "colored", "planar")


def cmd_grow(args) -> int:
    target = _load_graph(args.target)
    coloring = _load_coloring(args.coloring, target.n) if args.coloring else None
    s = synthesize(args.algo, target, args.ell, coloring)
    if s is None:
        print("NONE")
        return EXIT_DOMAIN
    m = validate(s, target)  # never report success for an invalid schedule
    _write_text(args.out, emit_schedule(s, target=emit_graph(target), metrics=m.as_dict()))
    print(_json({"algo": args.algo, **m.as_dict()}), end="", file=sys.stderr)
    return EXIT_OK


# -- validate ------------------------------------------------------------------------


def cmd_validate(args) -> int:
    s, doc = _load_schedule_doc(args.schedule)
    if args.target == "-" and args.schedule == "-":
        # one stream: the schedule document carries its own target
        if not isinstance(doc.get("target"), str):
            raise UsageError("--target - with a schedule on stdin needs an embedded 'target' field")
        target = _parse_graph_from(doc["target"], "<stdin>:$.target")
    else:
        target = _load_graph(args.target)
    try:
        m = validate(s, target)
    except TargetMismatch as exc:
        print(_json({"valid": False, "code": exc.code, "slot": exc.slot,
                     "missing": _plain(exc.missing), "unexpected": _plain(exc.unexpected),
                     "message": str(exc)}), end="")
        return EXIT_DOMAIN
    except ScheduleError as exc:
        print(_json({"valid": False, "code": exc.code, "slot": exc.slot, "item": _plain(exc.item), "message": str(exc)}), end="")
        return EXIT_DOMAIN
    print(_json(m.as_dict()), end="")
    return EXIT_OK


# -- bounds --------------------------------------------------------------------------


def cmd_bounds(args) -> int:
    g = _load_graph(args.target)
    out = {"n": g.n, "m": g.m, "d": args.d, "slot_lower_bound": bounds.slot_lower_bound(g, args.d)}
    omega, ok = bounds.clique_number(g)
    out["omega"] = {"value": omega, "exact": ok}
    chi, ok = bounds.chromatic_number(g)
    out["chi"] = {"value": chi, "exact": ok}
    if g.n >= 1 and g.n & (g.n - 1) == 0 and is_connected(g):
        ed = bounds.min_edge_difference(g, seed=args.seed)
        out["min_edge_difference"] = {"value": ed.value, "exact": ed.exact, "witness": list(ed.witness)}
    print(_json(out), end="")
    return EXIT_OK


# -- oracle --------------------------------------------------------------------------


def cmd_oracle(args) -> int:
    if args.query == "enum":
        if args.n is None:
            raise UsageError("oracle enum requires --n")
        pick = oracle.all_graphs if args.all else oracle.connected_graphs
        graphs = pick(args.n, args.cap)
        print(_json({"n": args.n, "count": len(graphs), "graphs": [sorted(map(list, g.edges)) for g in graphs]}), end="")
        return EXIT_OK
    if args.target is None:
        raise UsageError(f"oracle {args.query} requires --target")
    g = _load_graph(args.target)
    if args.query == "minslots":
        k = oracle.min_slots_zero_excess(g, args.d, args.cap)
        if k is None:
            print("NONE")
            return EXIT_DOMAIN
        w = oracle.zero_excess_witness(g, k, args.d, args.cap)
        print(_json({"value": k, "witness": schedule_to_obj(w)}), end="")
        return EXIT_OK
    if args.k is None:
        raise UsageError("oracle minexcess requires --k")
    r = oracle.min_excess_witness(g, args.k, args.d, args.cap, args.ell_cap)
    if r is None:
        print("NONE")
        return EXIT_DOMAIN
    print(_json({"value": r[0], "witness": schedule_to_obj(r[1])}), end="")
    return EXIT_OK


# -- sweep ---------------------------------------------------------------------------


def _family_graph(family: str, n: int, seed: int) -> Graph:
    if family == "path":
        return path_graph(n)
    if family == "star":
        return star_graph(n)
    if family == "tree":
        return random_tree(n, seed)
    side = math.isqrt(n)
    if side * side != n:
        raise UsageError(f"grid sizes must be perfect squares, got {n}")
    return grid_graph(side, side)


def _sweep_one(job):
    algo, family, n, seed, timing = job
    g = _family_graph(family, n, seed)
    t0 = time.perf_counter()
    s = synthesize(algo, g)
    wall = (time.perf_counter() - t0) * 1000.0
    if s is None:
        return [algo, n, seed, "NONE", "", "", f"{wall:.3f}" if timing else ""]
    m = validate(s, g)
    return [algo, n, seed, m.slots, m.excess_edges, m.max_excess_lifetime, f"{wall:.3f}" if timing else ""]


def _parse_sizes(text: str) -> list[int]:
    try:
        sizes = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--sizes must be a comma-separated list of integers, got {text!r}") from None
    if not sizes or min(sizes) < 1:
        raise UsageError("--sizes needs at least one positive size")
    return sizes


def cmd_sweep(args) -> int:
    if args.algo in ("colored", "elim+L"):
        raise UsageError(f"sweep does not support --algo {args.algo}")
    jobs = [
        (args.algo, args.family, n, args.seed + r, not args.no_timing)
        for n in _parse_sizes(args.sizes)
        for r in range(args.reps)
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_sweep_one, jobs))  # map keeps instance order
    else:
        rows = [_sweep_one(j) for j in jobs]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["algo", "n", "seed", "slots", "excess", "max_lifetime", "wall_ms"])
    w.writerows(rows)
    _write_text(args.out, buf.getvalue())
    return EXIT_OK


# -- dot -----------------------------------------------------------------------------


def trace_frames(s: Schedule) -> list[str]:
    """One DOT document per instance G_0..G_k; edges that are deleted later
    are drawn dashed."""
    tr = simulate(s)
    frames = []
    for t, adj in tr.replay():
        out = [f"graph G{t} {{", f'  label="slot {t}";']
        out.extend(f"  {v};" for v in sorted(adj))
        for u in sorted(adj):
            for w in sorted(adj[u]):
                if u < w:
                    style = " [style=dashed]" if (u, w) in tr.deletion else ""
                    out.append(f"  {u} -- {w}{style};")
        out.append("}")
        frames.append("\n".join(out) + "\n")
    return frames


def cmd_dot(args) -> int:
    if args.graph:
        _write_text("-", emit_dot(_load_graph(args.graph)))
        return EXIT_OK
    s, _ = _load_schedule_doc(args.schedule)
    frames = trace_frames(s)
    try:
        os.makedirs(args.out_dir, exist_ok=True)
    except OSError as exc:
        raise UsageError(f"cannot create directory {args.out_dir!r}: {exc.strerror}") from None
    for t, text in enumerate(frames):
        _write_text(os.path.join(args.out_dir, f"frame_{t:04d}.dot"), text)
    print(_json({"frames": len(frames), "dir": args.out_dir}), end="")
    return EXIT_OK


# -- kernel --------------------------------------------------------------------------


def cmd_kernel(args) -> int:
    text = _read_text(args.input, "input")
    if args.which == "match":
        g = _parse_graph_from(text, args.input)
        m = max_matching(g)
        print(_json({"size": len(m), "pairs": sorted(map(list, m.pairs))}), end="")
        return EXIT_OK
    try:
        f = parse_cnf(text)
    except FormatError as exc:
        raise FormatError(exc.message, f"{args.input}: {exc.where}" if exc.where else args.input) from None
    sol = two_sat(f)
    if sol is None:
        print("NONE")
        return EXIT_DOMAIN
    print(_json({"assignment": [v + 1 if x else -(v + 1) for v, x in enumerate(sol)]}), end="")
    return EXIT_OK


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="growsched", description="Synthesize, validate and bound graph growth schedules.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a graph as an edge list")
    g.add_argument("family", choices=("path", "star", "tree", "grid", "binomial", "gfull", "gbipart", "gadget"))
    g.add_argument("--n", type=int)
    g.add_argument("--rows", type=int)
    g.add_argument("--cols", type=int)
    g.add_argument("--delta", type=int)
    g.add_argument("--base", help="edge-list file of the graph inside the hardness gadget")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default="-")
    g.set_defaults(func=cmd_gen)

    gr = sub.add_parser("grow", help="synthesize and validate a schedule")
    gr.add_argument("--algo", required=True, choices=ALGOS)
    gr.add_argument("--target", default="-")
    gr.add_argument("--ell", type=int, default=1, help="added edges for elim+L")
    gr.add_argument("--coloring", help="JSON object mapping vertex to colour (colored)")
    gr.add_argument("--out", default="-")
    gr.set_defaults(func=cmd_grow)

    v = sub.add_parser("validate", help="simulate a schedule and compare with a target")
    v.add_argument("--schedule", default="-")
    v.add_argument("--target", required=True)
    v.set_defaults(func=cmd_validate)

    b = sub.add_parser("bounds", help="slot lower bound, clique/chromatic numbers, edge difference")
    b.add_argument("--target", required=True)
    b.add_argument("--d", type=int, default=2)
    b.add_argument("--seed", type=int, default=0)
    b.set_defaults(func=cmd_bounds)

    o = sub.add_parser("oracle", help="exhaustive search on small graphs")
    o.add_argument("query", choices=("minslots", "minexcess", "enum"))
    o.add_argument("--target")
    o.add_argument("--d", type=int, default=2)
    o.add_argument("--k", type=int)
    o.add_argument("--n", type=int)
    o.add_argument("--all", action="store_true", help="enum: include disconnected graphs")
    o.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP)
    o.add_argument("--ell-cap", type=int, default=oracle.DEFAULT_ELL_CAP)
    o.set_defaults(func=cmd_oracle)

    sw = sub.add_parser("sweep", help="batch run over sizes, CSV output")
    sw.add_argument("--algo", required=True, choices=ALGOS)
    sw.add_argument("--family", choices=("path", "star", "tree", "grid"), default="tree")
    sw.add_argument("--sizes", required=True, help="comma-separated vertex counts")
    sw.add_argument("--reps", type=int, default=1)
    sw.add_argument("--seed", type=int, default=0)
    sw.add_argument("--jobs", type=int, default=1)
    sw.add_argument("--no-timing", action="store_true", help="leave wall_ms empty for bit-identical output")
    sw.add_argument("--out", default="-")
    sw.set_defaults(func=cmd_sweep)

    d = sub.add_parser("dot", help="write DOT frames of a schedule's trace")
    d.add_argument("--schedule", default="-")
    d.add_argument("--graph", help="print this edge-list graph as one DOT document instead")
    d.add_argument("--out-dir", default=".")
    d.set_defaults(func=cmd_dot)

    k = sub.add_parser("kernel", help="run the matching or 2-SAT kernel")
    k.add_argument("which", choices=("match", "2sat"))
    k.add_argument("--input", default="-")
    k.set_defaults(func=cmd_kernel)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("reps", "jobs"):
        if getattr(args, name, 1) < 1:
            parser.error(f"--{name} must be at least 1")
    try:
        return args.func(args)
    except (UsageError, FormatError, CapExceeded) as exc:
        print(f"growsched {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GrowthError as exc:
        print(f"growsched {args.command}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
