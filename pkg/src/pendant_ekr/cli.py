"""Command-line entry point: ``pendant-ekr <command> [options]``.

Exit codes: 0 success (EKR / StrictlyEKR for ``verify``), 1 runtime or I/O
failure, 2 usage error, 3 NotEKR, 4 uncertified result.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from collections.abc import Sequence

from . import graphs
from .families import (
    FamilyError,
    SetFamily,
    base_pendant_shifts,
    enumerate_independent,
    is_intersecting,
    shadow,
    stabilize,
    star_of,
)
from .graphs import Graph, GraphError
from .solver import DEFAULT_MEMBER_CAP
from .theorems import (
    NOT_EKR,
    PreconditionError,
    counterexample,
    ekr_range_flag,
    star_size_table,
    verify_ekr,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_NOT_EKR = 3
EXIT_UNCERTIFIED = 4

SCHEMA = "# schema=1"

FAMILIES = (
    "complete",
    "path",
    "cycle",
    "disjoint-cliques",
    "power",
    "pendant-complete",
    "pendant-path",
    "pendant-cycle",
    "pendant-general",
    "pendant-uniform",
)


class UsageError(Exception):
    pass


# -- argument helpers ------------------------------------------------------------


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def parse_range(text: str) -> list[int]:
    """``"3"``, ``"1..6"`` or ``"1,3,5"``; an empty string or ``a..b`` with ``b < a`` is empty."""
    text = text.strip()
    if not text:
        return []
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; use N, A..B or A,B,C")


def build_graph(args: argparse.Namespace) -> Graph:
    if args.dimacs:
        if args.family:
            raise UsageError("give either --family or --dimacs, not both")
        with open(args.dimacs) as fh:
            return graphs.from_dimacs(fh.read())
    fam = args.family
    if fam is None:
        raise UsageError("a graph source is required: --family or --dimacs")
    n, m, s, k = args.n, args.m, args.s, args.k

    def need(name: str, value):
        if value is None:
            raise UsageError(f"--family {fam} needs --{name}")
        return value

    if fam == "pendant-general":
        s = need("s", s)
        if n is not None and n != len(s):
            raise UsageError(f"--n {n} does not match the length of --s")
        return graphs.pendant_general(s)
    n = need("n", n)
    if fam == "complete":
        return graphs.make_complete(n)
    if fam == "path":
        return graphs.make_path(n)
    if fam == "cycle":
        return graphs.make_cycle(n)
    if fam == "disjoint-cliques":
        return graphs.make_disjoint_cliques(n, need("m", m))
    if fam == "power":
        base = {"path": graphs.make_path, "cycle": graphs.make_cycle, "complete": graphs.make_complete}
        return graphs.make_power(base[args.base](n), need("k", k))
    if fam == "pendant-complete":
        return graphs.pendant_complete(n)
    if fam == "pendant-path":
        return graphs.pendant_path(n)
    if fam == "pendant-cycle":
        return graphs.pendant_cycle(n)
    if fam == "pendant-uniform":
        return graphs.pendant_uniform(n, need("m", m))
    raise UsageError(f"unknown family {fam!r}")


def range_flag(args: argparse.Namespace, g: Graph, r: int) -> str | None:
    if args.dimacs or args.family is None:
        return None
    return ekr_range_flag(args.family, g.base_count, r)


def emit(args: argparse.Namespace, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def load_family(path: str) -> SetFamily:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise UsageError(f"malformed family JSON in {path}: {exc}") from None
    try:
        return SetFamily.from_json(data)
    except (FamilyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed family JSON in {path}: {exc}") from None


def fmt_set(g: Graph, indices: Sequence[int]) -> str:
    return "{" + ",".join(g.label(v) for v in indices) + "}"


# -- commands ----------------------------------------------------------------------


def cmd_build(args: argparse.Namespace) -> int:
    g = build_graph(args)
    text = graphs.to_dimacs(g)
    summary = f"{g}: vertices={g.vertex_count} edges={g.edge_count}"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(summary)
    else:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    g = build_graph(args)
    f = enumerate_independent(g, args.r)
    if args.format == "json":
        emit(args, json.dumps(f.to_json()))
    elif args.format == "csv":
        buf = io.StringIO()
        buf.write(SCHEMA + "\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["index", "members"])
        for k, m in enumerate(f):
            writer.writerow([k, " ".join(map(str, m.indices()))])
        emit(args, buf.getvalue())
    else:
        lines = [f"{g} r={args.r}: {len(f)} independent sets"]
        lines += [fmt_set(g, m.indices()) for m in f]
        emit(args, "\n".join(lines))
    return EXIT_OK


def verdict_exit(verdict) -> int:
    if not verdict.certified:
        return EXIT_UNCERTIFIED
    if verdict.classification == NOT_EKR:
        return EXIT_NOT_EKR
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    g = build_graph(args)
    if args.r is None or not 1 <= args.r <= g.vertex_count:
        raise UsageError(f"--r must be in 1..{g.vertex_count}")
    verdict = verify_ekr(
        g,
        args.r,
        args.strict,
        cap=args.cap,
        mode=args.mode,
        node_limit=args.node_limit,
        range_flag=range_flag(args, g, args.r),
    )
    if args.format == "json":
        emit(args, verdict.to_json(timing=args.timing))
    else:
        d = verdict.to_dict(timing=args.timing)
        d.pop("witness", None)
        d["centers"] = ",".join(g.label(v) for v in verdict.best_star_centers)
        lines = [f"{k}: {v}" for k, v in d.items()]
        if verdict.witness is not None:
            lines.append(f"witness: {len(verdict.witness)} sets")
        emit(args, "\n".join(lines))
    return verdict_exit(verdict)


SCAN_COLUMNS = [
    "graph", "r", "members", "best_star", "max", "class", "certified", "max_exact", "millis", "error",
]


def cmd_scan(args: argparse.Namespace) -> int:
    g = build_graph(args)
    rows = []
    status = EXIT_OK
    for r in args.r_range:
        if not 1 <= r <= g.vertex_count:
            raise UsageError(f"r={r} outside 1..{g.vertex_count}")
        start = time.perf_counter()
        try:
            v = verify_ekr(
                g, r, args.strict, cap=args.cap, mode=args.mode, node_limit=args.node_limit
            )
        except Exception as exc:  # a failing row must not end the scan
            rows.append(dict.fromkeys(SCAN_COLUMNS) | {"graph": str(g), "r": r, "error": str(exc)})
            status = EXIT_UNCERTIFIED
            continue
        millis = (time.perf_counter() - start) * 1000
        rows.append(
            {
                "graph": str(g),
                "r": r,
                "members": v.member_count,
                "best_star": v.best_star_size,
                "max": v.max_size,
                "class": v.classification,
                "certified": v.certified,
                "max_exact": v.max_exact,
                "millis": round(millis, 3) if args.timing else None,
                "error": None,
            }
        )
        if not v.certified:
            status = EXIT_UNCERTIFIED
    if args.format == "json":
        emit(args, json.dumps({"schema": 1, "rows": rows}))
    elif args.format == "csv":
        buf = io.StringIO()
        buf.write(SCHEMA + "\n")
        writer = csv.DictWriter(buf, SCAN_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: "" if row[k] is None else row[k] for k in SCAN_COLUMNS})
        emit(args, buf.getvalue())
    else:
        lines = [" ".join(f"{k}={row[k]}" for k in SCAN_COLUMNS if row[k] is not None) for row in rows]
        emit(args, "\n".join(lines))
    return status


def cmd_counterexample(args: argparse.Namespace) -> int:
    if args.n is None or args.k is None:
        raise UsageError("counterexample needs --n and --k")
    try:
        report = counterexample(args.n, args.k)
    except PreconditionError as exc:
        raise UsageError(str(exc)) from None
    d = report.to_dict()
    if args.format == "json":
        emit(args, json.dumps(d))
    else:
        emit(args, "\n".join(f"{k}: {v}" for k, v in d.items()))
    return EXIT_OK


def _demo_family(args: argparse.Namespace, g: Graph) -> SetFamily:
    if args.input:
        f = load_family(args.input)
        if f.universe_size != g.vertex_count:
            raise UsageError(f"family universe {f.universe_size} != graph order {g.vertex_count}")
        return f
    if args.r is None:
        raise UsageError("--r is required unless --input is given")
    full = enumerate_independent(g, args.r)
    if args.generate == "full":
        return full
    if args.generate == "star":
        center = args.center if args.center is not None else g.pendant_vertex(1, 1)
        return star_of(full, center)
    # random intersecting family: greedy over a seeded shuffle
    rng = random.Random(args.seed)
    masks = full.masks()
    rng.shuffle(masks)
    picked: list[int] = []
    for b in masks:
        if all(b & c for c in picked):
            picked.append(b)
            if args.size and len(picked) >= args.size:
                break
    return full.with_members(picked)


def cmd_shift_demo(args: argparse.Namespace) -> int:
    g = build_graph(args)
    f = _demo_family(args, g)
    shifts = base_pendant_shifts(g)
    if not shifts:
        raise UsageError("graph has no base vertex with a single pendant to shift onto")
    out, passes = stabilize(f, shifts, g)
    before_ok, _ = is_intersecting(f)
    after_ok, _ = is_intersecting(out)
    report = {
        "graph": str(g),
        "r": f.r,
        "before": len(f),
        "after": len(out),
        "passes": passes,
        "changed": out != f,
        "intersecting_before": before_ok,
        "intersecting_after": after_ok,
        "intersecting_preserved": after_ok or not before_ok,
        "family": [list(m.indices()) for m in out],
    }
    if args.format == "json":
        emit(args, json.dumps(report))
    else:
        lines = [f"{k}: {v}" for k, v in report.items() if k != "family"]
        lines += [fmt_set(g, m.indices()) for m in out]
        emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_shadow(args: argparse.Namespace) -> int:
    if args.input:
        f = load_family(args.input)
    else:
        g = build_graph(args)
        if args.r is None:
            raise UsageError("--r is required unless --input is given")
        f = enumerate_independent(g, args.r)
    levels = [args.level] if args.level is not None else list(range(f.r + 1))
    for lv in levels:
        if not 0 <= lv <= f.r:
            raise UsageError(f"shadow level {lv} outside 0..{f.r}")
    rows = [{"level": lv, "size": len(shadow(f, lv))} for lv in levels]
    if args.format == "json":
        emit(args, json.dumps({"family_size": len(f), "r": f.r, "levels": rows}))
    elif args.format == "csv":
        emit(args, "\n".join([SCHEMA, "level,size"] + [f"{x['level']},{x['size']}" for x in rows]))
    else:
        emit(args, "\n".join(f"level {x['level']}: {x['size']}" for x in rows))
    return EXIT_OK


def cmd_star_table(args: argparse.Namespace) -> int:
    if args.family == "pendant-general":
        if args.s is None:
            raise UsageError("--family pendant-general needs --s")
        s = args.s
    elif args.family == "pendant-complete" and args.n:
        s = [1] * args.n
    elif args.family == "pendant-uniform" and args.n and args.m:
        s = [args.m] * args.n
    else:
        raise UsageError("star-table supports pendant-complete, pendant-uniform and pendant-general")
    r_values = args.r_range if args.r_range is not None else list(range(1, len(s) + 1))
    rows = star_size_table(s, r_values)
    cols = ["graph", "r", "center", "formula", "enumerated", "agrees"]
    data = [
        {"graph": x.graph, "r": x.r, "center": x.center, "formula": x.formula,
         "enumerated": x.enumerated, "agrees": x.agrees}
        for x in rows
    ]
    if args.format == "json":
        emit(args, json.dumps({"schema": 1, "rows": data}))
    elif args.format == "csv":
        buf = io.StringIO()
        buf.write(SCHEMA + "\n")
        writer = csv.DictWriter(buf, cols, lineterminator="\n")
        writer.writeheader()
        writer.writerows(data)
        emit(args, buf.getvalue())
    else:
        emit(args, "\n".join(" ".join(f"{k}={d[k]}" for k in cols) for d in data))
    return EXIT_OK if all(x.agrees for x in rows) else EXIT_ERROR


# -- parser ------------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("graph")
    src.add_argument("--family", choices=FAMILIES)
    src.add_argument("--dimacs", metavar="PATH", help="read the graph from a DIMACS edge file")
    src.add_argument("--n", type=int)
    src.add_argument("--m", type=int)
    src.add_argument("--s", type=parse_int_list, help="clique sizes, e.g. 1,2,2")
    src.add_argument("--k", type=int)
    src.add_argument("--base", choices=("path", "cycle", "complete"), default="path",
                     help="base graph for --family power")
    out = common.add_argument_group("output")
    out.add_argument("--format", choices=("json", "csv", "text"), default="json")
    out.add_argument("--out", metavar="PATH")
    out.add_argument("--seed", type=int, default=0)

    solve = argparse.ArgumentParser(add_help=False)
    solve.add_argument("--strict", action="store_true", help="also test whether every maximum family is a star")
    solve.add_argument("--cap", type=int, default=DEFAULT_MEMBER_CAP, help="member cap for the exact solver")
    solve.add_argument("--mode", choices=("canonical", "parallel"), default="canonical")
    solve.add_argument("--node-limit", type=int, default=None)
    solve.add_argument("--timing", action="store_true", help="include wall-clock times in reports")

    parser = argparse.ArgumentParser(prog="pendant-ekr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="write a graph as DIMACS with role comments")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("enumerate", parents=[common], help="list the independent r-sets")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", parents=[common, solve], help="EKR verdict at one r")
    p.add_argument("--r", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", parents=[common, solve], help="EKR verdicts over a range of r")
    p.add_argument("--r", dest="r_range", type=parse_range, required=True, help="N, A..B or A,B,C")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("counterexample", parents=[common], help="pendant-path non-EKR construction at r=n-k")
    p.set_defaults(func=cmd_counterexample)

    for name, func, what in (
        ("shift-demo", cmd_shift_demo, "stabilise a family under S_1..S_n"),
        ("shadow", cmd_shadow, "shadow sizes of a family per level"),
    ):
        p = sub.add_parser(name, parents=[common], help=what)
        p.add_argument("--input", metavar="JSON", help="family file in the JSON family format")
        p.add_argument("--generate", choices=("star", "full", "random"), default="full")
        p.add_argument("--r", type=int)
        p.add_argument("--center", type=int, help="star centre (vertex index)")
        p.add_argument("--size", type=int, help="target size for --generate random")
        p.add_argument("--level", type=int, help="single shadow level")
        p.set_defaults(func=func)

    p = sub.add_parser("star-table", parents=[common], help="star-size formulas against enumeration")
    p.add_argument("--r", dest="r_range", type=parse_range)
    p.set_defaults(func=cmd_star_table)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"pendant-ekr {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, FamilyError, PreconditionError) as exc:
        print(f"pendant-ekr {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"pendant-ekr {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
