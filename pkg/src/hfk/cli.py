"""Command line around the calculators and checks.

Input files are recognized by extension alone: .hd.json holds a pointed
diagram, .grid a grid presentation.  Reports render as json, table, or
csv, and the output bytes are a function of the input and the format, so
saved transcripts diff cleanly.

Exit codes: 0 for success including reported mathematical findings, 2 for
bad input, 3 for unreadable files, 4 for an exceeded search budget, 5 for
a broken internal invariant.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import chain_f2 as chain_mod
from . import grid as grid_mod
from .builders import (
    essential_circle_diagram,
    lens_diagram,
    lens_finger_diagram,
)
from .chain_f2 import RankTable, homology
from .diagram import (
    BudgetError,
    DiagramError,
    InvariantError,
    PointedDiagram,
    default_budget,
    diagram_to_dict,
    load_diagram,
    validate,
)
from .grid import GridDiagram, GridError, hat_table, load_grid
from .symmetry import (
    chern_eval,
    conjugate,
    evenness_check,
    knot_conjugation_check,
    point_swap,
    triangle_rank_consistency,
)

GridTable = Dict[Tuple[int, int], int]


@dataclass
class RunConfig:
    """One invocation: a single command, its inputs, and the knobs every
    command shares."""
    command: str
    paths: List[str] = field(default_factory=list)
    fmt: str = "table"
    budget: int = 1
    jobs: int = 1
    seed: int = 0

    def __post_init__(self) -> None:
        if self.budget < 1:
            raise DiagramError("budget must be at least 1, got %d"
                               % self.budget)
        if self.jobs < 1:
            raise DiagramError("jobs must be at least 1, got %d" % self.jobs)
        if self.fmt not in ("json", "table", "csv"):
            raise DiagramError("unknown output format %r" % self.fmt)


# ---------------------------------------------------------------------------
# Rendering.  Every renderer returns the full byte string at once; nothing
# is written until the command has finished, so a late error never leaves a
# half-printed report behind.


def _key_str(key: Sequence) -> str:
    return ",".join(str(v) for v in key)


def _jsonable(value):
    if isinstance(value, dict):
        out = {}
        for k, v in value.items():
            if isinstance(k, str):
                name = k
            elif isinstance(k, (tuple, list)):
                name = _key_str(k)
            else:
                name = str(k)
            out[name] = _jsonable(v)
        return out
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _scalar(value) -> bool:
    return value is None or isinstance(value, (str, int, float, bool))


def render_report(report: Dict, fmt: str) -> str:
    """A flat report dict in the requested format.

    Field order is fixed: check and status lead, the rest follows sorted,
    so identical reports are identical bytes."""
    if fmt == "json":
        return json.dumps(_jsonable(report), indent=2, sort_keys=True) + "\n"
    front = [k for k in ("check", "status") if k in report]
    rows = [(k, report[k]) for k in front]
    rows += [(k, report[k]) for k in sorted(report) if k not in front]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["field", "value"])
        for k, v in rows:
            writer.writerow(
                [k, v if _scalar(v) else json.dumps(_jsonable(v),
                                                    sort_keys=True)])
        return buf.getvalue()
    lines = []
    for k, v in rows:
        out = v if _scalar(v) else json.dumps(_jsonable(v), sort_keys=True)
        lines.append("%s: %s" % (k, out))
    return "\n".join(lines) + "\n"


def render_rank_table(table: RankTable, fmt: str, total_only: bool) -> str:
    if total_only:
        if fmt == "json":
            return json.dumps({"grand_total": table.grand_total}) + "\n"
        if fmt == "csv":
            return "grand_total\n%d\n" % table.grand_total
        return "%d\n" % table.grand_total
    data = table.as_dict()
    data["classes"].sort(key=lambda c: c["key"])
    for cls in data["classes"]:
        cls["entries"].sort(key=lambda e: (e["a"], e["m"]))
    if fmt == "json":
        return json.dumps(data, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["class", "delta_a", "delta_m", "a", "m", "rank"])
        for cls in data["classes"]:
            for e in cls["entries"]:
                writer.writerow([_key_str(cls["key"]), cls["delta_a"],
                                 cls["delta_m"], e["a"], e["m"], e["rank"]])
        return buf.getvalue()
    lines = []
    for cls in data["classes"]:
        lines.append("class %s delta_a=%d delta_m=%d total=%d"
                     % (_key_str(cls["key"]), cls["delta_a"],
                        cls["delta_m"], cls["total"]))
        for e in cls["entries"]:
            lines.append("  a=%d m=%d rank=%d" % (e["a"], e["m"], e["rank"]))
    lines.append("grand total %d" % data["grand_total"])
    return "\n".join(lines) + "\n"


def render_grid_table(table: GridTable, fmt: str, total_only: bool) -> str:
    entries = sorted((a, m, r) for (m, a), r in table.items())
    total = sum(r for _, _, r in entries)
    if total_only:
        if fmt == "json":
            return json.dumps({"grand_total": total}) + "\n"
        if fmt == "csv":
            return "grand_total\n%d\n" % total
        return "%d\n" % total
    if fmt == "json":
        data = {"entries": [{"a": a, "m": m, "rank": r}
                            for a, m, r in entries],
                "grand_total": total}
        return json.dumps(data, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["a", "m", "rank"])
        for a, m, r in entries:
            writer.writerow([a, m, r])
        return buf.getvalue()
    lines = ["a=%d m=%d rank=%d" % (a, m, r) for a, m, r in entries]
    lines.append("grand total %d" % total)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Input loading


def load_input(path: str) -> Union[PointedDiagram, GridDiagram]:
    """Reads a diagram or grid file, deciding by extension alone."""
    if path.endswith(".hd.json"):
        return load_diagram(path)
    if path.endswith(".grid"):
        return load_grid(path)
    raise DiagramError("cannot tell what %r holds; expected a .hd.json or "
                       ".grid extension" % path)


def _need_diagram(value, what: str) -> PointedDiagram:
    if isinstance(value, GridDiagram):
        raise DiagramError("%s needs a diagram file (.hd.json)" % what)
    return value


# ---------------------------------------------------------------------------
# Commands


def cmd_validate(cfg: RunConfig, args) -> int:
    path = cfg.paths[0]
    report: Dict = {"check": "validate", "path": path}
    if path.endswith(".grid"):
        load_input(path)
        report["status"] = "ok"
        report["errors"] = []
        sys.stdout.write(render_report(report, cfg.fmt))
        return 0
    d = _need_diagram(load_input(path), "validate")
    result = validate(d)
    report["status"] = "ok" if result.is_valid else "invalid"
    report["errors"] = list(result.errors)
    sys.stdout.write(render_report(report, cfg.fmt))
    return 0 if result.is_valid else 2


def cmd_homology(cfg: RunConfig, args) -> int:
    loaded = load_input(cfg.paths[0])
    if isinstance(loaded, GridDiagram):
        text = render_grid_table(hat_table(loaded), cfg.fmt, args.total)
    else:
        table = homology(loaded, budget=cfg.budget)
        text = render_rank_table(table, cfg.fmt, args.total)
    sys.stdout.write(text)
    return 0


def cmd_symmetry(cfg: RunConfig, args) -> int:
    d = _need_diagram(load_input(cfg.paths[0]),
                      "the %s check" % args.check)
    if args.check == "point-swap":
        _, t = point_swap(d, budget=cfg.budget)
        report = {"check": "point-swap", "status": "pass",
                  "label_shift": list(t.label_shift or ()),
                  "notes": t.notes, "witnesses": []}
    elif args.check == "conjugation":
        _, t = conjugate(d, budget=cfg.budget)
        report = {"check": "conjugation", "status": "pass",
                  "classes": t.class_map, "notes": t.notes, "witnesses": []}
    elif args.check == "knot-conjugation":
        report = knot_conjugation_check(d, budget=cfg.budget)
    else:
        result = evenness_check(d, budget=cfg.budget)
        report = dict(result)
        report["witnesses"] = []
        if not result["applicable"]:
            report["status"] = "inapplicable"
        elif "even" not in result:
            report["status"] = "inconclusive"
        elif result["even"]:
            report["status"] = "pass"
        else:
            report["status"] = "fail"
            report["witnesses"] = [{"kind": "odd-total",
                                    "grand_total": result["grand_total"]}]
    sys.stdout.write(render_report(report, cfg.fmt))
    return 0


def cmd_chern(cfg: RunConfig, args) -> int:
    d = _need_diagram(load_input(cfg.paths[0]), "chern")
    if args.domain not in d.domains:
        have = ", ".join(sorted(d.domains)) or "none"
        raise DiagramError("no domain named %r in the file (have: %s)"
                           % (args.domain, have))
    x = tuple(p for p in args.generator.split(",") if p)
    value = chern_eval(d, d.domains[args.domain], x)
    report = {"check": "chern", "status": "ok", "domain": args.domain,
              "generator": sorted(x), "value": value, "witnesses": []}
    sys.stdout.write(render_report(report, cfg.fmt))
    return 0


def _total_of(arg: str, budget: int) -> int:
    try:
        return int(arg)
    except ValueError:
        pass
    loaded = load_input(arg)
    if isinstance(loaded, GridDiagram):
        return sum(hat_table(loaded).values())
    return homology(loaded, budget=budget).grand_total


def cmd_triangle(cfg: RunConfig, args) -> int:
    totals = [_total_of(a, cfg.budget) for a in cfg.paths]
    ok = triangle_rank_consistency(*totals)
    report: Dict = {"check": "triangle",
                    "status": "consistent" if ok else "inconsistent",
                    "totals": totals, "witnesses": []}
    if not ok:
        for i in range(3):
            if totals[i] > totals[(i + 1) % 3] + totals[(i + 2) % 3]:
                report["witnesses"].append(
                    {"kind": "rank-gap", "total": totals[i],
                     "other_two": sorted([totals[(i + 1) % 3],
                                          totals[(i + 2) % 3]])})
    sys.stdout.write(render_report(report, cfg.fmt))
    return 0


def cmd_fuzz(cfg: RunConfig, args) -> int:
    report = run_fuzz(args.kind, seed=cfg.seed, count=args.count,
                      budget=cfg.budget, jobs=cfg.jobs)
    sys.stdout.write(render_report(report, cfg.fmt))
    return 0 if report["status"] == "pass" else 5


# ---------------------------------------------------------------------------
# Fuzzing.  Cases are drawn deterministically from the seed, evaluated
# in any order (results are keyed by index), and reported in index order,
# so the parallelism degree never shows in the output.


def random_grid(rng: random.Random, n: int) -> GridDiagram:
    """A uniform knot grid of size n, by rejection."""
    while True:
        o = list(range(n))
        x = list(range(n))
        rng.shuffle(o)
        rng.shuffle(x)
        try:
            return GridDiagram(o=tuple(o), x=tuple(x))
        except GridError:
            continue


def _grid_case(rng: random.Random) -> Dict:
    g = random_grid(rng, rng.randint(2, 5))
    return {"o": list(g.o), "x": list(g.x)}


def _grid_failures(case: Dict) -> List[Dict]:
    g = GridDiagram(o=tuple(case["o"]), x=tuple(case["x"]))
    problems: List[Dict] = []
    if grid_mod.swap_markers(grid_mod.swap_markers(g)) != g:
        problems.append({"kind": "marker-swap-not-involutive"})
    if grid_mod.transpose(grid_mod.transpose(g)) != g:
        problems.append({"kind": "transpose-not-involutive"})
    gens = list(permutations(range(g.n)))
    diff = grid_mod.tilde_differential(g, gens)
    for start in gens:
        acc: Dict[Tuple[int, ...], int] = {}
        for y in diff[start]:
            for z in diff[y]:
                acc[z] = acc.get(z, 0) ^ 1
        if any(acc.values()):
            problems.append({"kind": "d-squared", "generator": list(start)})
            break
    try:
        # tilde_table re-checks the grading law on every rectangle and
        # hat_deconvolve the divisibility by the standard factor.
        grid_mod.hat_deconvolve(grid_mod.tilde_table(g), g.n)
        grid_mod.alexander_polynomial(g)
    except InvariantError as exc:
        problems.append({"kind": "invariant", "message": str(exc)})
    return problems


_SLOPE_LIMIT = 8


def _slope_case(rng: random.Random) -> Dict:
    family = rng.choice(["circle", "lens", "finger"])
    e = rng.randint(1, _SLOPE_LIMIT) if family != "circle" else 0
    transforms = [rng.choice(["swap", "conjugate"])
                  for _ in range(rng.randint(0, 2))]
    return {"family": family, "e": e, "transforms": transforms}


def _build_slope(case: Dict) -> PointedDiagram:
    family = case["family"]
    if family == "circle":
        d: PointedDiagram = essential_circle_diagram()
    elif family == "lens":
        d = lens_diagram(case["e"])
    else:
        d = lens_finger_diagram(case["e"])
    for t in case["transforms"]:
        if t == "swap":
            d = point_swap(d, check=False)[0]
        else:
            d = conjugate(d, check=False)[0]
    return d


def _slope_failures(case: Dict, budget: int) -> List[Dict]:
    d = _build_slope(case)
    problems: List[Dict] = []
    try:
        chain_mod.verify_d_squared(d, budget=budget)
        # homology re-checks that the differential preserves the class and
        # the first grading and drops the second by one.
        chain_mod.homology(d, budget=budget)
        point_swap(d, budget=budget)
        conjugate(d, budget=budget)
    except InvariantError as exc:
        problems.append({"kind": "invariant", "message": str(exc)})
    fixed = diagram_to_dict(d)
    if diagram_to_dict(point_swap(point_swap(d, check=False)[0],
                                  check=False)[0]) != fixed:
        problems.append({"kind": "point-swap-not-involutive"})
    if diagram_to_dict(conjugate(conjugate(d, check=False)[0],
                                 check=False)[0]) != fixed:
        problems.append({"kind": "conjugation-not-involutive"})
    return problems


def _shrink_slope(case: Dict, budget: int) -> Dict:
    # Greedy descent: drop a transform, step e down, or forget the finger,
    # keeping any variant that still fails.
    while True:
        candidates = []
        for i in range(len(case["transforms"])):
            smaller = dict(case)
            smaller["transforms"] = (case["transforms"][:i]
                                     + case["transforms"][i + 1:])
            candidates.append(smaller)
        if case["family"] != "circle" and case["e"] > 1:
            candidates.append(dict(case, e=case["e"] - 1))
        if case["family"] == "finger":
            candidates.append(dict(case, family="lens"))
        for cand in candidates:
            if _slope_failures(cand, budget):
                case = cand
                break
        else:
            return case


def _shrink_grid(case: Dict) -> Dict:
    # Grid moves that shrink the size do not act row by row, so hunt for
    # the smallest failing grid by sampling sizes below the witness.
    n = len(case["o"])
    for size in range(2, n):
        rng = random.Random(size * 7919)
        for _ in range(120):
            g = random_grid(rng, size)
            small = {"o": list(g.o), "x": list(g.x)}
            if _grid_failures(small):
                return small
    return case


def run_fuzz(kind: str, seed: int = 0, count: int = 50,
             budget: Optional[int] = None, jobs: int = 1) -> Dict:
    """Random-case property run; the report carries a minimized failing
    case when any property breaks."""
    if kind not in ("slopes", "grids"):
        raise DiagramError("unknown fuzz kind %r" % kind)
    if count < 0:
        raise DiagramError("count must be nonnegative, got %d" % count)
    limit = default_budget() if budget is None else budget
    rng = random.Random(seed)
    if kind == "grids":
        cases = [_grid_case(rng) for _ in range(count)]
        check = lambda case: _grid_failures(case)
    else:
        cases = [_slope_case(rng) for _ in range(count)]
        check = lambda case: _slope_failures(case, limit)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(check, cases))
    else:
        results = [check(case) for case in cases]
    report: Dict = {"check": "fuzz", "kind": kind, "seed": seed,
                    "cases": count, "status": "pass", "witnesses": []}
    failures = [(i, cases[i], probs)
                for i, probs in enumerate(results) if probs]
    if not failures:
        return report
    index, case, problems = failures[0]
    small = (_shrink_grid(case) if kind == "grids"
             else _shrink_slope(case, limit))
    report["status"] = "fail"
    report["witnesses"] = [{"case_index": i, "case": c, "problems": p}
                           for i, c, p in failures]
    report["reproducer"] = {"case": small,
                            "problems": (_grid_failures(small)
                                         if kind == "grids"
                                         else _slope_failures(small, limit))}
    return report


# ---------------------------------------------------------------------------
# Argument wiring


def _nonneg_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("%r is not an integer" % text)
    if n < 0:
        raise argparse.ArgumentTypeError("%r is negative" % text)
    return n


def _positive_int(text: str) -> int:
    n = _nonneg_int(text)
    if n == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return n


def _add_common(sub) -> None:
    sub.add_argument("--format", choices=("json", "table", "csv"),
                     default="table", help="report rendering")
    sub.add_argument("--budget", type=_positive_int, default=None,
                     help="search-node budget (default: HFK_BUDGET or 10^6)")
    sub.add_argument("--jobs", type=_positive_int, default=1,
                     help="worker threads for batch commands; never "
                          "changes the output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hfk",
        description="Knot Floer homology over Z/2 from pointed Heegaard "
                    "diagrams (.hd.json) and grid presentations (.grid).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a diagram or grid file")
    p.add_argument("path")
    _add_common(p)

    p = sub.add_parser("homology", help="rank table of the hat invariant")
    p.add_argument("path")
    p.add_argument("--total", action="store_true",
                   help="print the grand total only")
    _add_common(p)

    p = sub.add_parser("symmetry", help="run one symmetry check")
    p.add_argument("path")
    p.add_argument("--check", required=True,
                   choices=("point-swap", "conjugation", "knot-conjugation",
                            "evenness"))
    _add_common(p)

    p = sub.add_parser("chern",
                       help="pair a structure class with a named domain")
    p.add_argument("path")
    p.add_argument("--domain", required=True,
                   help="name under the file's domains key")
    p.add_argument("--generator", required=True,
                   help="comma-separated intersection point ids")
    _add_common(p)

    p = sub.add_parser("triangle",
                       help="rank condition for a surgery triangle")
    p.add_argument("totals", nargs=3, metavar="TOTAL",
                   help="a nonnegative integer or a diagram/grid file "
                        "whose grand total is used")
    _add_common(p)

    p = sub.add_parser("fuzz", help="randomized property run")
    p.add_argument("--kind", required=True, choices=("slopes", "grids"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=_nonneg_int, default=50)
    _add_common(p)

    return parser


_DISPATCH = {
    "validate": cmd_validate,
    "homology": cmd_homology,
    "symmetry": cmd_symmetry,
    "chern": cmd_chern,
    "triangle": cmd_triangle,
    "fuzz": cmd_fuzz,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            paths=(list(args.totals) if args.command == "triangle"
                   else [args.path] if hasattr(args, "path") else []),
            fmt=args.format,
            budget=(default_budget() if args.budget is None
                    else args.budget),
            jobs=args.jobs,
            seed=getattr(args, "seed", 0),
        )
        return _DISPATCH[cfg.command](cfg, args)
    except BudgetError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 4
    except InvariantError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 5
    except ValueError as exc:
        # DiagramError, GridError, and malformed json all land here.
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
