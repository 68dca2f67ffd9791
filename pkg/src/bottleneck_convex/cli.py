"""Command-line front end (``bcs``).

Exit codes: 0 success, 1 invalid solution (check), 2 bad input or
parameters, 3 enumeration budget exceeded, 4 a solver returned an invalid
solution.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import io, svg
from .dispatch import ALGORITHMS, solve
from .errors import BudgetExceeded, InfeasibleK
from .instances import gen_convex_position, gen_grid, gen_random
from .reduction import (DnmtsInstance, angle_partition_to_bcs, brute_dnmts, build_gadget_witness,
                        dnmts_matching_to_angles, dnmts_to_angle_partition, gen_dnmts_yes)
from .solution import find_violation

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_BUDGET, EXIT_BUG = 0, 1, 2, 3, 4

log = logging.getLogger("bcs")


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _solve_file(path: str, k: int | None, algorithm: str, out: str | None, timing: bool
                ) -> tuple[int, str]:
    """Solve one instance file; returns (exit code, report line)."""
    try:
        inst = io.read_instance(path)
    except io.ParseError as exc:
        return EXIT_PARSE, f"error: {exc}"
    k = k if k is not None else inst.k
    if k is None:
        return EXIT_PARSE, f"error: {path}: no k given (use --k or a 'k=' line)"
    if k > len(inst.points):
        return EXIT_PARSE, f"error: k = {k} exceeds the {len(inst.points)} points of {path}"
    start = time.perf_counter()
    try:
        sol = solve(inst.points, k, algorithm)
    except BudgetExceeded as exc:
        return EXIT_BUDGET, f"budget exceeded: {exc}"
    except (InfeasibleK, ValueError) as exc:
        return EXIT_PARSE, f"error: {exc}"
    elapsed = round(time.perf_counter() - start, 6) if timing else 0.0
    bad = find_violation(inst.points, sol.sets, k)
    if bad is not None:
        return EXIT_BUG, f"internal error: {sol.solver} returned an invalid solution ({bad})"
    record = io.SolutionFile.from_solution(sol, elapsed)
    if out:
        io.write_solution(out, record)
    sizes = " ".join(str(len(x)) for x in record.sets)
    return EXIT_OK, f"value {sol.value} sizes {sizes} solver {sol.solver}"


def cmd_solve(args) -> int:
    code, line = _solve_file(args.instance, args.k, args.algorithm, args.out, not args.no_timing)
    print(line, file=sys.stdout if code == EXIT_OK else sys.stderr)
    return code


def _batch_job(job):
    return _solve_file(*job)


def cmd_batch(args) -> int:
    out_dir = Path(args.out_dir) if args.out_dir else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    jobs = []
    for path in args.instances:
        out = str(out_dir / (Path(path).stem + ".json")) if out_dir else None
        jobs.append((path, args.k, args.algorithm, out, not args.no_timing))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_batch_job, jobs))
    else:
        results = [_batch_job(j) for j in jobs]
    worst = EXIT_OK
    for path, (code, line) in zip(args.instances, results):
        print(f"{path}: {line}")
        worst = max(worst, code)
    return worst


def _gadget(args) -> int:
    if args.A or args.B or args.C:
        if not (args.A and args.B and args.C):
            raise UsageError("--A, --B and --C must be given together")
        d = DnmtsInstance(args.A, args.B, args.C)
    else:
        if args.n is None:
            raise UsageError("dnmts-gadget needs --A/--B/--C or --n")
        d = gen_dnmts_yes(args.n, args.seed, args.bound if args.bound_given else 12)
    ap = dnmts_to_angle_partition(d)
    g = angle_partition_to_bcs(ap, args.max_escalations)
    meta = {
        "family": "dnmts-gadget",
        "A": ",".join(map(str, d.A)),
        "B": ",".join(map(str, d.B)),
        "C": ",".join(map(str, d.C)),
        "delta": str(g.delta),
        "escalations": str(g.escalations),
        "wedge_ok": str(g.wedge_ok).lower(),
    }
    io.write_instance(args.out, io.InstanceFile(g.points, g.k, meta))
    Path(args.out + ".json").write_text(json.dumps(g.sidecar(), indent=2, sort_keys=True) + "\n")
    if not g.wedge_ok:
        print(f"warning: wedge check fails after {g.escalations} escalation(s)", file=sys.stderr)
    matching = brute_dnmts(d)
    if matching is not None:
        wit = build_gadget_witness(g, dnmts_matching_to_angles(ap, matching))
        io.write_solution(args.out + ".witness.json", io.SolutionFile.from_solution(wit))
        bad = find_violation(g.points, wit.sets, g.k)
        if bad is not None:
            print(f"warning: witness does not validate ({bad})", file=sys.stderr)
    print(f"wrote {len(g.points)} points, k={g.k}, to {args.out}")
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        if args.family == "dnmts-gadget":
            return _gadget(args)
        if args.family == "random":
            if args.n is None:
                raise UsageError("random needs --n")
            pts = gen_random(args.n, args.seed, args.bound, args.general_position)
        elif args.family == "convex":
            if args.n is None:
                raise UsageError("convex needs --n")
            pts = gen_convex_position(args.n, args.seed)
        else:
            rows = args.rows if args.rows is not None else args.n
            if rows is None:
                raise UsageError("grid needs --rows (or --n)")
            pts = gen_grid(rows, args.cols)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    meta = {"family": args.family, "seed": str(args.seed)}
    io.write_instance(args.out, io.InstanceFile(pts, args.k, meta))
    print(f"wrote {len(pts)} points to {args.out}")
    return EXIT_OK


def cmd_check(args) -> int:
    try:
        inst = io.read_instance(args.instance)
        sol = io.read_solution(args.solution)
    except io.ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    k = args.k if args.k is not None else inst.k if inst.k is not None else sol.k
    bad = find_violation(inst.points, sol.sets, k)
    if bad is not None:
        print(f"invalid: {bad}")
        return EXIT_INVALID
    value = min((len(x) for x in sol.sets), default=0)
    print(f"valid value {value}")
    return EXIT_OK


def cmd_plot(args) -> int:
    try:
        inst = io.read_instance(args.instance)
        sets = io.read_solution(args.solution).sets if args.solution else None
    except io.ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if sets is not None and any(i < 0 or i >= len(inst.points) for x in sets for i in x):
        print("error: solution references points outside the instance", file=sys.stderr)
        return EXIT_PARSE
    Path(args.out).write_text(svg.render(inst.points, sets, args.log_y))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bcs", description="Bottleneck convex subsets: k disjoint convex subsets "
                                        "maximising the smallest one.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("solve", help="solve one instance")
    sp.add_argument("instance")
    sp.add_argument("--k", type=int)
    sp.add_argument("--algorithm", choices=ALGORITHMS, default="auto")
    sp.add_argument("--out", help="solution JSON path")
    sp.add_argument("--no-timing", action="store_true", help="record elapsed = 0 for reproducible output")
    sp.set_defaults(func=cmd_solve)

    bp = sub.add_parser("batch", help="solve many instances")
    bp.add_argument("instances", nargs="+")
    bp.add_argument("--k", type=int)
    bp.add_argument("--algorithm", choices=ALGORITHMS, default="auto")
    bp.add_argument("--out-dir")
    bp.add_argument("--jobs", type=int, default=1)
    bp.add_argument("--no-timing", action="store_true")
    bp.set_defaults(func=cmd_batch)

    gp = sub.add_parser("gen", help="generate an instance file")
    gp.add_argument("family", choices=("random", "convex", "grid", "dnmts-gadget"))
    gp.add_argument("--out", required=True)
    gp.add_argument("--n", type=int)
    gp.add_argument("--seed", type=int, default=0)
    gp.add_argument("--bound", type=int, default=None)
    gp.add_argument("--general-position", action="store_true")
    gp.add_argument("--rows", type=int)
    gp.add_argument("--cols", type=int)
    gp.add_argument("--k", type=int, help="k line written into the file")
    gp.add_argument("--A", type=_int_list)
    gp.add_argument("--B", type=_int_list)
    gp.add_argument("--C", type=_int_list)
    gp.add_argument("--max-escalations", type=int, default=2)
    gp.set_defaults(func=cmd_gen)

    cp = sub.add_parser("check", help="validate a solution")
    cp.add_argument("instance")
    cp.add_argument("solution")
    cp.add_argument("--k", type=int)
    cp.set_defaults(func=cmd_check)

    pp = sub.add_parser("plot", help="render an SVG")
    pp.add_argument("instance")
    pp.add_argument("--solution")
    pp.add_argument("--out", required=True)
    pp.add_argument("--log-y", action="store_true")
    pp.set_defaults(func=cmd_plot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    for name in ("k", "n", "rows", "cols"):
        v = getattr(args, name, None)
        if v is not None and v < 1:
            print(f"error: --{name} must be positive", file=sys.stderr)
            return EXIT_PARSE
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return EXIT_PARSE
    if args.command == "gen":
        args.bound_given = args.bound is not None
        if args.bound is None:
            args.bound = 100
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
