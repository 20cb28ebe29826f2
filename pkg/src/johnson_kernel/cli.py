"""
Command-line front end.

Each subcommand prints a JSON (or CSV) report. Verification commands exit 0
only when every item passes; query commands exit 0 when the computation
succeeds. Usage errors exit 2, invalid input 3, I/O failures 4.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import acceptance
from .errors import ExhaustionError, InvalidInputError, DimensionError
from .linalg import IntMatrix, det, hnf_rows, snf
from .pairing import verify_prop22
from .seifert import lambda_pq_table
from .splittings import apply, coset_reps_to_json, enumerate_coset_reps, standard_splitting
from .symplectic import SymplecticContext
from .wedge import fixed_sublattice_check
from .witness import WitnessProblem, find_generic_x, verify_generic

log = logging.getLogger("johnson_kernel")

EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INVALID = 3
EXIT_IO = 4


@dataclass
class RunReport:
    command: str
    parameters: dict
    items: list
    passed: bool = True
    wall_time: float = 0.0
    table: tuple | None = field(default=None, repr=False)  # (header, rows) for CSV

    def payload(self):
        return {
            "command": self.command,
            "parameters": self.parameters,
            "items": self.items,
            "pass": self.passed,
        }


def emit(report: RunReport, fmt="json", sink=None):
    """Write the report payload; timing goes to the log, never into the payload."""
    if fmt == "json":
        text = json.dumps(report.payload(), indent=2, sort_keys=True) + "\n"
    elif fmt == "csv":
        if report.table is None:
            raise InvalidInputError(f"{report.command} has no CSV form")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header, rows = report.table
        writer.writerow(header)
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        raise InvalidInputError(f"unknown format {fmt!r}")
    if sink is None or sink == "-":
        sys.stdout.write(text)
    else:
        with open(sink, "w") as fh:
            fh.write(text)
    log.info("%s finished in %.3fs", report.command, report.wall_time)


# -- workers (module level so they pickle) ------------------------------------


def _prop22_item(g):
    return verify_prop22(SymplecticContext(g)).to_json()


def _lambda_item(gpq):
    g, p, q = gpq
    return lambda_pq_table(SymplecticContext(g), p, q)


def _map(fn, items, jobs):
    items = list(items)
    if jobs and jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


# -- commands -----------------------------------------------------------------


def _genus_range(args):
    if args.g is not None:
        lo = hi = args.g
    else:
        lo, hi = args.g_min, args.g_max
    if lo > hi:
        raise InvalidInputError(f"empty genus range {lo}..{hi}")
    return range(lo, hi + 1)


def cmd_verify_prop22(args):
    genera = _genus_range(args)
    if genera.start < 3:
        raise InvalidInputError("verify-prop22 needs g >= 3")
    items = _map(_prop22_item, genera, args.jobs)
    table = (
        ["g", "detC", "pairing", "expected", "pass"],
        [[it["g"], it["detC"], it["pairing"], it["expected"], it["pass"]] for it in items],
    )
    return RunReport(
        "verify-prop22",
        {"g_min": genera.start, "g_max": genera.stop - 1},
        items,
        all(it["pass"] for it in items),
        table=table,
    )


def cmd_lambda_table(args):
    g = args.g
    ctx = SymplecticContext(g)
    if (args.p is None) != (args.q is None):
        raise InvalidInputError("give both --p and --q, or neither for all pairs")
    if args.p is not None:
        if not 1 <= args.p < args.q <= g:
            raise InvalidInputError(f"need 1 <= p < q <= {g}")
        pairs = [(args.p, args.q)]
    else:
        pairs = list(itertools.combinations(range(1, ctx.g + 1), 2))
    tables = _map(_lambda_item, [(g, p, q) for p, q in pairs], args.jobs)
    names = [name for name, _ in tables[0].rows()]
    if len(tables) == 1:
        header = ["curve", "value"]
    else:
        header = ["curve"] + [f"lambda_{t.p}_{t.q}" for t in tables]
    rows = [[name] + [t.rows()[k][1] for t in tables] for k, name in enumerate(names)]
    params = {"g": g}
    if args.p is not None:
        params.update(p=args.p, q=args.q)
    return RunReport("lambda-table", params, [t.to_json() for t in tables], True, table=(header, rows))


def cmd_fixed_subgroup(args):
    items = [fixed_sublattice_check(SymplecticContext(g)).to_json() for g in _genus_range(args)]
    table = (
        ["g", "rank", "generator_count", "equal"],
        [[it["g"], it["rank"], it["generator_count"], it["equal"]] for it in items],
    )
    return RunReport(
        "fixed-subgroup",
        {"genera": [it["g"] for it in items]},
        items,
        all(it["equal"] for it in items),
        table=table,
    )


def cmd_cosets(args):
    ctx = SymplecticContext(args.g)
    reps = enumerate_coset_reps(ctx, args.count)
    return RunReport("cosets", {"g": args.g, "count": args.count}, coset_reps_to_json(reps))


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def cmd_generic_x(args):
    if args.splittings:
        problem = WitnessProblem.from_json(json.loads(_read_text(args.splittings)))
        params = {"splittings": args.splittings}
    else:
        if args.g is None:
            raise InvalidInputError("generic-x needs --splittings or --g")
        ctx = SymplecticContext(args.g)
        W0 = standard_splitting(ctx)
        reps = enumerate_coset_reps(ctx, args.count)
        problem = WitnessProblem(tuple(apply(X, W0) for X in reps))
        params = {"g": args.g, "count": args.count}
    res = find_generic_x(problem)
    ok = verify_generic(res.x, problem)
    item = res.to_json()
    item["verified"] = ok
    return RunReport("generic-x", params, [item], ok)


def cmd_det(args):
    M = IntMatrix.parse(_read_text(args.input))
    return RunReport("det", {"input": args.input}, [{"det": det(M)}])


def cmd_snf(args):
    M = IntMatrix.parse(_read_text(args.input))
    D, S, T = snf(M)
    item = {"D": D.to_json(), "S": S.to_json(), "T": T.to_json()}
    return RunReport("snf", {"input": args.input}, [item])


def cmd_hnf(args):
    M = IntMatrix.parse(_read_text(args.input))
    H = IntMatrix(hnf_rows(M.rows_tuple(), M.cols), cols=M.cols)
    return RunReport("hnf", {"input": args.input}, [{"hnf": H.to_json()}])


def cmd_selftest(args):
    results = acceptance.run_all()
    for r in results:
        print(r.line(), file=sys.stderr)
    items = [r.to_json() for r in results]
    table = (["criterion", "pass", "detail"], [[i["criterion"], i["pass"], i["detail"]] for i in items])
    return RunReport("selftest", {}, items, all(i["pass"] for i in items), table=table)


# -- parser -------------------------------------------------------------------

COMMANDS = {
    "verify-prop22": (cmd_verify_prop22, ("json", "csv"), True),
    "lambda-table": (cmd_lambda_table, ("json", "csv"), False),
    "fixed-subgroup": (cmd_fixed_subgroup, ("json", "csv"), True),
    "cosets": (cmd_cosets, ("json",), False),
    "generic-x": (cmd_generic_x, ("json",), True),
    "det": (cmd_det, ("json",), False),
    "snf": (cmd_snf, ("json",), False),
    "hnf": (cmd_hnf, ("json",), False),
    "selftest": (cmd_selftest, ("json", "csv"), True),
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="johnson-kernel",
        description="Exact certificates for the Johnson kernel top-homology construction.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log timing to stderr")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def common(p):
        p.add_argument("--format", default="json", help="json or csv")
        p.add_argument("--out", default=None, help="write the report here instead of stdout")
        p.add_argument("--jobs", type=int, default=1, help="worker processes")
        return p

    p = common(sub.add_parser("verify-prop22", help="check the pairing identity over a genus range"))
    p.add_argument("--g", type=int)
    p.add_argument("--g-min", type=int, default=3)
    p.add_argument("--g-max", type=int, default=12)

    p = common(sub.add_parser("lambda-table", help="lambda_{p,q} on delta and epsilon twists"))
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)

    p = common(sub.add_parser("fixed-subgroup", help="fixed sublattice of U under T_{A_i}"))
    p.add_argument("--g", type=int)
    p.add_argument("--g-min", type=int, default=3)
    p.add_argument("--g-max", type=int, default=5)

    p = common(sub.add_parser("cosets", help="pairwise distinct left-coset representatives"))
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--count", type=int, required=True)

    p = common(sub.add_parser("generic-x", help="generic class for a family of splittings"))
    p.add_argument("--splittings", help="WitnessProblem JSON file")
    p.add_argument("--g", type=int)
    p.add_argument("--count", type=int, default=4, help="coset count when no file is given")

    for name, text in (("det", "determinant"), ("snf", "Smith normal form"), ("hnf", "Hermite normal form of the row lattice")):
        p = common(sub.add_parser(name, help=f"{text} of a matrix file"))
        p.add_argument("input", help="matrix file (text or JSON), '-' for stdin")

    common(sub.add_parser("selftest", help="run every acceptance criterion"))
    return parser


def dispatch(argv=None):
    """Run one subcommand; returns ``(exit_status, report_or_None)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else EXIT_USAGE), None
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    fn, formats, verification = COMMANDS[args.command]
    if args.format not in formats:
        print(f"{parser.prog} {args.command}: error: unsupported format {args.format!r} "
              f"(choose from {', '.join(formats)})", file=sys.stderr)
        return EXIT_USAGE, None
    if args.jobs < 1:
        print(f"{parser.prog}: error: --jobs must be positive", file=sys.stderr)
        return EXIT_USAGE, None
    t0 = time.perf_counter()
    try:
        report = fn(args)
    except ExhaustionError as exc:
        print(f"{parser.prog} {args.command}: {exc} (found {exc.found})", file=sys.stderr)
        return EXIT_FAIL, None
    except (InvalidInputError, DimensionError, KeyError, ValueError) as exc:
        print(f"{parser.prog} {args.command}: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID, None
    except OSError as exc:
        print(f"{parser.prog} {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO, None
    report.wall_time = time.perf_counter() - t0
    try:
        emit(report, args.format, args.out)
    except OSError as exc:
        print(f"{parser.prog} {args.command}: cannot write report: {exc}", file=sys.stderr)
        return EXIT_IO, report
    if verification and not report.passed:
        return EXIT_FAIL, report
    return 0, report


def main(argv=None):
    status, _ = dispatch(argv)
    return status


if __name__ == "__main__":
    sys.exit(main())
