"""Command-line front end: ``bounds``, ``construct``, ``verify``, ``appendix``.

Exit codes: 0 success, 1 usage or parameter error, 2 certification
violation, 3 internal computation failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from pathlib import Path

from . import appendix, bounds, harness
from .curves import UnsupportedParameters, build_configuration
from .harness import fmt
from .pf import DEFAULT_TOLERANCE, PFConvergenceError, ReducibleMatrixError, gram, pf_eigenvalue, dilatation_from_mu

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2
EXIT_INTERNAL = 3

OUTPUT_DIR_ENV = "PUREBRAID_OUTPUT_DIR"

log = logging.getLogger("purebraid")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for violations here.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def output_path(name: str | os.PathLike) -> Path:
    """Relative paths land in ``$PUREBRAID_OUTPUT_DIR`` when it is set."""
    path = Path(name)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _emit(text: str, out: str | None):
    if out:
        output_path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _require(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required")


# bounds ---------------------------------------------------------------

def cmd_bounds(args) -> int:
    _require(args, "g", "n")
    profile = bounds.bound_profile(args.g, args.n, args.tsai_cg)
    if args.format == "json":
        text = harness.profile_json(profile)
    elif args.format == "csv":
        text = harness.profile_csv([profile])
    else:
        header = f"bounds for g={args.g} n={args.n} (entropy, nats)\n"
        text = header + harness.table(harness.profile_rows(profile), ("bound", "side", "quantity", "value", "valid"))
        bad = profile.inconsistencies()
        for lname, uname, lo, up in bad:
            text += f"note: {lname} = {fmt(lo)} exceeds {uname} = {fmt(up)}\n"
    _emit(text, args.output)
    return EXIT_OK


# construct ------------------------------------------------------------

def _construct_data(g: int, n: int, tolerance: float):
    if n == 1:
        raise UsageError(
            "n = 1 is the point-pushing subgroup, which has no matrix-level "
            "construction here; run `bounds --g G --n 1` for its bounds"
        )
    config = build_configuration(g, n)
    bracket = pf_eigenvalue(gram(config.matrix), tolerance)
    est = dilatation_from_mu(bracket.upper_float)
    return config, bracket, est


def cmd_construct(args) -> int:
    _require(args, "g", "n")
    config, bracket, est = _construct_data(args.g, args.n, args.tolerance)
    rows = [v.name for v in config.graph.red]
    cols = [v.name for v in config.graph.blue]
    entries = config.matrix.entries
    if args.format == "json":
        data = config.to_dict()
        data["rows"] = rows
        data["columns"] = cols
        data["matrix"] = [list(r) for r in entries]
        data["mu_lower"] = harness._json_number(bracket.lower_float)
        data["mu_upper"] = harness._json_number(bracket.upper_float)
        data["lambda"] = harness._json_number(est.dilatation)
        data["entropy"] = harness._json_number(est.entropy)
        data["main_upper"] = harness._json_number(bounds.main_upper(args.g, args.n))
        text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["g", "n", "case", "mu_lower", "mu_upper", "lambda", "entropy", "main_upper"])
        w.writerow([args.g, args.n, config.case.value, fmt(bracket.lower_float), fmt(bracket.upper_float),
                    fmt(est.dilatation), fmt(est.entropy), fmt(bounds.main_upper(args.g, args.n))])
        text = buf.getvalue()
    else:
        width = max(len(c) for c in cols + [str(x) for r in entries for x in r])
        lines = [
            f"case: {config.case.value}",
            f"g={config.genus} n={config.punctures}  subsurface genera: {' '.join(map(str, config.subsurface_genera))}",
            "intersection matrix N (rows red, columns blue):",
            " " * max(map(len, rows)) + "  " + " ".join(c.rjust(width) for c in cols),
        ]
        for name, r in zip(rows, entries):
            lines.append(name.ljust(max(map(len, rows))) + "  " + " ".join(str(x).rjust(width) for x in r))
        lines += [
            f"mu in [{fmt(bracket.lower_float)}, {fmt(bracket.upper_float)}]",
            f"lambda: {fmt(est.dilatation)}",
            f"entropy: {fmt(est.entropy)}  (main upper bound {fmt(bounds.main_upper(args.g, args.n))})",
        ]
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    if args.dot:
        path = output_path(args.dot)
        path.write_text(config.to_dot(), encoding="utf-8")
        print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK


# verify ---------------------------------------------------------------

def _sweep_spec(args) -> harness.SweepSpec:
    if args.g is not None:
        g_min = g_max = args.g
    else:
        g_min, g_max = args.g_min, args.g_max
    n_rule = args.n_rule
    if args.n is not None:
        n_rule = f"{args.n}..{args.n}"
    return harness.SweepSpec(
        g_min=g_min,
        g_max=g_max,
        n_rule=n_rule,
        tolerance=args.tolerance,
        variant=args.variant,
        output_format=args.format,
        perturb_upper=args.perturb_upper,
    )


def cmd_verify(args) -> int:
    spec = _sweep_spec(args)
    report = harness.run_sweep(spec, jobs=args.jobs)
    if args.format == "json":
        text = report.to_json(include_timing=args.timing)
    elif args.format == "table":
        rows = [r.row() for r in report.results]
        text = harness.table(rows, harness.CSV_COLUMNS)
    else:
        text = report.to_csv()
    _emit(text, args.output)

    err = sys.stderr
    print(f"grid points: {report.grid_size}, violations: {len(report.violations)}, "
          f"errors: {len(report.errors)}, elapsed: {report.elapsed:.2f}s", file=err)
    for v in report.violations[: args.show]:
        print(f"VIOLATION g={v.g} n={v.n}: {v.lower_name} = {fmt(v.lower_value)} > "
              f"{v.upper_name} = {fmt(v.upper_value)}", file=err)
    if len(report.violations) > args.show:
        print(f"... {len(report.violations) - args.show} more", file=err)
    for r in report.errors[: args.show]:
        print(f"ERROR g={r.g} n={r.n}: {r.error}", file=err)
    for note in report.discrepancies:
        print(f"discrepancy: {note}", file=err)
    if report.errors:
        return EXIT_INTERNAL
    return EXIT_OK if report.passed else EXIT_VIOLATION


# appendix -------------------------------------------------------------

def cmd_appendix(args) -> int:
    checks = appendix.appendix_checks()
    if args.format == "json":
        data = [
            {"name": c.name, "lhs": harness._json_number(c.lhs), "relation": c.relation,
             "rhs": harness._json_number(c.rhs), "status": c.status}
            for c in checks
        ]
        text = json.dumps(data, indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "lhs", "relation", "rhs", "status"])
        for c in checks:
            w.writerow([c.name, fmt(c.lhs), c.relation, fmt(c.rhs), c.status])
        text = buf.getvalue()
    else:
        rows = [(c.name, f"{c.lhs:.6f}", c.relation, f"{c.rhs:.6f}", c.status) for c in checks]
        text = harness.table(rows, ("check", "value", "", "threshold", "status"))
    _emit(text, args.output)
    if args.constants:
        path = output_path(args.constants)
        path.write_text(appendix.constants_json(), encoding="utf-8")
        print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK if all(c.status != "FAIL" for c in checks) else EXIT_VIOLATION


# parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="purebraid", description="Entropy bounds for pure surface braid groups.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, help, default_format="table"):
        # Fresh options per subcommand: parents would share one mutable default.
        p = sub.add_parser(name, help=help)
        p.add_argument("--config", metavar="JSON", help="JSON file of flag values; flags given on the command line win")
        p.add_argument("--format", choices=("table", "csv", "json"), default=default_format)
        p.add_argument("--output", "-o", metavar="FILE", help=f"write to FILE (relative to ${OUTPUT_DIR_ENV} if set)")
        return p

    p = command("bounds", "closed-form bounds at one (g, n)")
    p.add_argument("--g", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--tsai-cg", type=float, default=None, help="constant c_g for the parametric Tsai bounds")
    p.set_defaults(func=cmd_bounds)

    p = command("construct", "build the multicurve configuration and its entropy")
    p.add_argument("--g", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--dot", metavar="FILE", help="write the intersection graph in DOT format")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.set_defaults(func=cmd_construct)

    p = command("verify", "certify lower <= entropy <= upper over a grid", default_format="csv")
    p.add_argument("--g", type=int, help="single genus (overrides --g-min/--g-max)")
    p.add_argument("--n", type=int, help="single puncture count (overrides --n-rule)")
    p.add_argument("--g-min", type=int, default=2)
    p.add_argument("--g-max", type=int, default=64)
    p.add_argument("--n-rule", default="2..2g+16", help="puncture range per genus, e.g. 1..2g+16")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.add_argument("--variant", choices=("statement", "proof"), default="proof")
    p.add_argument("--perturb-upper", type=float, default=0.0, nargs="?", const=-10.0,
                   help="add this to every upper bound (fault injection; bare flag means -10)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--show", type=int, default=20, help="violations to list on stderr")
    p.add_argument("--timing", action="store_true", help="include elapsed time in JSON output")
    p.set_defaults(func=cmd_verify)

    p = command("appendix", "evaluate the hyperbolic-geometry inequalities")
    p.add_argument("--constants", metavar="FILE", help="write the trigon-model constants as JSON")
    p.set_defaults(func=cmd_appendix)
    return parser


def _load_config(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    return {k.replace("-", "_"): v for k, v in data.items() if k != "config"}


def parse_args(argv=None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        # Config values become defaults, so explicit flags still override them.
        config = _load_config(args.config)
        subparser = parser._subparsers._group_actions[0].choices[args.command]
        known = {a.dest for a in subparser._actions}
        unknown = sorted(set(config) - known)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(unknown)}")
        subparser.set_defaults(**config)
        args = parser.parse_args(argv)
    return args


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, UnsupportedParameters) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ReducibleMatrixError, PFConvergenceError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        log.debug("unhandled", exc_info=True)
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
