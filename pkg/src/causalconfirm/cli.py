"""Command-line interface.

Exit codes: 0 success, 1 data error (bad file, failed check), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .adjust import do_adjust
from .chart import emit_group_chart
from .errors import DataError
from .ingest import builtin_datasets, dump_dataset, load_dataset
from .measures import MEASURE_IDS, PROBABILITY_SCALE, compute, parse_measure_list
from .report import analyze, fmt, render_report
from .semantic import predict_from_cc, predict_from_ce
from .tables import CausalRole, JointTable
from .verify import format_checks, run_checks

_DECIMAL = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)$")


class UsageError(Exception):
    pass


def _decimal(text: str) -> float:
    if not _DECIMAL.match(text.strip()):
        raise argparse.ArgumentTypeError(f"malformed number {text!r} (plain decimal expected)")
    return float(text)


def probability(text: str) -> float:
    v = _decimal(text)
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"{text} is not a probability in [0, 1]")
    return v


def signed_unit(text: str) -> float:
    v = _decimal(text)
    if not -1.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"{text} is outside [-1, 1]")
    return v


def measure_list(text: str) -> tuple[str, ...]:
    try:
        return parse_measure_list(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="causalconfirm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="pool, adjust and measure a stratified dataset")
    src = a.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="FILE", help="CSV file (counts or rates schema)")
    src.add_argument("--dataset", metavar="NAME", help="bundled dataset, see 'datasets'")
    a.add_argument("--part", metavar="NAME", help="one part of a multi-part bundled dataset")
    a.add_argument("--role", choices=("confounder", "mediator", "both"),
                   help="causal role of the grouping variable (required with 2+ groups)")
    a.add_argument("--measures", type=measure_list, default=MEASURE_IDS, metavar="LIST",
                   help="comma list of measure ids or 'all' (default); empty for rates only")
    a.add_argument("--format", choices=("text", "csv", "json"), default="text")
    a.add_argument("--percent", action="store_true", help="show probabilities as percent")
    a.add_argument("--svg", metavar="FILE", help="write the group-rate chart as SVG")
    a.add_argument("--chart-csv", metavar="FILE", help="write the chart data as CSV")

    m = sub.add_parser("measures", help="measures of one 2x2 table")
    m.add_argument("--p11", type=probability, required=True, help="P(y1|x1)")
    m.add_argument("--p10", type=probability, required=True, help="P(y1|x0)")
    m.add_argument("--px1", type=probability, default=0.5, help="P(x1), default 0.5")
    m.add_argument("--measures", type=measure_list, default=MEASURE_IDS, metavar="LIST")
    m.add_argument("--format", choices=("text", "json"), default="text")
    m.add_argument("--percent", action="store_true")

    pr = sub.add_parser("predict", help="probability prediction from Cc or Ce")
    g = pr.add_mutually_exclusive_group(required=True)
    g.add_argument("--cc", type=signed_unit, help="Cc(x1 => y1)")
    g.add_argument("--ce", type=signed_unit, help="Ce(x1 => y1)")
    pr.add_argument("--px1", type=probability, help="P(x1), required with --cc")

    v = sub.add_parser("verify", help="recompute the bundled reference values")
    v.add_argument("--dataset", metavar="NAME")

    d = sub.add_parser("datasets", help="list bundled datasets")
    d.add_argument("--show", metavar="NAME", help="print a dataset as CSV")
    return p


def _write(out, data: bytes) -> None:
    out.buffer.write(data) if hasattr(out, "buffer") else out.write(data.decode("utf-8"))


def cmd_analyze(args, out) -> int:
    if args.input is not None:
        parts = [(Path(args.input).stem, load_dataset(args.input))]
        if args.part is not None:
            raise UsageError("--part only applies to bundled datasets")
    else:
        catalog = builtin_datasets()
        if args.dataset not in catalog:
            raise UsageError(f"unknown dataset {args.dataset!r}; choose from {', '.join(catalog)}")
        b = catalog[args.dataset]
        parts = list(b.parts)
        if args.part is not None:
            names = [n for n, _ in parts]
            if args.part not in names:
                raise UsageError(f"{args.dataset} has parts {', '.join(names)}")
            parts = [(args.part, b.part(args.part))]
        if len(parts) > 1:
            parts = [(f"{args.dataset}/{n}", ds) for n, ds in parts]
    if args.role is None:
        multi = [(n, len(ds.groups)) for n, ds in parts if len(ds.groups) > 1]
        if multi:
            raise UsageError(f"--role is required: {multi[0][0]} has {multi[0][1]} groups")
        roles = ()
    elif args.role == "both":
        roles = (CausalRole.CONFOUNDER, CausalRole.MEDIATOR)
    else:
        roles = (CausalRole(args.role),)
    if (args.svg or args.chart_csv) and len(parts) > 1:
        raise UsageError("--svg/--chart-csv need a single dataset; use --part")

    reports = [analyze(ds, roles, args.measures, name) for name, ds in parts]
    if args.format == "json" and len(reports) > 1:
        docs = [json.loads(render_report(r, "json")) for r in reports]
        _write(out, (json.dumps(docs, indent=2) + "\n").encode("utf-8"))
    else:
        _write(out, b"\n".join(render_report(r, args.format, args.percent) for r in reports))

    if args.svg or args.chart_csv:
        ds = parts[0][1]
        adjusted = do_adjust(ds, roles[0] if roles else CausalRole.MEDIATOR)
        chart = emit_group_chart(ds, adjusted)
        if args.svg:
            Path(args.svg).write_text(chart.svg, encoding="utf-8")
        if args.chart_csv:
            Path(args.chart_csv).write_text(chart.csv, encoding="utf-8")
    return 0


def cmd_measures(args, out) -> int:
    if not 0.0 < args.px1 < 1.0:
        raise UsageError("--px1 must be strictly between 0 and 1")
    table = JointTable(args.p11, args.p10, args.px1)
    results = compute(table, args.measures)
    if args.format == "json":
        doc = {
            mid: {"value": r.value if abs(r.value) != float("inf") else str(r.value),
                  "rule": r.direction_pair, "defined": r.defined, "note": r.note}
            for mid, r in results.items()
        }
        _write(out, (json.dumps(doc, indent=2) + "\n").encode("utf-8"))
        return 0
    rows = [("measure", "rule", "value")]
    for mid, r in results.items():
        value = fmt(r.value, args.percent and mid in PROBABILITY_SCALE) if r.defined else "undefined"
        rows.append((mid, r.direction_pair, value))
    width = [max(len(r[i]) for r in rows) for i in range(3)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, width)).rstrip() for r in rows]
    lines += [f"  note: {mid}: {r.note}" for mid, r in results.items() if not r.defined]
    out.write("\n".join(lines) + "\n")
    return 0


def cmd_predict(args, out) -> int:
    if args.cc is not None:
        if args.px1 is None:
            raise UsageError("--cc needs --px1")
        if not 0.0 < args.px1 < 1.0:
            raise UsageError("--px1 must be strictly between 0 and 1")
        p1, p0 = predict_from_cc(args.cc, args.px1)
        out.write(f"P(x1|theta1)  {fmt(p1)}\nP(x0|theta1)  {fmt(p0)}\n")
    else:
        if args.px1 is not None:
            raise UsageError("--px1 is only used with --cc")
        p = predict_from_ce(args.ce)
        out.write(f"P(y1|x1)  {fmt(p)}\nP(y0|x1)  {fmt(1.0 - p)}\n")
    return 0


def cmd_verify(args, out) -> int:
    try:
        checks = run_checks(args.dataset)
    except KeyError:
        raise UsageError(
            f"unknown dataset {args.dataset!r}; choose from {', '.join(builtin_datasets())}"
        ) from None
    out.write(format_checks(checks))
    return 0 if all(c.ok for c in checks) else 1


def cmd_datasets(args, out) -> int:
    catalog = builtin_datasets()
    if args.show is None:
        width = max(map(len, catalog))
        for name, b in catalog.items():
            parts = f" [parts: {', '.join(n for n, _ in b.parts)}]" if len(b.parts) > 1 else ""
            out.write(f"{name.ljust(width)}  {b.description}{parts}\n")
        return 0
    if args.show not in catalog:
        raise UsageError(f"unknown dataset {args.show!r}")
    b = catalog[args.show]
    for i, (name, ds) in enumerate(b.parts):
        if len(b.parts) > 1:
            out.write(("\n" if i else "") + f"# part: {name}\n")
        out.write(dump_dataset(ds))
    return 0


COMMANDS = {
    "analyze": cmd_analyze, "measures": cmd_measures, "predict": cmd_predict,
    "verify": cmd_verify, "datasets": cmd_datasets,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else 0
    except DataError as exc:
        err.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
