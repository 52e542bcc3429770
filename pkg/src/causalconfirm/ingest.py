"""Reading and writing stratified datasets as CSV, plus the bundled datasets.

File format
-----------
UTF-8, comma separated. The first line is the header and selects the schema:

* ``group,cause,successes,total`` -- counts
* ``group,cause,rate,weight``     -- rates, weight = P(group | cause)

Numbers use a decimal point, no exponent and no thousands separator; an exact
ratio ``n/d`` is also accepted. Lines starting with ``#`` are comments unless
they name one of the directives below::

    #causes,<reference>,<alternative>
    #outcome,<label of y1>,<label of y0>
    #prior,<group>,<P(group)>
    #cause_prior,<cause>,<P(cause)>
    #outcome_prior,<P(y1)>
    #normalize
    #meta,<key>,<value>
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .errors import DataError, DuplicateCell, ParseError, SchemaError
from .tables import (
    Schema,
    StratifiedDataset,
    build_from_counts,
    build_from_rates,
)

HEADERS = {
    ("group", "cause", "successes", "total"): Schema.COUNTS,
    ("group", "cause", "rate", "weight"): Schema.RATES,
}
_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)$|^\d+/\d+$")
_DIRECTIVES = {
    "#causes": 2, "#outcome": 2, "#prior": 2, "#cause_prior": 2,
    "#outcome_prior": 1, "#normalize": 0, "#meta": 2,
}


def parse_number(text: str, line: int | None = None, column: int | None = None) -> Fraction:
    """Exact value of a plain decimal or ``n/d`` literal."""
    s = text.strip()
    if not _NUMBER.match(s):
        raise ParseError(f"malformed number {text!r}", line, column)
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {text!r}", line, column) from None


def format_number(value: Fraction) -> str:
    """Exact decimal when the value has one, otherwise ``n/d``."""
    value = Fraction(value)
    den = value.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{value.numerator}/{value.denominator}"
    digits = max(twos, fives)
    if digits == 0:
        return str(value.numerator)
    scaled = value * 10**digits
    sign = "-" if scaled < 0 else ""
    q = str(abs(scaled.numerator))
    q = q.rjust(digits + 1, "0")
    return f"{sign}{q[:-digits]}.{q[-digits:]}"


def parse_dataset(text: str) -> StratifiedDataset:
    lines = text.splitlines()
    if not lines:
        raise SchemaError("empty file")
    header = tuple(f.strip() for f in lines[0].lstrip("﻿").split(","))
    if header not in HEADERS:
        raise SchemaError(
            f"line 1: unknown header {lines[0]!r}; expected one of "
            + "; ".join(",".join(h) for h in HEADERS)
        )
    schema = HEADERS[header]
    rows = []
    seen: dict[tuple[str, str], int] = {}
    opts: dict = {"metadata": {}}
    prior: dict[str, Fraction] = {}
    cause_prior: dict[str, Fraction] = {}
    for lineno, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        fields = next(csv.reader([raw]))
        if raw.lstrip().startswith("#"):
            name = fields[0].strip()
            if name not in _DIRECTIVES:
                continue  # comment
            args = [f.strip() for f in fields[1:]]
            if len(args) != _DIRECTIVES[name]:
                raise ParseError(
                    f"{name} takes {_DIRECTIVES[name]} field(s), got {len(args)}", lineno
                )
            if name == "#causes":
                opts["causes"] = tuple(args)
            elif name == "#outcome":
                opts["outcome_labels"] = tuple(args)
            elif name == "#prior":
                if args[0] in prior:
                    raise ParseError(f"duplicate prior for group {args[0]!r}", lineno)
                prior[args[0]] = parse_number(args[1], lineno, 3)
            elif name == "#cause_prior":
                cause_prior[args[0]] = parse_number(args[1], lineno, 3)
            elif name == "#outcome_prior":
                opts["outcome_prior"] = parse_number(args[0], lineno, 2)
            elif name == "#normalize":
                opts["normalize"] = True
            elif name == "#meta":
                opts["metadata"][args[0]] = args[1]
            continue
        if len(fields) != 4:
            raise ParseError(f"expected 4 fields, got {len(fields)}", lineno)
        group, cause = fields[0].strip(), fields[1].strip()
        if not group:
            raise ParseError("empty group label", lineno, 1)
        if not cause:
            raise ParseError("empty cause label", lineno, 2)
        if (group, cause) in seen:
            raise DuplicateCell(
                f"line {lineno}: cell ({group}, {cause}) already given on line {seen[(group, cause)]}"
            )
        seen[(group, cause)] = lineno
        a = parse_number(fields[2], lineno, 3)
        b = parse_number(fields[3], lineno, 4)
        rows.append((group, cause, a, b))

    if schema is Schema.COUNTS:
        extra = [k for k in ("outcome_prior", "normalize") if k in opts]
        if prior or cause_prior or extra:
            raise SchemaError("counts files cannot declare priors or #normalize")
        return build_from_counts(
            rows, causes=opts.get("causes"),
            outcome_labels=opts.get("outcome_labels", ("y1", "y0")),
            metadata=opts["metadata"],
        )
    return build_from_rates(
        rows,
        group_prior=prior or None,
        causes=opts.get("causes"),
        cause_prior=cause_prior or None,
        outcome_prior=opts.get("outcome_prior"),
        normalize=opts.get("normalize", False),
        outcome_labels=opts.get("outcome_labels", ("y1", "y0")),
        metadata=opts["metadata"],
    )


def load_dataset(source) -> StratifiedDataset:
    """Load from a path, an open text stream, or the name of a bundled CSV."""
    if hasattr(source, "read"):
        return parse_dataset(source.read())
    path = Path(source)
    if not path.exists() and not path.suffix:
        bundled = resources.files(__package__).joinpath("data").joinpath(f"{source}.csv")
        if bundled.is_file():
            return parse_dataset(bundled.read_text(encoding="utf-8"))
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {source}: {exc.strerror or exc}") from None
    except UnicodeDecodeError as exc:
        raise ParseError(f"{source} is not valid UTF-8: {exc.reason}") from None
    return parse_dataset(text)


def dump_dataset(ds: StratifiedDataset) -> str:
    """CSV text that :func:`parse_dataset` turns back into an equal dataset."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if ds.schema is Schema.COUNTS:
        w.writerow(["group", "cause", "successes", "total"])
    else:
        w.writerow(["group", "cause", "rate", "weight"])
    for key, value in ds.metadata:
        w.writerow(["#meta", key, value])
    w.writerow(["#causes", *ds.causes])
    w.writerow(["#outcome", *ds.outcome_labels])
    if ds.normalize:
        w.writerow(["#normalize"])
    if ds.outcome_prior is not None:
        w.writerow(["#outcome_prior", format_number(ds.outcome_prior)])
    if ds.declared_cause_prior is not None:
        w.writerow(["#cause_prior", ds.causes[1], format_number(ds.declared_cause_prior)])
    if ds.declared_group_prior is not None:
        for label, p in zip(ds.group_labels, ds.declared_group_prior):
            w.writerow(["#prior", label, format_number(p)])
    for g in ds.groups:
        for cause, cell in zip(ds.causes, g.cells):
            if ds.schema is Schema.COUNTS:
                vals = (cell.successes, cell.total)
            else:
                vals = (cell.rate, cell.weight)
            w.writerow([g.label, cause, *map(format_number, vals)])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# bundled datasets


@dataclass(frozen=True)
class BuiltinDataset:
    name: str
    description: str
    parts: tuple[tuple[str, StratifiedDataset], ...]

    def part(self, name: str) -> StratifiedDataset:
        return dict(self.parts)[name]


def flat_dataset(p_alt, p_ref, causes=("x0", "x1"), outcome_labels=("y1", "y0"),
                 metadata=None) -> StratifiedDataset:
    """A single-group dataset holding one 2x2 table (reference listed first)."""
    rows = [("all", causes[0], p_ref, 1), ("all", causes[1], p_alt, 1)]
    return build_from_rates(
        rows, group_prior={"all": 1}, causes=causes,
        outcome_labels=outcome_labels, metadata=metadata,
    )


def _per_100k(x: str) -> Fraction:
    return Fraction(x) / 100000


def builtin_datasets() -> dict[str, BuiltinDataset]:
    out = {}
    out["kidney_stones"] = BuiltinDataset(
        "kidney_stones",
        "kidney stone treatments x1, x2 by stone size (counts, 700 patients)",
        (("kidney_stones", load_dataset("kidney_stones")),),
    )
    out["covid_cfr_by_age"] = BuiltinDataset(
        "covid_cfr_by_age",
        "COVID-19 case fatality by age group, non-Hispanic white x1 vs other x2 (rates)",
        (("covid_cfr_by_age", load_dataset("covid_cfr_by_age")),),
    )
    vac_meta = {
        "x0": "unvaccinated", "x1": "vaccinated",
        "units": "per 100,000 people aged 5+, week of 2022-06-20 to 2022-06-26",
        "source": "US CDC rates by vaccination status",
    }
    out["vaccine_rates"] = BuiltinDataset(
        "vaccine_rates",
        "weekly COVID-19 cases and deaths per 100k, vaccinated x1 vs unvaccinated x0",
        (
            ("cases", flat_dataset(_per_100k("189.5"), _per_100k("512.6"),
                                   metadata={**vac_meta, "y1": "reported case"})),
            ("deaths", flat_dataset(_per_100k("0.34"), _per_100k("1.89"),
                                    metadata={**vac_meta, "y1": "COVID-19 death",
                                              "annual_mortality_x0": "0.001",
                                              "annual_mortality_x1": "0.00018"})),
        ),
    )
    mort_meta = {
        "x0": "common causes of death", "x1": "common causes plus COVID-19",
        "y1": "death within a year",
    }
    out["mortality_covid"] = BuiltinDataset(
        "mortality_covid",
        "annual mortality from common causes x0 vs common causes plus COVID-19 x1",
        (
            ("unvaccinated", flat_dataset(Fraction("0.014"), Fraction("0.013"),
                                          metadata={**mort_meta, "covid_mortality": "0.001"})),
            ("vaccinated", flat_dataset(Fraction("0.01318"), Fraction("0.013"),
                                        metadata={**mort_meta, "covid_mortality": "0.00018"})),
        ),
    )
    out["pd_vs_deltastar"] = BuiltinDataset(
        "pd_vs_deltastar",
        "two flat tables contrasting Pd with Delta*P",
        (
            ("no_big_difference", flat_dataset(Fraction("0.9"), Fraction("0.8"))),
            ("no_counterexample", flat_dataset(Fraction("0.2"), Fraction(0))),
        ),
    )
    return out
