"""Analysis pipeline and report rendering (text, csv, json)."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

from .adjust import DoTable, ParadoxReport, detect_simpson, do_adjust
from .measures import MEASURE_IDS, PROBABILITY_SCALE, MeasureResult, compute
from .tables import CausalRole, JointTable, Schema, StratifiedDataset, pool


@dataclass(frozen=True)
class GroupRow:
    label: str
    prior: float
    rates: tuple[float, float]  # reference, alternative
    weights: tuple[float, float]  # P(g | cause)
    counts: tuple[tuple[float, float], ...] | None = None  # (successes, total) per cause


@dataclass(frozen=True)
class AnalysisReport:
    dataset: str
    schema: str
    causes: tuple[str, str]
    outcome_labels: tuple[str, str]
    prior_source: str
    observed: JointTable
    adjusted: dict = field(default_factory=dict)  # role name -> DoTable
    paradox: ParadoxReport | None = None
    measures: dict = field(default_factory=dict)  # section -> {id: MeasureResult}
    groups: tuple[GroupRow, ...] = ()
    metadata: tuple[tuple[str, str], ...] = ()


def _group_rows(ds: StratifiedDataset) -> tuple[GroupRow, ...]:
    prior = ds.group_prior()
    w0, w1 = ds.conditional_weights(0), ds.conditional_weights(1)
    rows = []
    for i, g in enumerate(ds.groups):
        counts = None
        if ds.schema is Schema.COUNTS:
            counts = tuple((float(c.successes), float(c.total)) for c in g.cells)
        rows.append(GroupRow(
            g.label, float(prior[i]),
            (float(ds.rate(i, 0)), float(ds.rate(i, 1))),
            (float(w0[i]), float(w1[i])), counts,
        ))
    return tuple(rows)


def analyze(dataset: StratifiedDataset, roles=(), measure_ids=MEASURE_IDS,
            name: str = "dataset") -> AnalysisReport:
    """pool -> do-adjust per role -> paradox check -> measures."""
    observed = pool(dataset)
    adjusted = {}
    for role in roles:
        role = CausalRole(role)
        adjusted[role.value] = do_adjust(dataset, role)
    ids = tuple(measure_ids)
    measures = {"observed": compute(observed, ids)} if ids else {}
    for role, table in adjusted.items():
        if ids:
            measures[role] = compute(table.as_joint(observed.p_x1), ids)
    return AnalysisReport(
        dataset=name,
        schema=dataset.schema.value,
        causes=dataset.causes,
        outcome_labels=dataset.outcome_labels,
        prior_source=dataset.prior_source,
        observed=observed,
        adjusted=adjusted,
        paradox=detect_simpson(dataset),
        measures=measures,
        groups=_group_rows(dataset),
        metadata=dataset.metadata,
    )


# ---------------------------------------------------------------------------
# formatting helpers


def fmt(value: float, percent: bool = False) -> str:
    """Four significant digits; ``percent`` scales by 100 and adds '%'."""
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if percent:
        return f"{100.0 * value:#.4g}%"
    s = f"{value:#.4g}"
    return s[:-1] if s.endswith(".") else s


def _num(value: float):
    """JSON-safe full precision value; infinities become strings."""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def _unnum(value) -> float:
    if isinstance(value, str):
        return float(value)
    return float(value)


def _direction_word(d: int | None, causes) -> str:
    if d is None:
        return "unavailable"
    if d == 0:
        return "no difference"
    return f"favours {causes[1] if d > 0 else causes[0]}"


def _align(rows: list[list[str]]) -> list[str]:
    widths = [max(len(r[i]) for r in rows if i < len(r)) for i in range(max(map(len, rows)))]
    out = []
    for r in rows:
        cells = [c.ljust(widths[i]) for i, c in enumerate(r)]
        out.append("  ".join(cells).rstrip())
    return out


# ---------------------------------------------------------------------------
# renderers


def _render_text(r: AnalysisReport, percent: bool) -> str:
    ref, alt = r.causes
    y1 = r.outcome_labels[0]
    lines = [f"dataset  {r.dataset} ({r.schema} schema, P(g) {r.prior_source})"]
    lines.append(f"causes   reference {ref}, alternative {alt}; outcome {y1}")
    for key, value in r.metadata:
        if key in (ref, alt, y1, "description"):
            lines.append(f"  {key}: {value}")
    lines.append("")
    rows = [["group", "P(g)", f"P({y1}|{ref},g)", f"P(g|{ref})", f"P({y1}|{alt},g)", f"P(g|{alt})"]]
    for g in r.groups:
        rows.append([
            g.label, fmt(g.prior), fmt(g.rates[0], percent), fmt(g.weights[0]),
            fmt(g.rates[1], percent), fmt(g.weights[1]),
        ])
    lines += _align(rows)
    lines.append("")
    rows = [["rate", ref, alt, "basis"]]
    obs = r.observed
    rows.append([f"P({y1}|x)", fmt(obs.p_y1_given_x0, percent), fmt(obs.p_y1_given_x1, percent),
                 "observed, weights P(g|x)"])
    for role, t in r.adjusted.items():
        basis = "do-adjusted, role=" + role + (", weights P(g)" if role == "confounder" else ", weights P(g|x)")
        rows.append([f"P({y1}|do(x))", fmt(t.p_y1_do_x0, percent), fmt(t.p_y1_do_x1, percent), basis])
    lines += _align(rows)
    if r.paradox is not None and len(r.groups) > 1:
        p = r.paradox
        lines.append("")
        if p.unanimous:
            groups = f"every group {_direction_word(p.group_direction[0][1], r.causes)}"
        else:
            groups = "groups disagree"
        state = "paradox present" if p.paradox_present else "no paradox"
        lines.append(
            f"simpson  {state}: {groups}, pooled {_direction_word(p.overall_direction, r.causes)}, "
            f"confounder-adjusted {_direction_word(p.adjusted_direction, r.causes)}"
        )
    if r.measures:
        lines.append("")
        sections = list(r.measures)
        rows = [["measure", "rule"] + [s if s == "observed" else f"adjusted[{s}]" for s in sections]]
        notes = []
        for mid in r.measures["observed"]:
            first = r.measures["observed"][mid]
            row = [mid, first.direction_pair]
            for s in sections:
                m = r.measures[s][mid]
                if m.defined:
                    row.append(fmt(m.value, percent and mid in PROBABILITY_SCALE))
                else:
                    row.append("undefined")
                    notes.append(f"{mid} ({s}): {m.note}")
            rows.append(row)
        lines += _align(rows)
        for n in notes:
            lines.append(f"  note: {n}")
    return "\n".join(lines) + "\n"


def _render_csv(r: AnalysisReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["section", "item", "key", "value", "note"])
    w.writerow(["dataset", "name", "", r.dataset, ""])
    w.writerow(["dataset", "schema", "", r.schema, ""])
    w.writerow(["dataset", "prior_source", "", r.prior_source, ""])
    for g in r.groups:
        w.writerow(["group", g.label, "prior", repr(g.prior), ""])
        for i, cause in enumerate(r.causes):
            w.writerow(["group", g.label, f"rate:{cause}", repr(g.rates[i]), ""])
            w.writerow(["group", g.label, f"weight:{cause}", repr(g.weights[i]), ""])
    obs = r.observed
    w.writerow(["observed", "p_y1", r.causes[0], repr(obs.p_y1_given_x0), ""])
    w.writerow(["observed", "p_y1", r.causes[1], repr(obs.p_y1_given_x1), ""])
    for role, t in r.adjusted.items():
        w.writerow([f"adjusted:{role}", "p_y1_do", r.causes[0], repr(t.p_y1_do_x0), ""])
        w.writerow([f"adjusted:{role}", "p_y1_do", r.causes[1], repr(t.p_y1_do_x1), ""])
    if r.paradox is not None:
        p = r.paradox
        w.writerow(["paradox", "paradox_present", "", str(p.paradox_present).lower(), p.note])
        w.writerow(["paradox", "unanimous", "", str(p.unanimous).lower(), ""])
        w.writerow(["paradox", "overall_direction", "", p.overall_direction, ""])
        w.writerow(["paradox", "adjusted_direction", "",
                    "" if p.adjusted_direction is None else p.adjusted_direction, ""])
    for section, results in r.measures.items():
        for mid, m in results.items():
            value = repr(m.value) if m.defined else ""
            w.writerow([f"measure:{section}", mid, m.direction_pair, value, m.note])
    return buf.getvalue()


def _measure_dict(m: MeasureResult) -> dict:
    return {"value": _num(m.value), "rule": m.direction_pair, "defined": m.defined, "note": m.note}


def report_to_dict(r: AnalysisReport) -> dict:
    obs = r.observed
    return {
        "dataset": {
            "name": r.dataset,
            "schema": r.schema,
            "causes": list(r.causes),
            "outcome": list(r.outcome_labels),
            "prior_source": r.prior_source,
            "metadata": dict(r.metadata),
        },
        "observed": {
            "p_y1": {r.causes[0]: obs.p_y1_given_x0, r.causes[1]: obs.p_y1_given_x1},
            "p_cause": {r.causes[0]: obs.p_x0, r.causes[1]: obs.p_x1},
        },
        "adjusted": {
            role: {
                "p_y1_do": {r.causes[0]: t.p_y1_do_x0, r.causes[1]: t.p_y1_do_x1},
                "weights": dict(t.weights_used),
            }
            for role, t in r.adjusted.items()
        },
        "paradox": None if r.paradox is None else {
            "group_direction": dict(r.paradox.group_direction),
            "unanimous": r.paradox.unanimous,
            "overall_direction": r.paradox.overall_direction,
            "paradox_present": r.paradox.paradox_present,
            "adjusted_direction": r.paradox.adjusted_direction,
            "note": r.paradox.note,
        },
        "measures": {
            section: {mid: _measure_dict(m) for mid, m in results.items()}
            for section, results in r.measures.items()
        },
        "groups": [
            {
                "group": g.label,
                "prior": g.prior,
                "rate": dict(zip(r.causes, g.rates)),
                "weight": dict(zip(r.causes, g.weights)),
                **({"counts": {c: {"successes": s, "total": t}
                               for c, (s, t) in zip(r.causes, g.counts)}}
                   if g.counts is not None else {}),
            }
            for g in r.groups
        ],
    }


def report_from_dict(d: dict) -> AnalysisReport:
    """Inverse of :func:`report_to_dict`."""
    ds = d["dataset"]
    ref, alt = ds["causes"]
    y1, y0 = ds["outcome"]
    labels = dict(label_x1=alt, label_x0=ref, label_y1=y1, label_y0=y0)
    obs = d["observed"]
    observed = JointTable(obs["p_y1"][alt], obs["p_y1"][ref], obs["p_cause"][alt], **labels)
    adjusted = {
        role: DoTable(a["p_y1_do"][alt], a["p_y1_do"][ref], CausalRole(role),
                      tuple(a["weights"].items()), **labels)
        for role, a in d["adjusted"].items()
    }
    p = d["paradox"]
    paradox = None if p is None else ParadoxReport(
        tuple(p["group_direction"].items()), p["unanimous"], p["overall_direction"],
        p["paradox_present"], p["adjusted_direction"], p["note"],
    )
    measures = {
        section: {
            mid: MeasureResult(mid, _unnum(m["value"]), m["rule"], m["defined"], m["note"])
            for mid, m in results.items()
        }
        for section, results in d["measures"].items()
    }
    groups = tuple(
        GroupRow(
            g["group"], g["prior"],
            (g["rate"][ref], g["rate"][alt]),
            (g["weight"][ref], g["weight"][alt]),
            None if "counts" not in g else tuple(
                (g["counts"][c]["successes"], g["counts"][c]["total"]) for c in (ref, alt)
            ),
        )
        for g in d["groups"]
    )
    return AnalysisReport(
        ds["name"], ds["schema"], (ref, alt), (y1, y0), ds["prior_source"],
        observed, adjusted, paradox, measures, groups, tuple(ds["metadata"].items()),
    )


REPORT_JSON_SCHEMA = {
    "type": "object",
    "required": ["dataset", "observed", "adjusted", "paradox", "measures", "groups"],
    "additionalProperties": False,
    "properties": {
        "dataset": {
            "type": "object",
            "required": ["name", "schema", "causes", "outcome", "prior_source", "metadata"],
            "properties": {
                "schema": {"enum": ["counts", "rates"]},
                "causes": {"type": "array", "minItems": 2, "maxItems": 2},
                "outcome": {"type": "array", "minItems": 2, "maxItems": 2},
            },
        },
        "observed": {"type": "object", "required": ["p_y1", "p_cause"]},
        "adjusted": {
            "type": "object",
            "propertyNames": {"enum": ["confounder", "mediator"]},
            "additionalProperties": {"type": "object", "required": ["p_y1_do", "weights"]},
        },
        "paradox": {"type": ["object", "null"]},
        "measures": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "additionalProperties": {
                    "type": "object",
                    "required": ["value", "rule", "defined", "note"],
                    "properties": {
                        "value": {"oneOf": [{"type": "number"}, {"enum": ["inf", "-inf"]}]},
                        "defined": {"type": "boolean"},
                    },
                },
            },
        },
        "groups": {"type": "array", "items": {"type": "object", "required": ["group", "prior", "rate", "weight"]}},
    },
}


def render_report(report: AnalysisReport, format: str = "text", percent: bool = False) -> bytes:
    """Deterministic rendering; json keeps every number at full precision."""
    if format == "text":
        out = _render_text(report, percent)
    elif format == "csv":
        out = _render_csv(report)
    elif format == "json":
        out = json.dumps(report_to_dict(report), indent=2) + "\n"
    else:
        raise ValueError(f"unknown format {format!r}")
    return out.encode("utf-8")
