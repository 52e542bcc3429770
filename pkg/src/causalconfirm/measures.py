"""Risk, causal-confirmation, odds and Bayesian confirmation measures.

Every measure is evaluated on a flat table: a :class:`~causalconfirm.tables.JointTable`
or a :class:`~causalconfirm.adjust.DoTable`. ``x1`` is the alternative cause
(numerator of ratios), ``x0`` the reference. For the Bayesian measures the
evidence ``e`` is the cause and the hypothesis ``h`` the outcome.

Degenerate inputs never raise. The result is returned with ``defined=False``,
value 0 and a note, so batch reports over sparse strata keep going.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .adjust import DoTable
from .errors import DegenerateMarginal, DegenerateOutcome
from .tables import JointTable

INF = math.inf

# fixed order used for ``all``; also the set of valid identifiers
MEASURE_IDS = (
    "rd", "rr", "pd", "delta_star", "or", "or_n", "cc", "ce",
    "f", "d", "m", "r", "c", "z", "s", "n", "l", "fko", "bstar", "cstar",
)
NORMALIZED = frozenset({"cc", "ce", "bstar", "cstar", "z", "fko", "or_n"})
# measures on the probability scale; shown in percent when asked
PROBABILITY_SCALE = frozenset({"rd", "f", "d", "m", "c", "s", "n"})


@dataclass(frozen=True)
class MeasureResult:
    measure_id: str
    value: float
    direction_pair: str
    defined: bool = True
    note: str = ""


def _coerce(table) -> JointTable:
    if isinstance(table, DoTable):
        return table.as_joint()
    return table


def _causal_rule(t: JointTable) -> str:
    return f"{t.label_x1}/{t.label_x0}=>{t.label_y1}"


def _ratio(num: float, den: float) -> float | None:
    """num/den with x/0 = inf for x > 0 and 0/0 = None."""
    if den == 0.0:
        return None if num == 0.0 else INF
    return num / den


def _normalized_ratio(r: float) -> float:
    """(r - 1) / max(r, 1), with the limit 1 at r = inf."""
    if math.isinf(r):
        return 1.0
    return (r - 1.0) / max(r, 1.0)


# ---------------------------------------------------------------------------
# correlation matrix


@dataclass(frozen=True)
class CorrelationMatrix:
    """m(x_i, y_j) = P(y_j | x_i) / P(y_j), keyed by (i, j), 1 = x1 / y1."""

    m: dict
    p_x1: float
    p_y1: float

    def __getitem__(self, key) -> float:
        return self.m[key]


def correlation_matrix(table) -> CorrelationMatrix:
    t = _coerce(table)
    p_y = {1: t.p_y1, 0: t.p_y0}
    if p_y[1] <= 0.0 or p_y[0] <= 0.0:
        raise DegenerateOutcome("both outcomes need positive probability")
    cond = {(1, 1): t.p_y1_given_x1, (0, 1): t.p_y1_given_x0}
    cond[(1, 0)] = 1.0 - cond[(1, 1)]
    cond[(0, 0)] = 1.0 - cond[(0, 1)]
    m = {k: v / p_y[k[1]] for k, v in cond.items()}
    return CorrelationMatrix(m, t.p_x1, t.p_y1)


def predict_with_correlation(m: CorrelationMatrix, p_x1: float, p_y1: float) -> dict:
    """Bayes-style predictions from the correlation matrix and both marginals.

    Returns P(y1|x1), P(y1|x0), P(x1|y1) and P(x1|y0).
    """
    p_x = {1: p_x1, 0: 1.0 - p_x1}
    p_y = {1: p_y1, 0: 1.0 - p_y1}
    if not (0.0 <= p_x1 <= 1.0 and 0.0 <= p_y1 <= 1.0):
        raise DegenerateMarginal("marginals must be probabilities")
    out = {}
    for i in (1, 0):
        norm = sum(p_y[j] * m[(i, j)] for j in (1, 0))
        if norm <= 0.0:
            raise DegenerateMarginal(f"m(x{i}) = 0")
        out[f"p_y1_given_x{i}"] = p_y[1] * m[(i, 1)] / norm
    for j in (1, 0):
        norm = sum(p_x[i] * m[(i, j)] for i in (1, 0))
        if norm <= 0.0:
            raise DegenerateMarginal(f"m(y{j}) = 0")
        out[f"p_x1_given_y{j}"] = p_x[1] * m[(1, j)] / norm
    return out


def cc_from_correlation(m: CorrelationMatrix) -> float:
    """Cc written in terms of m(x, y1) only."""
    a, b = m[(1, 1)], m[(0, 1)]
    return (a - b) / max(a, b)


# ---------------------------------------------------------------------------
# risk and causal measures


def risk_measures(table) -> dict[str, MeasureResult]:
    """Risk difference, risk ratio, probability of causation and Delta*P."""
    t = _coerce(table)
    p1, p0 = t.p_y1_given_x1, t.p_y1_given_x0
    rule = _causal_rule(t)
    out = {"rd": MeasureResult("rd", p1 - p0, rule)}
    rr = _ratio(p1, p0)
    if rr is None:
        out["rr"] = MeasureResult("rr", 0.0, rule, False, "both rates are zero")
        out["pd"] = MeasureResult("pd", 0.0, rule, False, "both rates are zero")
    else:
        out["rr"] = MeasureResult("rr", rr, rule)
        if math.isinf(rr):
            pd = 1.0
        else:
            pd = max(0.0, (p1 - p0) / p1) if p1 > 0.0 else 0.0
        out["pd"] = MeasureResult("pd", pd, rule)
    if p0 >= 1.0:
        out["delta_star"] = MeasureResult(
            "delta_star", 0.0, rule, False, "reference rate is 1"
        )
    else:
        out["delta_star"] = MeasureResult("delta_star", (p1 - p0) / (1.0 - p0), rule)
    return out


def causal_confirmation_cc(table) -> MeasureResult:
    """Cc(x1/x0 => y1) = (R - 1) / max(R, 1) with R the risk ratio."""
    t = _coerce(table)
    p1, p0 = t.p_y1_given_x1, t.p_y1_given_x0
    rule = _causal_rule(t)
    top = max(p1, p0)
    if top == 0.0:
        return MeasureResult("cc", 0.0, rule, False, "both rates are zero")
    return MeasureResult("cc", (p1 - p0) / top, rule)


def causal_confirmation_ce(table) -> MeasureResult:
    """Ce(x1 => y1): how inevitable y1 is once x1 is given."""
    t = _coerce(table)
    p = t.p_y1_given_x1
    return MeasureResult("ce", (2.0 * p - 1.0) / max(p, 1.0 - p), f"{t.label_x1}=>{t.label_y1}")


def odds_measures(table) -> dict[str, MeasureResult]:
    t = _coerce(table)
    p1, p0 = t.p_y1_given_x1, t.p_y1_given_x0
    rule = _causal_rule(t)
    odds = _ratio(p1 * (1.0 - p0), p0 * (1.0 - p1))
    if odds is None:
        note = "odds ratio has the form 0/0"
        return {
            "or": MeasureResult("or", 0.0, rule, False, note),
            "or_n": MeasureResult("or_n", 0.0, rule, False, note),
        }
    return {
        "or": MeasureResult("or", odds, rule),
        "or_n": MeasureResult("or_n", _normalized_ratio(odds), rule),
    }


def combined_risk(base: float, extra: float) -> float:
    """Probability of the outcome from either of two independent causes."""
    return base + extra - base * extra


# ---------------------------------------------------------------------------
# Bayesian confirmation measures


def _undefined(mid, rule, note):
    return MeasureResult(mid, 0.0, rule, False, note)


def bayesian_suite(table) -> dict[str, MeasureResult]:
    """The incremental and inductive confirmation measures for e1 -> h1.

    Here e is the cause and h the outcome, so e.g. D = P(y1|x1) - P(y1) and
    b* = (P(x1|y1) - P(x1|y0)) / max(...). Logarithms are base 2.
    """
    t = _coerce(table)
    ex, hy = t.label_x1, t.label_y1
    rule = f"{ex}->{hy}"
    p_h_e1 = t.p_y1_given_x1
    p_h_e0 = t.p_y1_given_x0
    p_e1 = t.p_x1
    p_h = t.p_y1
    out: dict[str, MeasureResult] = {}

    out["f"] = MeasureResult("f", p_h_e1, rule)
    out["d"] = MeasureResult("d", p_h_e1 - p_h, rule)
    out["c"] = MeasureResult("c", p_e1 * p_h_e1 - p_e1 * p_h, rule)
    out["s"] = MeasureResult("s", p_h_e1 - p_h_e0, rule)

    if p_h <= 0.0:
        out["r"] = _undefined("r", rule, f"P({hy}) = 0")
    elif p_h_e1 == 0.0:
        out["r"] = MeasureResult("r", -INF, rule, True, "log of zero")
    else:
        out["r"] = MeasureResult("r", math.log2(p_h_e1 / p_h), rule)

    diff = p_h_e1 - p_h
    scale = (1.0 - p_h) if diff >= 0.0 else p_h
    if scale <= 0.0:
        out["z"] = _undefined("z", rule, "normalizer is zero")
    else:
        out["z"] = MeasureResult("z", diff / scale, rule)

    p_e1_h1 = p_e1_h0 = None
    if 0.0 < p_h < 1.0:
        p_e1_h1 = t.p_x1_given(1)
        p_e1_h0 = t.p_x1_given(0)
    if p_e1_h1 is None:
        note = f"P({hy}) is 0 or 1"
        for mid in ("m", "n", "l", "fko", "bstar"):
            out[mid] = _undefined(mid, rule, note)
    else:
        out["m"] = MeasureResult("m", p_e1_h1 - p_e1, rule)
        out["n"] = MeasureResult("n", p_e1_h1 - p_e1_h0, rule)
        lr = _ratio(p_e1_h1, p_e1_h0)
        if lr is None:
            out["l"] = _undefined("l", rule, "likelihood ratio 0/0")
        elif lr == 0.0:
            out["l"] = MeasureResult("l", -INF, rule, True, "log of zero")
        else:
            out["l"] = MeasureResult("l", math.log2(lr), rule)
        den = p_e1_h1 + p_e1_h0
        if den == 0.0:
            out["fko"] = _undefined("fko", rule, "both likelihoods are zero")
            out["bstar"] = _undefined("bstar", rule, "both likelihoods are zero")
        else:
            out["fko"] = MeasureResult("fko", (p_e1_h1 - p_e1_h0) / den, rule)
            out["bstar"] = MeasureResult(
                "bstar", (p_e1_h1 - p_e1_h0) / max(p_e1_h1, p_e1_h0), rule
            )

    out["cstar"] = MeasureResult(
        "cstar", (2.0 * p_h_e1 - 1.0) / max(p_h_e1, 1.0 - p_h_e1), rule
    )
    return {mid: out[mid] for mid in ("f", "d", "m", "r", "c", "z", "s", "n", "l", "fko", "bstar", "cstar")}


def parse_measure_list(spec: str) -> tuple[str, ...]:
    """Comma list of identifiers; ``all`` expands to :data:`MEASURE_IDS`."""
    items = [s.strip().lower() for s in spec.split(",") if s.strip()]
    if items == ["all"]:
        return MEASURE_IDS
    unknown = [s for s in items if s not in MEASURE_IDS]
    if unknown:
        raise ValueError(f"unknown measure(s): {', '.join(unknown)}")
    seen: list[str] = []
    for s in items:
        if s not in seen:
            seen.append(s)
    return tuple(seen)


def compute(table, measure_ids=MEASURE_IDS) -> dict[str, MeasureResult]:
    """Evaluate a selection of measures, in the order given."""
    ids = tuple(measure_ids)
    if not ids:
        return {}
    pool: dict[str, MeasureResult] = {}
    if {"rd", "rr", "pd", "delta_star"} & set(ids):
        pool.update(risk_measures(table))
    if {"or", "or_n"} & set(ids):
        pool.update(odds_measures(table))
    if "cc" in ids:
        pool["cc"] = causal_confirmation_cc(table)
    if "ce" in ids:
        pool["ce"] = causal_confirmation_ce(table)
    if set(ids) - set(pool):
        pool.update(bayesian_suite(table))
    return {mid: pool[mid] for mid in ids}
