"""Data model for binary-cause / binary-outcome data.

Two shapes are supported: a flat 2x2 table (:class:`JointTable`) and a table
stratified by a third variable (:class:`StratifiedDataset`). Causes are always
an ordered pair ``(reference, alternative)``; the reference cause plays the
role of the default ``x0`` and every comparison reads "replacing the reference
with the alternative".

Stratified data keeps its numbers as :class:`fractions.Fraction` so that
pooling and standardization are exact; floats appear only at the boundary.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .errors import (
    DataError,
    DegenerateMarginal,
    DuplicateCell,
    InvalidCount,
    MissingCell,
    PriorError,
    RateOutOfRange,
    SchemaError,
    TooManyCauses,
    WeightSumViolation,
)

WEIGHT_TOL = Fraction(1, 10**6)
# largest deviation from 1 that ``normalize`` will absorb (printed-rounding slack)
NORMALIZE_TOL = Fraction(1, 100)


class Schema(enum.Enum):
    COUNTS = "counts"
    RATES = "rates"


class CausalRole(enum.Enum):
    CONFOUNDER = "confounder"
    MEDIATOR = "mediator"


def as_fraction(value) -> Fraction:
    """Exact conversion; floats go through their shortest repr so 0.1 -> 1/10."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DataError(f"not a number: {value!r}")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DataError(f"non-finite value: {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DataError(f"not a number: {value!r}") from exc
    raise DataError(f"not a number: {value!r}")


# ---------------------------------------------------------------------------
# flat tables


@dataclass(frozen=True)
class JointTable:
    """A 2x2 association given as two conditionals plus the cause marginal.

    ``p_y1_given_x1`` belongs to the alternative cause, ``p_y1_given_x0`` to
    the reference cause. ``p_x1`` is the share of the alternative cause.
    """

    p_y1_given_x1: float
    p_y1_given_x0: float
    p_x1: float = 0.5
    label_x1: str = "x1"
    label_x0: str = "x0"
    label_y1: str = "y1"
    label_y0: str = "y0"

    def __post_init__(self):
        for name in ("p_y1_given_x1", "p_y1_given_x0", "p_x1"):
            v = float(getattr(self, name))
            if not 0.0 <= v <= 1.0:
                raise RateOutOfRange(f"{name}={v!r} is not a probability")
            object.__setattr__(self, name, v)

    @property
    def p_x0(self) -> float:
        return 1.0 - self.p_x1

    @property
    def p_y1(self) -> float:
        return self.p_x1 * self.p_y1_given_x1 + self.p_x0 * self.p_y1_given_x0

    @property
    def p_y0(self) -> float:
        return 1.0 - self.p_y1

    def joint(self) -> dict[tuple[int, int], float]:
        """P(x_i, y_j) keyed by ``(i, j)`` with 1 = alternative / y1."""
        a, b = self.p_y1_given_x1, self.p_y1_given_x0
        return {
            (1, 1): self.p_x1 * a,
            (1, 0): self.p_x1 * (1.0 - a),
            (0, 1): self.p_x0 * b,
            (0, 0): self.p_x0 * (1.0 - b),
        }

    def p_x1_given(self, outcome: int) -> float:
        """P(x1 | y_outcome); raises DegenerateMarginal when P(y_outcome) = 0."""
        j = self.joint()
        denom = j[(1, outcome)] + j[(0, outcome)]
        if denom <= 0.0:
            raise DegenerateMarginal(f"P({self.label_y1 if outcome else self.label_y0}) = 0")
        return j[(1, outcome)] / denom

    def swap_causes(self) -> "JointTable":
        return JointTable(
            self.p_y1_given_x0, self.p_y1_given_x1, 1.0 - self.p_x1,
            self.label_x0, self.label_x1, self.label_y1, self.label_y0,
        )

    def flip_outcome(self) -> "JointTable":
        return JointTable(
            1.0 - self.p_y1_given_x1, 1.0 - self.p_y1_given_x0, self.p_x1,
            self.label_x1, self.label_x0, self.label_y0, self.label_y1,
        )

    def transpose(self) -> "JointTable":
        """Same joint with the roles of cause and outcome exchanged."""
        return JointTable(
            self.p_x1_given(1), self.p_x1_given(0), self.p_y1,
            self.label_y1, self.label_y0, self.label_x1, self.label_x0,
        )

    def with_cause_marginal(self, p_x1: float) -> "JointTable":
        return JointTable(
            self.p_y1_given_x1, self.p_y1_given_x0, p_x1,
            self.label_x1, self.label_x0, self.label_y1, self.label_y0,
        )


# ---------------------------------------------------------------------------
# stratified data


@dataclass(frozen=True)
class CountCell:
    successes: Fraction
    total: Fraction

    @property
    def rate(self) -> Fraction:
        return self.successes / self.total


@dataclass(frozen=True)
class RateCell:
    rate: Fraction
    weight: Fraction  # P(g | x) as supplied


@dataclass(frozen=True)
class GroupRecord:
    label: str
    cells: tuple  # (reference cell, alternative cell)


@dataclass(frozen=True)
class StratifiedDataset:
    """Outcome rates per (group, cause) with the weights needed for pooling.

    ``causes`` is ``(reference, alternative)``. In the rates schema the group
    prior P(g) may be declared; otherwise it is derived from the cause
    marginal, which itself is declared, implied by a declared overall outcome
    rate, or defaults to 1/2.
    """

    groups: tuple[GroupRecord, ...]
    causes: tuple[str, str]
    schema: Schema
    declared_group_prior: tuple[Fraction, ...] | None = None
    declared_cause_prior: Fraction | None = None
    outcome_prior: Fraction | None = None
    normalize: bool = False
    outcome_labels: tuple[str, str] = ("y1", "y0")
    metadata: tuple[tuple[str, str], ...] = field(default=())

    def __post_init__(self):
        _validate(self)

    # -- exact accessors -------------------------------------------------
    @property
    def group_labels(self) -> tuple[str, ...]:
        return tuple(g.label for g in self.groups)

    def rate(self, group: int, cause: int) -> Fraction:
        return self.groups[group].cells[cause].rate

    def _raw_weights(self, cause: int) -> list[Fraction]:
        if self.schema is Schema.COUNTS:
            totals = [g.cells[cause].total for g in self.groups]
            s = sum(totals)
            return [t / s for t in totals]
        return [g.cells[cause].weight for g in self.groups]

    def conditional_weights(self, cause: int) -> tuple[Fraction, ...]:
        """P(g | cause) for every group, normalized when requested."""
        w = self._raw_weights(cause)
        if self.normalize:
            s = sum(w)
            w = [x / s for x in w]
        return tuple(w)

    def pooled_rates(self) -> tuple[Fraction, Fraction]:
        out = []
        for c in (0, 1):
            w = self.conditional_weights(c)
            out.append(sum(wg * self.rate(i, c) for i, wg in enumerate(w)))
        return out[0], out[1]

    def cause_marginal(self) -> Fraction:
        """P(alternative cause)."""
        if self.schema is Schema.COUNTS:
            ref = sum(g.cells[0].total for g in self.groups)
            alt = sum(g.cells[1].total for g in self.groups)
            return alt / (ref + alt)
        if self.declared_cause_prior is not None:
            return self.declared_cause_prior
        if self.outcome_prior is not None:
            return _marginal_from_outcome_prior(self.pooled_rates(), self.outcome_prior)
        return Fraction(1, 2)

    @property
    def prior_source(self) -> str:
        """Where P(g) comes from: counts, declared, derived or default."""
        if self.schema is Schema.COUNTS:
            return "counts"
        if self.declared_group_prior is not None:
            return "declared"
        if self.declared_cause_prior is not None or self.outcome_prior is not None:
            return "derived"
        return "default"

    def group_prior(self) -> tuple[Fraction, ...]:
        """P(g). Equals sum_x P(x) P(g|x) unless declared explicitly."""
        if self.declared_group_prior is not None:
            p = list(self.declared_group_prior)
            if self.normalize:
                s = sum(p)
                p = [x / s for x in p]
            return tuple(p)
        if self.schema is Schema.COUNTS:
            totals = [g.cells[0].total + g.cells[1].total for g in self.groups]
            s = sum(totals)
            return tuple(t / s for t in totals)
        p_alt = self.cause_marginal()
        w0, w1 = self.conditional_weights(0), self.conditional_weights(1)
        return tuple((1 - p_alt) * a + p_alt * b for a, b in zip(w0, w1))

    def group_index(self, label: str) -> int:
        try:
            return self.group_labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    def cause_index(self, label: str) -> int:
        try:
            return self.causes.index(label)
        except ValueError:
            raise KeyError(label) from None


def _marginal_from_outcome_prior(pooled, p_y1) -> Fraction:
    ref, alt = pooled
    if alt == ref:
        raise PriorError("outcome prior cannot fix the cause marginal: pooled rates are equal")
    p = (p_y1 - ref) / (alt - ref)
    if not 0 <= p <= 1:
        raise PriorError(
            f"outcome prior {float(p_y1)} lies outside the pooled rates "
            f"[{float(min(ref, alt))}, {float(max(ref, alt))}]"
        )
    return p


def _check_sum(values, what, normalize):
    s = sum(values)
    slack = NORMALIZE_TOL if normalize else WEIGHT_TOL
    if abs(s - 1) > slack:
        raise WeightSumViolation(f"{what} sum to {float(s)!r}, expected 1")


def _validate(ds: StratifiedDataset) -> None:
    if len(ds.causes) != 2:
        raise TooManyCauses(f"exactly two causes are required, got {list(ds.causes)}")
    if ds.causes[0] == ds.causes[1]:
        raise DataError(f"the two causes must differ, got {ds.causes[0]!r} twice")
    if not ds.groups:
        raise MissingCell("dataset has no groups")
    labels = [g.label for g in ds.groups]
    if len(set(labels)) != len(labels):
        raise DuplicateCell("group labels must be unique")
    for g in ds.groups:
        if len(g.cells) != 2:
            raise MissingCell(f"group {g.label!r} must have one cell per cause")
        for cause, cell in zip(ds.causes, g.cells):
            where = f"({g.label}, {cause})"
            if ds.schema is Schema.COUNTS:
                if not isinstance(cell, CountCell):
                    raise SchemaError(f"{where}: counts schema needs count cells")
                if cell.total <= 0:
                    raise InvalidCount(f"{where}: total must be positive, got {cell.total}")
                if cell.successes < 0 or cell.successes > cell.total:
                    raise InvalidCount(
                        f"{where}: successes {cell.successes} not within [0, {cell.total}]"
                    )
            else:
                if not isinstance(cell, RateCell):
                    raise SchemaError(f"{where}: rates schema needs rate cells")
                if not 0 <= cell.rate <= 1:
                    raise RateOutOfRange(f"{where}: rate {float(cell.rate)} outside [0, 1]")
                if not 0 <= cell.weight <= 1:
                    raise RateOutOfRange(f"{where}: weight {float(cell.weight)} outside [0, 1]")
    if ds.schema is Schema.COUNTS:
        if (ds.declared_group_prior is not None or ds.declared_cause_prior is not None
                or ds.outcome_prior is not None):
            raise PriorError("priors are implied by counts and cannot be declared")
        return
    for c, cause in enumerate(ds.causes):
        _check_sum(ds._raw_weights(c), f"weights P(g|{cause})", ds.normalize)
    if ds.declared_group_prior is not None:
        if len(ds.declared_group_prior) != len(ds.groups):
            raise PriorError("group prior must list every group exactly once")
        if any(not 0 <= p <= 1 for p in ds.declared_group_prior):
            raise RateOutOfRange("group prior values must lie in [0, 1]")
        _check_sum(ds.declared_group_prior, "group prior P(g)", ds.normalize)
    if ds.declared_cause_prior is not None and ds.outcome_prior is not None:
        raise PriorError("declare either a cause prior or an outcome prior, not both")
    if ds.declared_cause_prior is not None and not 0 <= ds.declared_cause_prior <= 1:
        raise RateOutOfRange("cause prior must lie in [0, 1]")
    if ds.outcome_prior is not None:
        _marginal_from_outcome_prior(ds.pooled_rates(), ds.outcome_prior)


# ---------------------------------------------------------------------------
# builders


def _cause_order(seen: Sequence[str], causes: Sequence[str] | None) -> tuple[str, str]:
    if causes is not None:
        causes = tuple(causes)
        extra = [c for c in seen if c not in causes]
        if len(causes) != 2 or extra:
            raise TooManyCauses(f"expected two causes {list(causes)}, data has {list(seen)}")
        return causes  # type: ignore[return-value]
    if len(seen) > 2:
        raise TooManyCauses(f"more than two causes: {list(seen)}")
    if len(seen) < 2:
        raise MissingCell(f"two causes are required, found {list(seen)}")
    return seen[0], seen[1]


def _collect(rows, make_cell, causes):
    cells: dict[tuple[str, str], object] = {}
    group_order: list[str] = []
    cause_order: list[str] = []
    for row in rows:
        group, cause, a, b = row
        group, cause = str(group), str(cause)
        key = (group, cause)
        if key in cells:
            raise DuplicateCell(f"duplicate cell ({group}, {cause})")
        cells[key] = make_cell(group, cause, a, b)
        if group not in group_order:
            group_order.append(group)
        if cause not in cause_order:
            cause_order.append(cause)
    pair = _cause_order(cause_order, causes)
    groups = []
    for g in group_order:
        missing = [c for c in pair if (g, c) not in cells]
        if missing:
            raise MissingCell(f"group {g!r} has no cell for cause {missing[0]!r}")
        groups.append(GroupRecord(g, (cells[(g, pair[0])], cells[(g, pair[1])])))
    return tuple(groups), pair


def build_from_counts(
    rows: Iterable[tuple],
    causes: Sequence[str] | None = None,
    outcome_labels: tuple[str, str] = ("y1", "y0"),
    metadata: Mapping[str, str] | None = None,
) -> StratifiedDataset:
    """Dataset from ``(group, cause, successes, total)`` rows.

    Cause order defaults to order of first appearance, reference first.
    Successes need not be integral: a table published as "87% of 270" is
    carried as 234.9 successes.
    """

    def make(group, cause, successes, total):
        try:
            s, t = as_fraction(successes), as_fraction(total)
        except DataError as exc:
            raise InvalidCount(f"({group}, {cause}): {exc}") from None
        if t <= 0 or s < 0 or s > t:
            raise InvalidCount(f"({group}, {cause}): successes={s}, total={t}")
        return CountCell(s, t)

    groups, pair = _collect(rows, make, causes)
    return StratifiedDataset(
        groups, pair, Schema.COUNTS,
        outcome_labels=tuple(outcome_labels),
        metadata=tuple((metadata or {}).items()),
    )


def build_from_rates(
    rows: Iterable[tuple],
    group_prior: Mapping[str, object] | None = None,
    causes: Sequence[str] | None = None,
    cause_prior: Mapping[str, object] | None = None,
    outcome_prior=None,
    normalize: bool = False,
    outcome_labels: tuple[str, str] = ("y1", "y0"),
    metadata: Mapping[str, str] | None = None,
) -> StratifiedDataset:
    """Dataset from ``(group, cause, rate, weight)`` rows, weight = P(g|cause).

    ``normalize`` rescales weight columns and the group prior to sum to one;
    it accepts deviations up to 0.01, enough for tables printed to a few
    decimals, and still rejects anything larger.
    """

    def make(group, cause, rate, weight):
        try:
            return RateCell(as_fraction(rate), as_fraction(weight))
        except DataError as exc:
            raise RateOutOfRange(f"({group}, {cause}): {exc}") from None

    groups, pair = _collect(rows, make, causes)
    labels = [g.label for g in groups]
    prior = None
    if group_prior is not None:
        unknown = set(group_prior) - set(labels)
        if unknown:
            raise PriorError(f"group prior names unknown groups {sorted(unknown)}")
        missing = [g for g in labels if g not in group_prior]
        if missing:
            raise PriorError(f"group prior lacks groups {missing}")
        prior = tuple(as_fraction(group_prior[g]) for g in labels)
    p_alt = None
    if cause_prior is not None:
        unknown = set(cause_prior) - set(pair)
        if unknown:
            raise PriorError(f"cause prior names unknown causes {sorted(unknown)}")
        if pair[1] in cause_prior:
            p_alt = as_fraction(cause_prior[pair[1]])
            if pair[0] in cause_prior and abs(as_fraction(cause_prior[pair[0]]) + p_alt - 1) > WEIGHT_TOL:
                raise WeightSumViolation("cause prior must sum to 1")
        else:
            p_alt = 1 - as_fraction(cause_prior[pair[0]])
    return StratifiedDataset(
        groups, pair, Schema.RATES,
        declared_group_prior=prior,
        declared_cause_prior=p_alt,
        outcome_prior=None if outcome_prior is None else as_fraction(outcome_prior),
        normalize=normalize,
        outcome_labels=tuple(outcome_labels),
        metadata=tuple((metadata or {}).items()),
    )


def pool(dataset: StratifiedDataset) -> JointTable:
    """Observed table: each cause's group rates averaged with weights P(g|x)."""
    ref, alt = dataset.pooled_rates()
    return JointTable(
        float(alt), float(ref), float(dataset.cause_marginal()),
        label_x1=dataset.causes[1], label_x0=dataset.causes[0],
        label_y1=dataset.outcome_labels[0], label_y0=dataset.outcome_labels[1],
    )
