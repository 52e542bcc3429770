"""Causal adjustment: outcome probabilities under intervention, paradox detection."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import MissingGroupPrior, UnnormalizedDistribution
from .tables import CausalRole, JointTable, StratifiedDataset, pool


@dataclass(frozen=True)
class DoTable:
    """P(y1 | do(x)) for both causes.

    Deliberately carries no cause prior: the two interventions are not
    events of one distribution, so they have no joint marginal.
    """

    p_y1_do_x1: float
    p_y1_do_x0: float
    role_used: CausalRole
    weights_used: tuple[tuple[str, float], ...] = ()
    label_x1: str = "x1"
    label_x0: str = "x0"
    label_y1: str = "y1"
    label_y0: str = "y0"

    def as_joint(self, p_x1: float = 0.5) -> JointTable:
        """Treat the intervention rates as conditionals of a flat table."""
        return JointTable(
            self.p_y1_do_x1, self.p_y1_do_x0, p_x1,
            self.label_x1, self.label_x0, self.label_y1, self.label_y0,
        )


def do_adjust(dataset: StratifiedDataset, role: CausalRole) -> DoTable:
    """Intervention rates for the declared role of the stratifier.

    A confounder is standardized: group rates are re-weighted with P(g),
    which is the same for both causes. A mediator is left alone and the
    observed pooled rates are already causal.
    """
    role = CausalRole(role)
    labels = dict(
        label_x1=dataset.causes[1], label_x0=dataset.causes[0],
        label_y1=dataset.outcome_labels[0], label_y0=dataset.outcome_labels[1],
    )
    if role is CausalRole.MEDIATOR:
        observed = pool(dataset)
        # weights differ per cause here; report the alternative's for reference
        w = dataset.conditional_weights(1)
        return DoTable(
            observed.p_y1_given_x1, observed.p_y1_given_x0, role,
            tuple(zip(dataset.group_labels, map(float, w))), **labels,
        )
    if dataset.prior_source == "default":
        raise MissingGroupPrior(
            "standardizing needs P(g): declare a group prior, a cause prior or an outcome prior"
        )
    prior = dataset.group_prior()
    rates = [
        sum((p * dataset.rate(i, c) for i, p in enumerate(prior)), Fraction(0))
        for c in (0, 1)
    ]
    return DoTable(
        float(rates[1]), float(rates[0]), role,
        tuple(zip(dataset.group_labels, map(float, prior))), **labels,
    )


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class ParadoxReport:
    """Directions are signs of (alternative - reference): +1, -1 or 0."""

    group_direction: tuple[tuple[str, int], ...]
    unanimous: bool
    overall_direction: int
    paradox_present: bool
    adjusted_direction: int | None
    note: str = ""


def detect_simpson(dataset: StratifiedDataset) -> ParadoxReport:
    """Check whether every group agrees and the pooled comparison disagrees.

    Ties never count as a direction, so a group with equal rates breaks
    unanimity. With a single group there is nothing to reverse and the
    paradox is reported absent.
    """
    dirs = tuple(
        (g.label, _sign(dataset.rate(i, 1) - dataset.rate(i, 0)))
        for i, g in enumerate(dataset.groups)
    )
    signs = {d for _, d in dirs}
    unanimous = len(signs) == 1 and 0 not in signs
    ref, alt = dataset.pooled_rates()
    overall = _sign(alt - ref)
    note = ""
    if len(dirs) < 2:
        paradox = False
        note = "fewer than two groups"
    else:
        common = next(iter(signs)) if unanimous else 0
        paradox = unanimous and overall == -common
    try:
        adj = do_adjust(dataset, CausalRole.CONFOUNDER)
        adjusted = _sign(adj.p_y1_do_x1 - adj.p_y1_do_x0)
    except MissingGroupPrior:
        adjusted = None
        note = (note + "; " if note else "") + "no group prior for adjustment"
    return ParadoxReport(dirs, unanimous, overall, paradox, adjusted, note)


def threshold_outcome_probability(z_distribution: Mapping, z0) -> float:
    """Probability that the objective result z reaches the threshold z0."""
    total = sum(z_distribution.values())
    if abs(total - 1.0) > 1e-9:
        raise UnnormalizedDistribution(f"distribution sums to {total!r}")
    if any(p < 0 for p in z_distribution.values()):
        raise UnnormalizedDistribution("negative probability in distribution")
    return float(sum(p for z, p in z_distribution.items() if z >= z0))
