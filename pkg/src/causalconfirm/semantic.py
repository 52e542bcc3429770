"""Truth functions, logical probability, semantic information and cross-entropy.

A fuzzy rule s1 = "x1 => y1" is a mixture of a clear predicate and a
tautology. The tautology's share b1' (the degree of disbelief) is the truth
value the rule keeps at the counterexample. Fitting b1' by minimum
cross-entropy gives the degree of causal confirmation 1 - b1'.

All logarithms are base 2, so information and entropy are in bits.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Mapping

from .errors import DegenerateChannel, DegeneratePrior, ZeroLogicalProbability
from .tables import JointTable

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
SCAN_POINTS = 101


class Orientation(enum.Enum):
    POSITIVE = "positive"  # T(s1|x1) = 1, T(s1|x0) = b1'
    NEGATIVE = "negative"  # T(s1|x1) = b1', T(s1|x0) = 1


@dataclass(frozen=True)
class TruthAssignment:
    b1_prime: float
    b0_prime: float = 1.0
    orientation: Orientation = Orientation.POSITIVE

    def __post_init__(self):
        for name in ("b1_prime", "b0_prime"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name}={v!r} outside [0, 1]")

    def truth_s1(self) -> tuple[float, float]:
        """(T(s1|x1), T(s1|x0))."""
        if self.orientation is Orientation.POSITIVE:
            return 1.0, self.b1_prime
        return self.b1_prime, 1.0


@dataclass(frozen=True)
class SemanticEvaluation:
    logical_probability: float
    posterior: tuple[float, float]  # (P(x1|theta1), P(x0|theta1))
    avg_semantic_information: float
    cross_entropy: float


def _xlog2(p: float, q: float) -> float:
    """p * log2(q) with 0 * log 0 = 0."""
    if p == 0.0:
        return 0.0
    if q == 0.0:
        return -math.inf
    return p * math.log2(q)


def truth_posterior(truth_function: Mapping, prior: Mapping) -> tuple[float, dict]:
    """Logical probability T(theta) and the likelihood P(x|theta)."""
    if set(truth_function) != set(prior):
        raise ValueError("truth function and prior must share their support")
    for x, t in truth_function.items():
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"truth value {t!r} at {x!r} outside [0, 1]")
    if abs(sum(prior.values()) - 1.0) > 1e-9:
        raise ValueError("prior does not sum to 1")
    logical = sum(prior[x] * truth_function[x] for x in prior)
    if logical <= 0.0:
        raise ZeroLogicalProbability("the predicate is false everywhere on the support")
    return logical, {x: prior[x] * truth_function[x] / logical for x in prior}


def _check_prior(p_x1: float) -> None:
    if not 0.0 < p_x1 < 1.0:
        raise DegeneratePrior(f"P(x1) = {p_x1!r}; both causes need positive probability")


def evaluate(truth: TruthAssignment, p_x1: float, p_x1_given_y1: float) -> SemanticEvaluation:
    """Semantic information and cross-entropy of s1 against the sample P(x|y1)."""
    t1, t0 = truth.truth_s1()
    prior = {1: p_x1, 0: 1.0 - p_x1}
    sample = {1: p_x1_given_y1, 0: 1.0 - p_x1_given_y1}
    logical, post = truth_posterior({1: t1, 0: t0}, prior)
    cross = -sum(_xlog2(sample[x], post[x]) for x in (1, 0))
    info = 0.0
    for x in (1, 0):
        if sample[x] == 0.0:
            continue
        if post[x] == 0.0:
            info = -math.inf
            break
        info += sample[x] * math.log2(post[x] / prior[x])
    return SemanticEvaluation(logical, (post[1], post[0]), info, cross)


def cross_entropy(b_prime: float, p_x1: float, p_x1_given_y1: float,
                  orientation: Orientation = Orientation.POSITIVE) -> float:
    """H(X|theta1) in bits as a function of the degree of disbelief."""
    return evaluate(TruthAssignment(b_prime, 1.0, orientation), p_x1, p_x1_given_y1).cross_entropy


def golden_section_minimize(f: Callable[[float], float], lo: float, hi: float,
                            tol: float = 1e-6, max_iter: int = 200) -> tuple[float, float]:
    """Minimize a unimodal function on [lo, hi]; returns (argmin, min).

    The bracket ends are compared with the interior estimate at the end so a
    minimum sitting on the boundary is returned exactly.
    """
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    best = min(((f(x), x), (f(lo), lo), (f(hi), hi)))
    return best[1], best[0]


@dataclass(frozen=True)
class DisbeliefFit:
    b1_prime: float
    orientation: Orientation
    cross_entropy: float

    @property
    def confirmation(self) -> float:
        """Signed degree of causal confirmation implied by the fit."""
        if self.orientation is Orientation.POSITIVE:
            return 1.0 - self.b1_prime
        return -(1.0 - self.b1_prime)


def closed_form_disbelief(p_x1: float, p_x1_given_y1: float) -> tuple[float, Orientation]:
    """Optimal b1' from the ratio of correlations m(x0, y1) / m(x1, y1).

    When that ratio exceeds one the rule is disconfirmed and the reciprocal
    is used with the truth values swapped.
    """
    _check_prior(p_x1)
    q1, q0 = p_x1_given_y1, 1.0 - p_x1_given_y1
    a, c = p_x1, 1.0 - p_x1
    # compare q0*a with q1*c to avoid dividing by zero
    if q0 * a <= q1 * c:
        return (q0 * a) / (q1 * c), Orientation.POSITIVE
    return (q1 * c) / (q0 * a), Orientation.NEGATIVE


def _slope_numerator(b: float, prior_w: float, prior_v: float, q_w: float) -> float:
    # sign of dH/db; the cell carrying b has prior prior_w and sample share q_w
    return prior_w * b * (1.0 - q_w) - q_w * prior_v


def optimize_disbelief(p_x1: float, p_x1_given_y1: float, tol: float = 1e-6,
                       refine: bool = True) -> DisbeliefFit:
    """Numerically minimize the cross-entropy over b1' in [0, 1].

    Both truth orientations are scanned on a 101-point grid, the best grid
    cell is refined by golden-section search to ``tol``, and with ``refine``
    the stationary point is then polished by bisection on the sign of the
    derivative. No closed form is used.
    """
    _check_prior(p_x1)
    if not 0.0 <= p_x1_given_y1 <= 1.0:
        raise ValueError("P(x1|y1) must be a probability")
    grid = [i / (SCAN_POINTS - 1) for i in range(SCAN_POINTS)]
    fits = []
    for orientation in Orientation:
        def h(b, orientation=orientation):
            return cross_entropy(b, p_x1, p_x1_given_y1, orientation)

        values = [h(b) for b in grid]
        k = min(range(SCAN_POINTS), key=lambda i: (values[i], i))
        lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, SCAN_POINTS - 1)]
        b, hb = golden_section_minimize(h, lo, hi, tol)
        if refine:
            if orientation is Orientation.POSITIVE:
                w, v, q = 1.0 - p_x1, p_x1, 1.0 - p_x1_given_y1
            else:
                w, v, q = p_x1, 1.0 - p_x1, p_x1_given_y1
            b = _polish(b, lo, hi, w, v, q, tol)
            hb = h(b)
        fits.append(DisbeliefFit(b, orientation, hb))
    # at b1' = 1 both orientations coincide; prefer positive on ties
    return min(fits, key=lambda f: (f.cross_entropy, f.orientation is Orientation.NEGATIVE))


def _polish(b, lo, hi, w, v, q, tol):
    a = max(lo, b - 4 * tol)
    z = min(hi, b + 4 * tol)
    sa = _slope_numerator(a, w, v, q)
    sz = _slope_numerator(z, w, v, q)
    if sa >= 0.0:
        return a if a == lo else b  # increasing on the bracket: boundary minimum
    if sz <= 0.0:
        return z if z == hi else b
    for _ in range(200):
        mid = 0.5 * (a + z)
        if mid in (a, z):
            break
        if _slope_numerator(mid, w, v, q) < 0.0:
            a = mid
        else:
            z = mid
    return 0.5 * (a + z)


def disbelief_from_table(table: JointTable) -> DisbeliefFit:
    """Fit b1' for s1 = "x1 => y1" to the posterior P(x|y1) of a flat table."""
    return optimize_disbelief(table.p_x1, table.p_x1_given(1))


def channel_from_disbelief(truth: TruthAssignment) -> JointTable:
    """Shannon channel matching a semantic channel with both rules believed.

    Returns conditionals only; the cause marginal is left at its default.
    """
    b1, b0 = truth.b1_prime, truth.b0_prime
    den = 1.0 - b1 * b0
    if den <= 0.0:
        raise DegenerateChannel("b1' = b0' = 1 leaves the channel undetermined")
    p_y1_x1 = (1.0 - b0) / den
    p_y0_x0 = (1.0 - b1) / den
    return JointTable(p_y1_x1, 1.0 - p_y0_x0)


def predict_from_cc(cc: float, p_x1: float) -> tuple[float, float]:
    """(P(x1|theta1), P(x0|theta1)) predicted from a degree of confirmation."""
    if not -1.0 <= cc <= 1.0:
        raise ValueError(f"cc={cc!r} outside [-1, 1]")
    _check_prior(p_x1)
    if cc >= 0.0:
        truth = TruthAssignment(1.0 - cc, orientation=Orientation.POSITIVE)
    else:
        truth = TruthAssignment(1.0 + cc, orientation=Orientation.NEGATIVE)
    t1, t0 = truth.truth_s1()
    _, post = truth_posterior({1: t1, 0: t0}, {1: p_x1, 0: 1.0 - p_x1})
    return post[1], post[0]


def predict_from_ce(ce: float) -> float:
    """P(y1 | x1) predicted from Ce(x1 => y1)."""
    if not -1.0 <= ce <= 1.0:
        raise ValueError(f"ce={ce!r} outside [-1, 1]")
    if ce >= 0.0:
        return 1.0 / (2.0 - ce)
    return 1.0 - 1.0 / (2.0 + ce)
