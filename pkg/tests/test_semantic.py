import math

import pytest

from causalconfirm.errors import DegenerateChannel, DegeneratePrior, ZeroLogicalProbability
from causalconfirm.semantic import (
    Orientation,
    TruthAssignment,
    channel_from_disbelief,
    closed_form_disbelief,
    cross_entropy,
    disbelief_from_table,
    evaluate,
    golden_section_minimize,
    optimize_disbelief,
    predict_from_cc,
    predict_from_ce,
    truth_posterior,
)
from causalconfirm.tables import JointTable


def test_truth_posterior_examples():
    t, post = truth_posterior({1: 1.0, 0: 0.25}, {1: 0.5, 0: 0.5})
    assert t == 0.625
    assert post == pytest.approx({1: 0.8, 0: 0.2})
    t, post = truth_posterior({"a": 1, "b": 1, "c": 1}, {"a": 0.2, "b": 0.3, "c": 0.5})
    assert t == pytest.approx(1.0) and post == pytest.approx({"a": 0.2, "b": 0.3, "c": 0.5})
    t, post = truth_posterior({"a": 1, "b": 0, "c": 1}, {"a": 0.2, "b": 0.3, "c": 0.5})
    assert post == pytest.approx({"a": 0.2 / 0.7, "b": 0.0, "c": 0.5 / 0.7})


def test_truth_posterior_errors():
    with pytest.raises(ZeroLogicalProbability):
        truth_posterior({1: 0.0, 0: 0.0}, {1: 0.5, 0: 0.5})
    with pytest.raises(ValueError):
        truth_posterior({1: 1.5, 0: 0.0}, {1: 0.5, 0: 0.5})
    with pytest.raises(ValueError):
        truth_posterior({1: 1.0}, {1: 0.5, 0: 0.5})


def test_tautology_conveys_nothing():
    ev = evaluate(TruthAssignment(1.0), 0.3, 0.6)
    assert ev.logical_probability == 1.0
    assert ev.posterior == pytest.approx((0.3, 0.7))
    assert ev.avg_semantic_information == pytest.approx(0.0, abs=1e-12)


def test_clear_predicate():
    ev = evaluate(TruthAssignment(0.0), 0.5, 0.9)
    assert ev.logical_probability == 0.5
    assert ev.posterior == (1.0, 0.0)
    assert ev.cross_entropy == math.inf


def test_matching_condition_at_closed_form():
    ev = evaluate(TruthAssignment(0.25), 0.5, 0.8)
    assert ev.posterior[0] == pytest.approx(0.8)
    assert ev.cross_entropy == pytest.approx(-(0.8 * math.log2(0.8) + 0.2 * math.log2(0.2)))


def test_truth_assignment_range():
    with pytest.raises(ValueError):
        TruthAssignment(1.2)


def test_golden_section_on_parabola_and_boundary():
    x, fx = golden_section_minimize(lambda t: (t - 0.3) ** 2, 0.0, 1.0, 1e-8)
    assert x == pytest.approx(0.3, abs=1e-7)
    x, _ = golden_section_minimize(lambda t: t, 0.0, 1.0)
    assert x == 0.0


@pytest.mark.parametrize("p_x1, q, b, orientation", [
    (0.5, 0.8, 0.25, Orientation.POSITIVE),
    (0.3, 0.3, 1.0, Orientation.POSITIVE),
    (0.6, 1.0, 0.0, Orientation.POSITIVE),
    (0.5, 0.2, 0.25, Orientation.NEGATIVE),
])
def test_closed_form(p_x1, q, b, orientation):
    got, o = closed_form_disbelief(p_x1, q)
    assert got == pytest.approx(b)
    assert o is orientation


def test_optimizer_matches_closed_form_examples():
    fit = optimize_disbelief(0.5, 0.8)
    assert fit.b1_prime == pytest.approx(0.25, abs=1e-9)
    assert fit.confirmation == pytest.approx(0.75, abs=1e-9)
    assert optimize_disbelief(0.3, 0.3).b1_prime == pytest.approx(1.0, abs=1e-9)
    assert optimize_disbelief(0.3, 1.0).b1_prime == pytest.approx(0.0, abs=1e-9)
    neg = optimize_disbelief(0.5, 0.2)
    assert neg.orientation is Orientation.NEGATIVE
    assert neg.confirmation == pytest.approx(-0.75, abs=1e-9)


def test_optimum_is_a_minimum():
    fit = optimize_disbelief(0.4, 0.7)
    for db in (-0.01, 0.01):
        assert cross_entropy(fit.b1_prime + db, 0.4, 0.7) > fit.cross_entropy


def test_fit_from_table_is_cc():
    # b1' = m(x0, y1) / m(x1, y1), so 1 - b1' is Cc whatever P(x1) is
    t = JointTable(0.6, 0.2, 0.4)
    fit = disbelief_from_table(t)
    assert fit.confirmation == pytest.approx((0.6 - 0.2) / 0.6, abs=1e-9)


def test_degenerate_prior():
    with pytest.raises(DegeneratePrior):
        optimize_disbelief(0.0, 0.5)
    with pytest.raises(DegeneratePrior):
        closed_form_disbelief(1.0, 0.5)


def test_channel_examples():
    ch = channel_from_disbelief(TruthAssignment(0.94, 0.77))
    assert ch.p_y1_given_x1 == pytest.approx(0.23 / (1 - 0.94 * 0.77))
    assert 1 - ch.p_y1_given_x0 == pytest.approx(0.06 / (1 - 0.94 * 0.77))
    ident = channel_from_disbelief(TruthAssignment(0.0, 0.0))
    assert (ident.p_y1_given_x1, ident.p_y1_given_x0) == (1.0, 0.0)
    sym = channel_from_disbelief(TruthAssignment(0.5, 0.5))
    assert sym.p_y1_given_x1 == pytest.approx(2 / 3)
    assert 1 - sym.p_y1_given_x0 == pytest.approx(2 / 3)
    with pytest.raises(DegenerateChannel):
        channel_from_disbelief(TruthAssignment(1.0, 1.0))


def test_predict_from_cc():
    assert predict_from_cc(0.0, 0.3) == pytest.approx((0.3, 0.7))
    assert predict_from_cc(1.0, 0.1) == (1.0, 0.0)
    assert predict_from_cc(0.5, 0.5)[0] == pytest.approx(2 / 3)
    assert predict_from_cc(-1.0, 0.4) == (0.0, 1.0)
    with pytest.raises(ValueError):
        predict_from_cc(1.5, 0.5)


def test_predict_from_ce():
    assert predict_from_ce(0.0) == 0.5
    assert predict_from_ce(1.0) == 1.0
    assert predict_from_ce(0.5) == pytest.approx(2 / 3)
    assert predict_from_ce(-0.5) == pytest.approx(1 / 3)
