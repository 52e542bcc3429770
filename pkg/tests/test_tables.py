from fractions import Fraction

import pytest

from causalconfirm.errors import (
    DegenerateMarginal,
    DuplicateCell,
    InvalidCount,
    MissingCell,
    PriorError,
    RateOutOfRange,
    TooManyCauses,
    WeightSumViolation,
)
from causalconfirm.ingest import load_dataset
from causalconfirm.tables import (
    JointTable,
    Schema,
    as_fraction,
    build_from_counts,
    build_from_rates,
    pool,
)


def test_joint_table_marginals():
    t = JointTable(0.9, 0.8, 0.25)
    assert t.p_x0 == 0.75
    assert t.p_y1 == pytest.approx(0.25 * 0.9 + 0.75 * 0.8)
    assert sum(t.joint().values()) == pytest.approx(1.0)


@pytest.mark.parametrize("args", [(1.2, 0.5), (0.5, -0.1), (0.5, 0.5, 1.5)])
def test_joint_table_rejects_non_probabilities(args):
    with pytest.raises(RateOutOfRange):
        JointTable(*args)


def test_swap_and_flip_are_involutions():
    t = JointTable(0.3, 0.6, 0.4, "a", "b", "yes", "no")
    assert t.swap_causes().swap_causes() == t
    assert t.flip_outcome().flip_outcome().p_y1_given_x1 == pytest.approx(0.3)
    assert t.swap_causes().label_x1 == "b"
    assert t.flip_outcome().label_y1 == "no"


def test_transpose_keeps_the_joint():
    t = JointTable(0.3, 0.6, 0.4)
    j, k = t.joint(), t.transpose().joint()
    for (i, m), v in j.items():
        assert k[(m, i)] == pytest.approx(v)


def test_posterior_needs_outcome_mass():
    with pytest.raises(DegenerateMarginal):
        JointTable(0.0, 0.0).p_x1_given(1)


def test_as_fraction_reads_floats_by_their_repr():
    assert as_fraction(0.1) == Fraction(1, 10)
    assert as_fraction("3/4") == Fraction(3, 4)


KIDNEY_ROWS = [
    ("small", "x1", 234.9, 270), ("small", "x2", 80.91, 87),
    ("large", "x1", 55.2, 80), ("large", "x2", 191.99, 263),
]


def test_counts_dataset_shape():
    ds = build_from_counts(KIDNEY_ROWS)
    assert ds.schema is Schema.COUNTS
    assert ds.causes == ("x1", "x2")
    assert ds.group_labels == ("small", "large")
    assert sum(c.total for g in ds.groups for c in g.cells) == 700
    assert ds.rate(0, 0) == Fraction("0.87")
    assert ds.group_prior() == (Fraction(357, 700), Fraction(343, 700))
    assert ds.prior_source == "counts"


def test_counts_weights_and_marginal():
    ds = build_from_counts(KIDNEY_ROWS)
    assert ds.conditional_weights(0) == (Fraction(270, 350), Fraction(80, 350))
    assert ds.cause_marginal() == Fraction(1, 2)


def test_bundled_kidney_matches_rows():
    assert load_dataset("kidney_stones").groups == build_from_counts(KIDNEY_ROWS).groups


def test_pool_puts_alternative_first():
    t = pool(build_from_counts(KIDNEY_ROWS))
    assert t.label_x1 == "x2"
    assert t.p_y1_given_x0 == pytest.approx(0.828857, abs=1e-6)
    assert t.p_y1_given_x1 == pytest.approx(0.779714, abs=1e-6)


def test_cause_order_override():
    ds = build_from_counts(KIDNEY_ROWS, causes=("x2", "x1"))
    assert ds.causes == ("x2", "x1")
    assert ds.rate(0, 0) == Fraction("0.93")


@pytest.mark.parametrize("rows, err", [
    ([("g", "a", 5, 4), ("g", "b", 1, 2)], InvalidCount),
    ([("g", "a", 1, 0), ("g", "b", 1, 2)], InvalidCount),
    ([("g", "a", -1, 3), ("g", "b", 1, 2)], InvalidCount),
    ([("g", "a", 1, 2), ("g", "a", 1, 2), ("g", "b", 1, 2)], DuplicateCell),
    ([("g", "a", 1, 2), ("g", "b", 1, 2), ("h", "a", 1, 2)], MissingCell),
    ([("g", "a", 1, 2), ("g", "b", 1, 2), ("g", "c", 1, 2)], TooManyCauses),
    ([("g", "a", 1, 2)], MissingCell),
])
def test_counts_validation(rows, err):
    with pytest.raises(err):
        build_from_counts(rows)


def _rates(w=(0.6, 0.4), v=(0.3, 0.7)):
    return [
        ("g1", "r", 0.2, w[0]), ("g1", "a", 0.3, v[0]),
        ("g2", "r", 0.5, w[1]), ("g2", "a", 0.6, v[1]),
    ]


def test_rates_without_prior_default_source():
    ds = build_from_rates(_rates())
    assert ds.prior_source == "default"
    assert ds.cause_marginal() == Fraction(1, 2)
    assert ds.group_prior() == (Fraction(9, 20), Fraction(11, 20))


def test_rates_declared_prior():
    ds = build_from_rates(_rates(), group_prior={"g1": 0.5, "g2": 0.5})
    assert ds.prior_source == "declared"
    assert ds.group_prior() == (Fraction(1, 2), Fraction(1, 2))


def test_rates_cause_prior_implies_group_prior():
    ds = build_from_rates(_rates(), cause_prior={"a": 0.25})
    assert ds.prior_source == "derived"
    assert ds.cause_marginal() == Fraction(1, 4)
    assert ds.group_prior()[0] == Fraction(3, 4) * Fraction(6, 10) + Fraction(1, 4) * Fraction(3, 10)


def test_outcome_prior_solves_cause_marginal():
    ds = build_from_rates(_rates(), outcome_prior=0.4)
    ref, alt = ds.pooled_rates()
    p = ds.cause_marginal()
    assert (1 - p) * ref + p * alt == Fraction("0.4")


def test_outcome_prior_outside_pooled_rates():
    with pytest.raises(PriorError):
        build_from_rates(_rates(), outcome_prior=0.9)


def test_weights_must_sum_to_one():
    with pytest.raises(WeightSumViolation):
        build_from_rates(_rates(w=(0.6, 0.41)))


def test_normalize_tolerates_print_rounding():
    ds = build_from_rates(_rates(w=(0.6, 0.401)), normalize=True)
    assert sum(ds.conditional_weights(0)) == 1
    with pytest.raises(WeightSumViolation):
        build_from_rates(_rates(w=(0.6, 0.45)), normalize=True)


def test_rate_range():
    with pytest.raises(RateOutOfRange):
        build_from_rates([("g", "r", 1.2, 1), ("g", "a", 0.1, 1)])


def test_prior_must_name_every_group():
    with pytest.raises(PriorError):
        build_from_rates(_rates(), group_prior={"g1": 1})
    with pytest.raises(PriorError):
        build_from_rates(_rates(), group_prior={"g1": 0.5, "g2": 0.4, "g3": 0.1})


def test_covid_dataset_loads_normalized():
    ds = load_dataset("covid_cfr_by_age")
    assert len(ds.groups) == 11
    assert ds.causes == ("x2", "x1")
    assert sum(ds.group_prior()) == 1
    assert 0.7 < float(ds.cause_marginal()) < 0.8
