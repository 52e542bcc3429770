"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from causalconfirm.tables import JointTable, build_from_rates

# probabilities on a 1e-9 grid: data-like values without subnormal noise
prob = st.integers(0, 10**9).map(lambda k: k / 10**9)
inner_prob = st.integers(10**6, 10**9 - 10**6).map(lambda k: k / 10**9)
# dyadic values keep 1 - p exact
dyadic = st.integers(0, 2**20).map(lambda k: k / 2**20)


@st.composite
def tables(draw, p=prob, px=inner_prob):
    return JointTable(draw(p), draw(p), draw(px))


def _simplex(draw, n):
    raw = draw(st.lists(st.integers(1, 1000), min_size=n, max_size=n))
    total = sum(raw)
    return [Fraction(r, total) for r in raw]


@st.composite
def unanimous_datasets(draw, direction=None):
    """Rates datasets whose groups all favour one cause strictly."""
    n = draw(st.integers(2, 5))
    d = direction if direction is not None else draw(st.sampled_from((1, -1)))
    rows = []
    w_ref, w_alt = _simplex(draw, n), _simplex(draw, n)
    for i in range(n):
        lo = Fraction(draw(st.integers(0, 999)), 1000)
        hi = lo + Fraction(draw(st.integers(1, 1000 - int(lo * 1000))), 1000)
        ref, alt = (lo, hi) if d > 0 else (hi, lo)
        rows += [(f"g{i}", "r", ref, w_ref[i]), (f"g{i}", "a", alt, w_alt[i])]
    cause_prior = Fraction(draw(st.integers(1, 999)), 1000)
    ds = build_from_rates(rows, causes=("r", "a"), cause_prior={"a": cause_prior})
    return ds, d
