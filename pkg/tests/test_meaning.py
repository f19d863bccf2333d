import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from ratioref._numeric import DomainError, PreconditionError, Surd
from ratioref.meaning import (
    ScaleWindow,
    backbone_window,
    capacity_bound,
    is_symbol,
    low_cost_window,
    margin_of,
    mean,
    mean_total,
    near_balance_window,
)
from ratioref.penalty import PenaltyParam, evaluate
from ratioref.spaces import Finite, Interval

from conftest import rationals


def Jq(x):
    return (x - 1) ** 2 / (2 * x)


def scan(s, scales):
    """Independent argmin: canonical costs from the rational closed form."""
    costs = [Jq(F(s) / y) for y in scales]
    best = min(costs)
    ids = {f"o{k}" for k, c in enumerate(costs, 1) if c == best}
    worse = [c for c in costs if c != best]
    return ids, best, (min(worse) - best) if worse else math.inf


class TestMean:
    def test_table_row(self, three):
        r = mean(F(3, 10), three)
        assert r.minimizers == ("o1",) and r.optimal_cost == F(1, 60)
        assert r.margin == F(4, 5)

    def test_boundary_tie(self, three):
        r = mean(F(1, 2), three)
        assert r.minimizer_set == {"o1", "o2"}
        # J(2) = J(1/2) = 1/4 and the runner-up J(1/8) = 49/16
        assert r.optimal_cost == F(1, 4)
        assert r.margin == F(49, 16) - F(1, 4)

    def test_interval(self):
        assert mean(3, Interval(2, 5)).minimizers == (3,)
        assert mean(3, Interval(2, 5)).optimal_cost == 0
        r = mean(10, Interval(2, 5))
        assert r.minimizers == (5,) and r.optimal_cost == F(1, 4)
        assert r.margin is None

    def test_fiber_ties_and_order(self):
        d = Finite((("b", 2), ("a", 1), ("c", 2)))
        r = mean(2, d)
        assert r.minimizers == ("b", "c") and r.optimal_cost == 0

    def test_single_item_margin(self):
        assert mean(7, Finite.from_scales([3])).margin == math.inf

    def test_vector_rejected(self):
        with pytest.raises(DomainError):
            mean(1, Finite((("a", (1, 2)),)))

    @given(rationals(), st.lists(rationals(), min_size=1, max_size=12))
    @settings(max_examples=300)
    def test_matches_rational_scan(self, s, scales):
        r = mean(s, Finite.from_scales(scales))
        ids, best, margin = scan(s, scales)
        assert set(r.minimizers) == ids
        assert r.optimal_cost == best and r.margin == margin

    @given(rationals(), st.lists(rationals(), min_size=1, max_size=12))
    def test_member_has_zero_cost(self, s, scales):
        r = mean(s, Finite.from_scales(scales + [s]))
        assert r.optimal_cost == 0

    @given(st.floats(1e-3, 1e3), st.lists(st.floats(1e-3, 1e3), min_size=1, max_size=12),
           st.sampled_from([0.5, 1, 2.5]))
    def test_float_matches_scan(self, s, scales, a):
        p = PenaltyParam(a)
        r = mean(s, Finite.from_scales(scales), p)
        costs = [evaluate(s / y, p) for y in scales]
        best = min(costs)
        assert r.optimal_cost == pytest.approx(best, rel=1e-12, abs=1e-300)
        for k, c in enumerate(costs, 1):
            if c == best:
                assert f"o{k}" in r.minimizers


class TestMeanTotal:
    def test_examples(self, three):
        r = mean_total(1, three)
        assert r.minimizers == ("o2",) and r.optimal_cost == 0
        assert mean_total(2, Finite.from_scales([2])).optimal_cost == F(1, 2)
        r = mean_total(2, Finite.from_scales([1, 2]))
        assert set(r.minimizers) == {"o1", "o2"} and r.optimal_cost == F(1, 2)

    def test_interval_sqrt(self):
        r = mean_total(2, Interval(F(1, 2), 4))
        assert r.minimizers == (Surd.sqrt(2),)
        assert r.optimal_cost == 2 * evaluate(Surd.sqrt(2)) + F(1, 4)
        assert mean_total(16, Interval(1, 2)).minimizers == (2,)
        assert mean_total(16, Interval(8, 9)).minimizers == (8,)

    @given(rationals(), rationals(), rationals())
    def test_interval_beats_grid(self, s, lo, w):
        iv = Interval(lo, lo + w)
        r = mean_total(s, iv)
        best = r.optimal_cost
        for k in range(101):
            y = iv.lo + (iv.hi - iv.lo) * F(k, 100)
            tot = Jq(s) + Jq(y) + Jq(s / y)
            assert float(best) <= float(tot) * (1 + 1e-12)


class TestSymbol:
    def test_examples(self, three):
        assert is_symbol(2, "o1", Finite.from_scales([4]))
        assert not is_symbol(1, "o1", Finite.from_scales([1]))
        assert not is_symbol(F(3, 10), "o2", three)

    def test_unknown_id(self, three):
        with pytest.raises(KeyError):
            is_symbol(1, "nope", three)


class TestWindows:
    def test_low_cost(self):
        w = low_cost_window(1, F(1, 4))
        assert (w.lo, w.hi) == (F(1, 2), 2)
        w = low_cost_window(1, 0)
        assert (w.lo, w.hi) == (1, 1)
        w = low_cost_window(2, F(1, 4))
        assert (w.lo, w.hi) == (1, 4)
        with pytest.raises(PreconditionError):
            low_cost_window(4, F(1, 4))

    @given(rationals(16), rationals(20), st.lists(rationals(), max_size=10))
    def test_low_cost_contains_meanings(self, s, eps, extra):
        if evaluate(s) > eps:
            return
        w = low_cost_window(s, eps)
        d = Finite.from_scales([1] + extra)
        for y in mean(s, d).scales:
            assert y in w

    def test_near_balance(self):
        w = near_balance_window(0)
        assert (w.lo, w.hi) == (1, 1)
        w = near_balance_window(F(1, 4))
        assert (w.lo, w.hi) == (F(1, 4), 4)
        w = near_balance_window(1)
        b = 2 + Surd.sqrt(3)
        assert w.hi == b * b and w.lo == 1 / (b * b)

    def test_backbone(self):
        w = backbone_window(F(1, 2))
        assert (w.lo, w.hi) == (F(1, 4), 3)

    @given(rationals(100), rationals(100))
    def test_backbone_exact_form(self, p, q):
        delta = min(p, q) / max(p, q)
        if delta in (0, 1):
            return
        w = backbone_window(delta)
        assert (w.lo, w.hi) == ((1 - delta) ** 2, (1 + delta) / (1 - delta))

    def test_backbone_monotone(self):
        ws = [backbone_window(F(k, 20)) for k in range(1, 20)]
        for small, big in zip(ws, ws[1:]):
            assert big.lo < small.lo and small.hi < big.hi
        assert ws[0].lo > F(9, 10) and ws[0].hi < F(12, 10)

    @pytest.mark.parametrize("bad", [0, 1, -F(1, 2), F(3, 2), True])
    def test_backbone_domain(self, bad):
        with pytest.raises(DomainError):
            backbone_window(bad)

    def test_capacity(self, three):
        assert capacity_bound(three, F(1, 2)) == 2
        for delta in (F(1, 10), F(1, 2), F(9, 10)):
            assert capacity_bound(Finite.from_scales([1]), delta) == 1
        assert capacity_bound(Finite.from_scales([100]), F(1, 2)) == 0

    def test_window_validation(self):
        with pytest.raises(DomainError):
            ScaleWindow(2, 1)


def test_margin_of():
    assert margin_of([F(1, 60), F(49, 60), F(1369, 240)]) == F(4, 5)
    assert margin_of([3, 3, 3]) == math.inf
    with pytest.raises(DomainError):
        margin_of([])
