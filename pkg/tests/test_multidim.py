import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ratioref._numeric import DomainError
from ratioref.meaning import mean
from ratioref.multidim import (
    continuity_probe,
    coordinatewise_equiv_check,
    gradient,
    mean_md,
    objective,
    product_dictionary,
    project_polytope,
    solve_polytope,
)
from ratioref.oracle import grid_mean_polytope_2d
from ratioref.penalty import PenaltyParam
from ratioref.spaces import Finite, Interval, LogBox, LogPolytope

from conftest import rationals

SQUARE = LogBox((-1, -1), (1, 1))
TRI = LogPolytope.from_halfspaces([((1, 1), 0.5), ((-1, 0), 1), ((0, -1), 1)])


class TestLogBox:
    def test_example(self):
        r = mean_md((math.exp(0.5), math.exp(-2)), SQUARE)
        assert r.log_minimizer == pytest.approx((0.5, -1), abs=1e-15)
        assert r.optimal_cost == pytest.approx(math.cosh(1) - 1, rel=1e-12)
        assert r.margin is None

    def test_interior(self):
        r = mean_md((F(3, 2), F(1, 2)), SQUARE)
        assert r.minimizers == ((F(3, 2), F(1, 2)),) and r.optimal_cost == 0

    @given(st.lists(rationals(30), min_size=1, max_size=4), st.data())
    def test_matches_interval_composition(self, s, data):
        los = [data.draw(rationals(30)) for _ in s]
        his = [lo * data.draw(st.integers(1, 9)) for lo in los]
        box = LogBox(tuple(math.log(lo) for lo in los), tuple(math.log(hi) for hi in his))
        r = mean_md(tuple(s), box)
        parts = [mean(si, Interval(math.exp(a), math.exp(b)))
                 for si, a, b in zip(s, box.lo, box.hi)]
        assert r.minimizers[0] == tuple(p.minimizers[0] for p in parts)
        assert r.optimal_cost == sum(p.optimal_cost for p in parts)


class TestPolytope:
    def test_interior_optimum(self):
        r = mean_md((math.exp(-0.2), math.exp(0.1)), TRI)
        assert r.log_minimizer == pytest.approx((-0.2, 0.1), abs=1e-12)
        assert r.optimal_cost == pytest.approx(0, abs=1e-20)

    def test_face_optimum_symmetric(self):
        # t = (1, 1) projects to (1/4, 1/4) on x + y = 1/2 by symmetry
        r = mean_md((math.e, math.e), TRI)
        assert r.log_minimizer == pytest.approx((0.25, 0.25), abs=1e-9)

    def test_kkt(self):
        t = np.array([2.0, -0.3])
        u, _ = solve_polytope(t, TRI)
        g = gradient(t, u)
        # only x + y <= 1/2 is active: -grad is a nonnegative multiple of (1, 1)
        assert TRI.contains(u, tol=1e-10)
        assert abs(u.sum() - 0.5) < 1e-10
        assert -g[0] > 0 and -g[0] == pytest.approx(-g[1], rel=1e-8)

    def test_against_grid(self):
        t = np.array([1.3, 0.9])
        u, _ = solve_polytope(t, TRI)
        ug, gg = grid_mean_polytope_2d(t, TRI, ((-1, -1), (1.5, 1.5)), h=1e-3)
        assert np.max(np.abs(u - ug)) <= 2e-3
        assert abs(objective(t, u) - gg) <= 1e-5
        assert objective(t, u) <= gg + 1e-12

    def test_projection(self):
        v = np.array([3.0, 3.0])
        x = project_polytope(v, TRI)
        assert x == pytest.approx((0.25, 0.25), abs=1e-10)
        assert project_polytope(np.array([0.0, 0.0]), TRI).tolist() == [0.0, 0.0]

    def test_projection_nearly_parallel_faces(self):
        # two almost parallel cuts meeting far from the start point
        poly = LogPolytope(
            ((1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0),
             (0.26166225107795554, -0.9651595030671443),
             (-0.11013721656802254, 0.9939163916178506),
             (0.3432219520815734, -0.9392543274370974)),
            (2.0, 2.0, 2.0, 2.0, 0.04988427405138118, 1.206420923808379, 0.259056532486135))
        x = project_polytope(np.array([6.2575708, -51.48331144]), poly)
        assert x == pytest.approx((-2.0, -0.59390057), abs=1e-8)
        u, _ = solve_polytope(np.array([2.40077774, -2.93578326]), poly)
        ug, gg = grid_mean_polytope_2d((2.40077774, -2.93578326), poly, ((-2, -2), (2, 2)))
        assert np.max(np.abs(u - ug)) <= 2e-3
        assert objective((2.40077774, -2.93578326), u) <= gg + 1e-12

    def test_projection_tiny_violation(self):
        # a point 3e-8 outside, next to a vertex
        poly = LogPolytope.from_halfspaces([((0.0, -1.0), 2.0), ((-0.6, -0.8), 1.3)])
        v = np.array([-0.1, -2.00000003])
        x = project_polytope(v, poly)
        assert poly.violation(x) <= 1e-13

    @given(st.integers(0, 10 ** 6))
    @settings(max_examples=40, deadline=None)
    def test_projection_kkt(self, seed):
        from ratioref.multidim import _project_ldp

        g = np.random.default_rng(seed)
        d, m = int(g.integers(2, 4)), int(g.integers(3, 8))
        A, c = g.normal(size=(m, d)), g.uniform(0.01, 1, size=m)
        poly = LogPolytope(A, c)
        v = g.normal(size=d) * 10
        x = project_polytope(v, poly)
        assert poly.violation(x) <= 1e-11
        # v - x lies in the normal cone: nonnegative combination of active normals
        active = np.abs(A @ x - c) <= 1e-9
        if active.any():
            lam, *_ = np.linalg.lstsq(A[active].T, v - x, rcond=None)
            assert np.allclose(A[active].T @ lam, v - x, atol=1e-8)
        else:
            assert np.allclose(x, v)
        # every feasible probe is at least as far from v
        probes = x + g.normal(size=(200, d)) * 0.5
        ok = probes[np.all(probes @ A.T <= c, axis=1)]
        assert np.all(np.linalg.norm(ok - v, axis=1) >= np.linalg.norm(x - v) - 1e-12)
        if not poly.contains(v):
            assert np.max(np.abs(_project_ldp(v, A, c) - x)) <= 1e-6

    def test_dimension_mismatch(self):
        with pytest.raises(DomainError):
            mean_md((1, 1, 1), TRI)
        with pytest.raises(DomainError):
            solve_polytope(np.zeros(3), TRI)


class TestGradient:
    @given(st.lists(st.floats(-3, 3), min_size=2, max_size=2),
           st.lists(st.floats(-3, 3), min_size=2, max_size=2),
           st.sampled_from([0.5, 1, 2]))
    def test_central_differences(self, t, u, a):
        p = PenaltyParam(a)
        t, u = np.array(t), np.array(u)
        g = gradient(t, u, p)
        h = 1e-5
        for i in range(2):
            e = np.zeros(2)
            e[i] = h
            fd = (objective(t, u + e, p) - objective(t, u - e, p)) / (2 * h)
            assert abs(g[i] - fd) <= 1e-6 * max(1.0, abs(g[i]))


class TestFinite:
    def test_product_example(self, three):
        prod = product_dictionary([three, three])
        r = mean_md((F(3, 10), 3), prod)
        assert r.minimizers == ("o1,o3",) and r.scales == ((F(1, 4), 4),)
        assert r.optimal_cost == F(7, 120)

    def test_scalar_delegates(self, three):
        r = mean_md((F(3, 10),), three)
        assert r.minimizers == ("o1",) and r.margin == F(4, 5)

    def test_interval_delegates(self):
        r = mean_md((10,), Interval(2, 5))
        assert r.minimizers == ((5,),) and r.optimal_cost == F(1, 4)

    def test_equiv_examples(self, three):
        assert coordinatewise_equiv_check((F(3, 10), 3), [three, three])
        assert coordinatewise_equiv_check((7,), [three])
        assert coordinatewise_equiv_check((F(1, 2), 2), [three, Finite.from_scales([1, 4])])

    @given(st.lists(rationals(), min_size=2, max_size=3),
           st.lists(st.lists(rationals(), min_size=1, max_size=4), min_size=3, max_size=3))
    @settings(max_examples=50)
    def test_equiv_random(self, s, scale_lists):
        dicts = [Finite.from_scales(x) for x in scale_lists[:len(s)]]
        assert coordinatewise_equiv_check(tuple(s), dicts)

    def test_product_dictionary_rejects(self):
        with pytest.raises(DomainError):
            product_dictionary([Interval(1, 2)])


class TestContinuity:
    def test_box_lipschitz(self):
        assert continuity_probe((0.2, -0.3), SQUARE, 1e-3) <= 1e-3 + 1e-15

    def test_saturated(self):
        box = LogBox((-1,), (1,))
        assert continuity_probe((5.0,), box, 1e-3) == 0

    def test_polytope_schedule(self):
        probes = [continuity_probe((1.0, 0.2), TRI, step) for step in (1e-2, 1e-3, 1e-4, 1e-5)]
        for step, v in zip((1e-2, 1e-3, 1e-4, 1e-5), probes):
            assert v <= step * (1 + 1e-6) + 1e-9
        assert probes[-1] < probes[0]

    def test_needs_continuous(self, three):
        with pytest.raises(DomainError):
            continuity_probe((1.0,), three, 1e-3)
