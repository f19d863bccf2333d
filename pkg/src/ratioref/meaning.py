"""Meaning sets (argmin of the reference cost), margins, symbols, and the
scale windows that bound where meanings can lie.

The finite 1-D solver exploits unimodality: ``y -> J(s/y)`` decreases up to
``y = s`` and increases after it, so only the nearest distinct scales on each
side of ``s`` can be optimal, and the runner-up is adjacent to the optimal
block. The brute-force cross-check lives in :mod:`ratioref.oracle`.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

from ._numeric import (
    DEFAULT_RTOL,
    DomainError,
    PreconditionError,
    Surd,
    as_exact,
    close,
    ensure_positive,
    is_rational,
)
from .penalty import CANONICAL, PenaltyParam, evaluate, sublevel
from .spaces import Finite, Interval, intrinsic_cost

__all__ = [
    "MeaningResult",
    "ScaleWindow",
    "mean",
    "mean_total",
    "is_symbol",
    "low_cost_window",
    "near_balance_window",
    "backbone_window",
    "capacity_bound",
    "margin_of",
]


@dataclass(frozen=True)
class MeaningResult:
    """Outcome of a meaning solve.

    ``minimizers`` holds object ids for finite dictionaries and the single
    optimal scale (or scale vector) for continuous ones. ``margin`` is the
    decision margin for finite dictionaries (``math.inf`` when every cost is
    equal) and ``None`` where it is not defined.
    """

    minimizers: tuple
    optimal_cost: object
    margin: object = None
    scales: tuple = ()

    @property
    def minimizer_set(self) -> frozenset:
        return frozenset(self.minimizers)


@dataclass(frozen=True)
class ScaleWindow:
    lo: object
    hi: object

    def __post_init__(self):
        if not (0 < self.lo <= self.hi):
            raise DomainError(f"invalid window [{self.lo}, {self.hi}]")

    def __contains__(self, y) -> bool:
        return self.lo <= y <= self.hi


def margin_of(costs, rtol: float = DEFAULT_RTOL):
    """Decision margin: gap from the optimum to the best strictly worse cost,
    ``math.inf`` if all costs tie."""
    costs = list(costs)
    if not costs:
        raise DomainError("margin of an empty cost list")
    best = min(costs)
    worse = [c for c in costs if not close(c, best, rtol)]
    if not worse:
        return math.inf
    return min(worse) - best


def _mean_finite_1d(s, d: Finite, p, rtol):
    fibers = d.fibers()
    ys = sorted(fibers)
    n = len(ys)
    j = bisect.bisect_left(ys, s)
    # candidates: largest y <= s and smallest y >= s
    cand = set()
    if j < n:
        cand.add(j)
    if j > 0:
        cand.add(j - 1)
    cost = {i: evaluate(s / ys[i], p) for i in cand}
    best = min(cost.values())
    block = sorted(i for i in cand if close(cost[i], best, rtol))
    lo_i, hi_i = block[0], block[-1]
    # a tie with the next distinct scale outward is possible only on floats
    while lo_i > 0 and close(evaluate(s / ys[lo_i - 1], p), best, rtol):
        lo_i -= 1
    while hi_i < n - 1 and close(evaluate(s / ys[hi_i + 1], p), best, rtol):
        hi_i += 1
    runners = []
    if lo_i > 0:
        runners.append(evaluate(s / ys[lo_i - 1], p))
    if hi_i < n - 1:
        runners.append(evaluate(s / ys[hi_i + 1], p))
    margin = (min(runners) - best) if runners else math.inf
    opt_scales = ys[lo_i:hi_i + 1]
    winners = set()
    for y in opt_scales:
        winners.update(fibers[y])
    ids = tuple(i for i in d.ids if i in winners)
    return MeaningResult(ids, best, margin, tuple(opt_scales))


def _check_scalar_dictionary(d):
    if isinstance(d, Finite) and d.is_vector:
        raise DomainError("1-D solver given a vector dictionary; use mean_md")
    if not isinstance(d, (Finite, Interval)):
        raise DomainError(f"1-D solver does not accept {type(d).__name__}")


def mean(s, d, p: PenaltyParam | None = None, rtol: float = DEFAULT_RTOL) -> MeaningResult:
    """Meaning set of a configuration scale ``s`` over a 1-D dictionary.

    Finite dictionaries return every tied id and the decision margin;
    intervals return the unique minimizer ``clamp(s, lo, hi)``.
    """
    p = p or CANONICAL
    s = ensure_positive(s, "configuration scale")
    _check_scalar_dictionary(d)
    if isinstance(d, Finite):
        return _mean_finite_1d(s, d, p, rtol)
    y = d.clamp(s)
    return MeaningResult((y,), evaluate(s / y, p), None, (y,))


def _total_cost(s, y, p):
    return evaluate(s, p) + evaluate(y, p) + evaluate(s / y, p)


def mean_total(s, d, p: PenaltyParam | None = None, rtol: float = DEFAULT_RTOL) -> MeaningResult:
    """Minimize ``J(s) + J(y) + J(s/y)`` over the dictionary.

    On an interval the optimum is the clamp of ``sqrt(s)``: in log
    coordinates the two ``y``-dependent terms are ``cosh(a u) + cosh(a (t-u))``
    which is minimized at ``u = t/2``.
    """
    p = p or CANONICAL
    s = ensure_positive(s, "configuration scale")
    _check_scalar_dictionary(d)
    if isinstance(d, Finite):
        costs = [(_total_cost(s, y, p), i, y) for i, y in d.items]
        best = min(c for c, _, _ in costs)
        ids = tuple(i for c, i, _ in costs if close(c, best, rtol))
        scales = tuple(dict.fromkeys(y for c, _, y in costs if close(c, best, rtol)))
        margin = margin_of([c for c, _, _ in costs], rtol)
        return MeaningResult(ids, best, margin, scales)
    if is_rational(s) and is_rational(d.lo) and is_rational(d.hi):
        if d.lo * d.lo >= s:
            y = d.lo
        elif d.hi * d.hi <= s:
            y = d.hi
        else:
            y = Surd.sqrt(s)
    else:
        y = d.clamp(math.sqrt(float(s)))
    return MeaningResult((y,), _total_cost(s, y, p), None, (y,))


def is_symbol(s, o_id: str, d: Finite, p: PenaltyParam | None = None,
              rtol: float = DEFAULT_RTOL) -> bool:
    """``o_id`` is a meaning of ``s`` and ``J(s) < J(scale of o_id)`` strictly."""
    if not isinstance(d, Finite):
        raise DomainError("is_symbol needs a finite dictionary")
    y = d.scale_of(o_id)
    res = mean(s, d, p, rtol)
    if o_id not in res.minimizers:
        return False
    js, jo = intrinsic_cost(s, p), intrinsic_cost(y, p)
    return bool(js < jo) and not close(js, jo, rtol)


def low_cost_window(s, eps, p: PenaltyParam | None = None) -> ScaleWindow:
    """Window ``[s/b_eps, s/a_eps]`` containing every meaning of ``s`` over
    any dictionary that contains scale 1, valid when ``J(s) <= eps``.

    Raises
    ------
    PreconditionError
        If ``J(s) > eps``.
    """
    s = ensure_positive(s, "configuration scale")
    eps = as_exact(eps)
    js = evaluate(s, p)
    if js > eps:
        raise PreconditionError(f"J(s) = {js} exceeds eps = {eps}")
    iv = sublevel(eps, p)
    return ScaleWindow(s * iv.lo, s * iv.hi)


def near_balance_window(eps, p: PenaltyParam | None = None) -> ScaleWindow:
    """``[1/b_eps**2, b_eps**2]``: meanings of any ``s`` with ``J(s) <= eps``."""
    iv = sublevel(eps, p)
    return ScaleWindow(iv.lo * iv.lo, iv.hi * iv.hi)


def _check_delta(delta):
    if isinstance(delta, bool):
        raise DomainError("delta must be a real in (0, 1)")
    delta = as_exact(delta)
    if not (0 < delta < 1):
        raise DomainError(f"delta must lie in (0, 1), got {delta}")
    return delta


def backbone_window(delta, p: PenaltyParam | None = None) -> ScaleWindow:
    """Window ``[(1-delta)/b, (1+delta)/a]`` with ``[a, b]`` the sublevel
    interval at level ``J(1 - delta)``.

    Every meaning of every ``s`` with ``|s - 1| < delta`` lies inside, for
    any dictionary containing scale 1. For rational ``delta`` and integer
    exponent the window is exact, because ``1 - delta`` is itself a
    sublevel endpoint.
    """
    delta = _check_delta(delta)
    iv = sublevel(evaluate(1 - delta, p), p)
    return ScaleWindow((1 - delta) / iv.hi, (1 + delta) / iv.lo)


def capacity_bound(d: Finite, delta, p: PenaltyParam | None = None) -> int:
    """Number of items whose scale lies in the backbone window (closed)."""
    if not isinstance(d, Finite) or d.is_vector:
        raise DomainError("capacity_bound needs a finite 1-D dictionary")
    w = backbone_window(delta, p)
    return sum(1 for y in d.scales if y in w)
