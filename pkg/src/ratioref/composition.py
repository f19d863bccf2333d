"""Product and sequential composition of reference costs.

Sequential composition through a mediator scale ``b`` costs
``F(b) = J(a/b) + J(b/c)``. In log coordinates

    F(b) = 2 cosh(log(a/c) / 2) cosh(log b - log b_geo) - 2,   b_geo = sqrt(a c)

so the optimal mediators are exactly the feasible scales nearest to
``b_geo`` in log distance. Chains of ``k`` equal log steps cost
``k (cosh(t/k) - 1)`` with ``t = log(a/c)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._numeric import (
    DEFAULT_RTOL,
    DomainError,
    Surd,
    ensure_positive,
    exact_root,
    is_exact,
    is_rational,
)
from .meaning import MeaningResult, mean
from .penalty import CANONICAL, PenaltyParam, evaluate
from .spaces import Finite, Interval

__all__ = [
    "MediationPlan",
    "ChainPlan",
    "product_mean",
    "mediate",
    "mediation_cost_closed_form",
    "mediation_gain",
    "chain",
    "chain_optimality_check",
]


@dataclass(frozen=True)
class MediationPlan:
    """Optimal two-hop route ``a -> b -> c`` over a mediator set.

    ``chosen`` lists every optimal mediator scale (ties included);
    ``hop_costs`` and ``total_cost`` refer to the first of them, all
    optimal mediators sharing the same total.
    """

    source: object
    target: object
    balance_point: object
    chosen: tuple
    hop_costs: tuple
    total_cost: object
    direct_cost: object
    chosen_ids: tuple = ()

    @property
    def gain(self):
        return self.direct_cost - self.total_cost


@dataclass(frozen=True)
class ChainPlan:
    """Equal-log-increment chain from ``a`` to ``c`` in ``steps`` hops."""

    steps: int
    ratios: tuple
    per_step_cost: object
    total_cost: object


def product_mean(s1, s2, d1, d2, p: PenaltyParam | None = None,
                 rtol: float = DEFAULT_RTOL) -> tuple[MeaningResult, MeaningResult]:
    """Meaning of a pair under the summed cost, solved per component.

    The product meaning set is the Cartesian product of the two returned
    minimizer sets.
    """
    return mean(s1, d1, p, rtol), mean(s2, d2, p, rtol)


def _balance_point(a, c):
    if is_rational(a) and is_rational(c):
        return Surd.sqrt(a * c)
    return math.sqrt(float(a) * float(c))


def _log_distance_key(b, a, c):
    """Monotone proxy for ``|log(b / b_geo)|``: ``max(r, 1/r)`` with
    ``r = b**2 / (a c)``, exact on rationals."""
    if is_exact(b) and is_exact(a) and is_exact(c):
        r = b * b / (a * c)
        return max(r, 1 / r)
    return abs(math.log(float(b)) - 0.5 * (math.log(float(a)) + math.log(float(c))))


def mediate(a, c, mediators, p: PenaltyParam | None = None,
            rtol: float = DEFAULT_RTOL) -> MediationPlan:
    """Optimal mediator(s) for routing ``a`` to ``c``.

    Finite mediator sets return every scale at minimal log distance from
    ``b_geo``; intervals return the clamp of ``b_geo``.
    """
    p = p or CANONICAL
    a = ensure_positive(a, "source scale")
    c = ensure_positive(c, "target scale")
    b_geo = _balance_point(a, c)
    if isinstance(mediators, Finite):
        if mediators.is_vector:
            raise DomainError("mediators must be 1-D")
        keyed = [(_log_distance_key(b, a, c), i, b) for i, b in mediators.items]
        best = min(k for k, _, _ in keyed)
        if is_exact(best):
            hits = [(i, b) for k, i, b in keyed if k == best]
        else:
            # log distances near zero: compare on an absolute scale
            hits = [(i, b) for k, i, b in keyed if abs(k - best) <= rtol * max(1.0, best)]
        chosen = tuple(dict.fromkeys(b for _, b in hits))
        ids = tuple(i for i, _ in hits)
    elif isinstance(mediators, Interval):
        lo, hi = mediators.lo, mediators.hi
        if is_exact(a) and is_exact(c) and is_exact(lo) and is_exact(hi):
            ac = a * c
            if lo * lo >= ac:
                b = lo
            elif hi * hi <= ac:
                b = hi
            else:
                b = b_geo
        else:
            b = min(max(float(b_geo), float(lo)), float(hi))
        chosen, ids = (b,), ()
    else:
        raise DomainError(f"mediators must be Finite or Interval, got {type(mediators).__name__}")
    b = chosen[0]
    hops = (evaluate(a / b, p), evaluate(b / c, p))
    return MediationPlan(a, c, b_geo, chosen, hops, hops[0] + hops[1],
                         evaluate(a / c, p), ids)


def mediation_cost_closed_form(a, c, b, p: PenaltyParam | None = None) -> float:
    """``2 cosh(a_exp log(a/c) / 2) cosh(a_exp (log b - log b_geo)) - 2``,
    the float product form of ``J(a/b) + J(b/c)``."""
    p = p or CANONICAL
    k = float(p.a)
    la, lc, lb = math.log(float(a)), math.log(float(c)), math.log(float(b))
    return 2.0 * math.cosh(k * (la - lc) / 2) * math.cosh(k * (lb - (la + lc) / 2)) - 2.0


def mediation_gain(x, p: PenaltyParam | None = None):
    """``J(x) - 2 J(sqrt x)``, the saving of a balanced two-hop route.

    For the canonical penalty this equals
    ``((sqrt x - 1)**2 + (1/sqrt x - 1)**2) / 2``.
    """
    x = ensure_positive(x, "ratio")
    root = Surd.sqrt(x) if is_rational(x) else math.sqrt(float(x))
    return evaluate(x, p) - 2 * evaluate(root, p)


def chain(a, c, k: int, p: PenaltyParam | None = None) -> ChainPlan:
    """Equal-log-increment ``k``-step chain from ``a`` to ``c``.

    Intermediate scales are ``b_j = a * r**-j`` with ``r = (a/c)**(1/k)``;
    the result is exact whenever ``a/c`` has a rational ``k``-th root.
    """
    p = p or CANONICAL
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise DomainError(f"chain needs a positive integer step count, got {k!r}")
    k = int(k)
    a = ensure_positive(a, "source scale")
    c = ensure_positive(c, "target scale")
    r = exact_root(a / c, k) if (is_rational(a) and is_rational(c)) else None
    if r is not None:
        ratios = tuple(a / r ** j for j in range(1, k))
        step = evaluate(r, p)
        return ChainPlan(k, ratios, step, k * step)
    t = math.log(float(a)) - math.log(float(c))
    ratios = tuple(float(a) * math.exp(-j * t / k) for j in range(1, k))
    step = 2.0 * math.sinh(float(p.a) * t / (2 * k)) ** 2
    return ChainPlan(k, ratios, step, k * step)


def chain_optimality_check(a, c, k: int, trials: int = 1000, seed: int = 0x5EED,
                           p: PenaltyParam | None = None, tol: float = 1e-12) -> bool:
    """Randomized check that no ``k``-step chain with the same total log
    ratio beats the equal-increment chain."""
    p = p or CANONICAL
    if k < 1:
        raise DomainError("k must be positive")
    best = float(chain(a, c, k, p).total_cost)
    t = math.log(float(a)) - math.log(float(c))
    rng = np.random.default_rng(seed)
    ak = float(p.a)
    for _ in range(trials):
        # random increments with fixed sum t
        w = rng.normal(size=k) * rng.uniform(0.0, 2.0)
        steps = t / k + (w - w.mean())
        total = float(np.sum(2.0 * np.sinh(0.5 * ak * steps) ** 2))
        if total < best - tol * max(1.0, best):
            return False
    return True
