"""Deliberately naive reference solvers for cross-checking.

Everything here is a full scan. The only code shared with the solvers is
:func:`ratioref.penalty.evaluate` and the dictionary containers; tie
detection and margins are re-implemented inline.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._numeric import is_exact
from .composition import MediationPlan
from .meaning import MeaningResult
from .penalty import CANONICAL, evaluate
from .spaces import Finite, LogPolytope

__all__ = [
    "DEFAULT_SEED",
    "seed_from_env",
    "scan_costs",
    "brute_mean_finite",
    "brute_mediate",
    "brute_product_mean",
    "grid_mean_continuous",
    "grid_mean_polytope_2d",
    "random_scale",
    "random_finite",
    "CheckResult",
    "run_verification",
]

DEFAULT_SEED = 0x5EED


def seed_from_env(default: int = DEFAULT_SEED) -> int:
    """``RATIOREF_SEED`` (decimal or 0x-hex) if set, else ``default``."""
    raw = os.environ.get("RATIOREF_SEED")
    return int(raw, 0) if raw else default


def _same(a, b, rtol=1e-12):
    if is_exact(a) and is_exact(b):
        return a == b
    a, b = float(a), float(b)
    return a == b or abs(a - b) <= rtol * max(abs(a), abs(b))


def scan_costs(s, d: Finite, p=None) -> list:
    """Reference cost of ``s`` against every item, in dictionary order."""
    p = p or CANONICAL
    out = []
    for _, y in d.items:
        if isinstance(y, tuple):
            c = 0
            for si, yi in zip(s, y):
                c = c + evaluate(si / yi, p)
        else:
            c = evaluate(s / y, p)
        out.append(c)
    return out


def brute_mean_finite(s, d: Finite, p=None) -> MeaningResult:
    """Exact argmin set and margin by scanning every item."""
    costs = scan_costs(s, d, p)
    best = costs[0]
    for c in costs[1:]:
        if c < best:
            best = c
    ids, scales, gap = [], [], None
    for (i, y), c in zip(d.items, costs):
        if _same(c, best):
            ids.append(i)
            if y not in scales:
                scales.append(y)
        else:
            diff = c - best
            gap = diff if gap is None or diff < gap else gap
    return MeaningResult(tuple(ids), best, math.inf if gap is None else gap, tuple(scales))


def brute_mediate(a, c, mediators: Finite, p=None) -> MediationPlan:
    """Scan ``J(a/b) + J(b/c)`` over every mediator."""
    p = p or CANONICAL
    totals = [(evaluate(a / b, p) + evaluate(b / c, p), i, b) for i, b in mediators.items]
    best = min(t for t, _, _ in totals)
    hits = [(i, b) for t, i, b in totals if _same(t, best)]
    b0 = hits[0][1]
    hops = (evaluate(a / b0, p), evaluate(b0 / c, p))
    return MediationPlan(a, c, None, tuple(dict.fromkeys(b for _, b in hits)), hops,
                         best, evaluate(a / c, p), tuple(i for i, _ in hits))


def brute_product_mean(s1, s2, d1: Finite, d2: Finite, p=None) -> tuple[frozenset, object]:
    """Argmin of ``J(s1/y1) + J(s2/y2)`` over ``d1 x d2`` as a set of id pairs."""
    p = p or CANONICAL
    scored = [((i1, i2), evaluate(s1 / y1, p) + evaluate(s2 / y2, p))
              for (i1, y1), (i2, y2) in itertools.product(d1.items, d2.items)]
    best = min(c for _, c in scored)
    return frozenset(k for k, c in scored if _same(c, best)), best


def grid_mean_continuous(s, lo, hi, steps: int, p=None) -> float:
    """Best point of a log-spaced grid of ``steps`` scales on ``[lo, hi]``."""
    if steps < 2 or not lo < hi:
        raise ValueError("need lo < hi and at least two grid points")
    a = float((p or CANONICAL).a)
    grid = np.exp(np.linspace(math.log(float(lo)), math.log(float(hi)), steps))
    r = a * (math.log(float(s)) - np.log(grid))
    return float(grid[np.argmin(np.cosh(r))])


def grid_mean_polytope_2d(t, poly: LogPolytope, box, h: float = 1e-3, p=None):
    """Scan a 2-D log-polytope on a grid of spacing ``h``.

    The scanned set is the square grid over ``box = (lo, hi)`` restricted to
    the polytope, plus grid points of spacing ``h`` along every boundary
    line and every pairwise vertex. Returns ``(u, G)`` for the best point.
    """
    a = float((p or CANONICAL).a)
    A, c = poly.A, poly.c
    t = np.asarray(t, dtype=float)
    (lo0, lo1), (hi0, hi1) = box
    feas_tol = 1e-12

    def G(U):
        r = a * (t[None, :] - U)
        return np.sum(np.cosh(r) - 1.0, axis=1)

    best_u, best_g = None, math.inf

    def consider(U):
        nonlocal best_u, best_g
        if U.size == 0:
            return
        ok = np.all(U @ A.T <= c + feas_tol, axis=1)
        U = U[ok]
        if U.size == 0:
            return
        g = G(U)
        k = int(np.argmin(g))
        if g[k] < best_g:
            best_u, best_g = U[k].copy(), float(g[k])

    # square grid: G is separable, so in each column x the best grid point is
    # the feasible grid y nearest to t[1]; the feasible ys of a column form an
    # interval cut out by the halfspaces
    xs = np.arange(lo0, hi0 + h / 2, h)
    ny = int(round((hi1 - lo1) / h)) + 1
    top = np.full(xs.size, np.inf)
    bot = np.full(xs.size, -np.inf)
    for (n0, n1), cj in zip(A, c):
        rhs = cj + feas_tol - n0 * xs
        if n1 > 0:
            top = np.minimum(top, rhs / n1)
        elif n1 < 0:
            bot = np.maximum(bot, rhs / n1)
        else:
            top = np.where(rhs >= 0, top, -np.inf)
    k_lo = np.maximum(np.ceil((bot - lo1) / h), 0)
    k_hi = np.minimum(np.floor((top - lo1) / h), ny - 1)
    has = k_lo <= k_hi
    k_star = np.clip(np.round((t[1] - lo1) / h), k_lo, k_hi)
    for dk in (-1, 0, 1):
        k = np.clip(k_star + dk, k_lo, k_hi)[has]
        consider(np.column_stack([xs[has], lo1 + k * h]))
    # boundary lines n.u = c, parameterized by arc length
    diag = math.hypot(hi0 - lo0, hi1 - lo1)
    centre = np.array([(lo0 + hi0) / 2, (lo1 + hi1) / 2])
    for n, cj in zip(A, c):
        nn = n / np.dot(n, n)
        base = centre + (cj - n @ centre) * nn
        tangent = np.array([-n[1], n[0]]) / np.linalg.norm(n)
        s = np.arange(-diag, diag + h / 2, h)
        consider(base[None, :] + s[:, None] * tangent[None, :])
    for i, j in itertools.combinations(range(len(c)), 2):
        M = A[[i, j]]
        if abs(np.linalg.det(M)) < 1e-14:
            continue
        consider(np.linalg.solve(M, c[[i, j]])[None, :])
    return best_u, best_g


# -- random instances -----------------------------------------------------------

def random_scale(rng, top: int = 64) -> Fraction:
    """Rational scale ``p/q`` with ``p, q`` uniform in ``[1, top]``."""
    return Fraction(int(rng.integers(1, top + 1)), int(rng.integers(1, top + 1)))


def random_finite(rng, n_max: int = 20, top: int = 64, include=()) -> Finite:
    n = int(rng.integers(1, n_max + 1))
    scales = [random_scale(rng, top) for _ in range(n)] + [Fraction(v) for v in include]
    order = rng.permutation(len(scales))
    return Finite.from_scales([scales[k] for k in order])


@dataclass
class CheckResult:
    name: str
    trials: int
    failures: int

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}: {self.trials - self.failures}/{self.trials}"


def run_verification(seed: int = DEFAULT_SEED, finite_trials: int = 10_000,
                     continuous_trials: int = 1_000) -> list[CheckResult]:
    """Cross-check the solvers against the oracles on random instances."""
    from .composition import mediate, product_mean
    from .decision import boundaries, cell_ids, classify
    from .meaning import mean
    from .multidim import mean_md
    from .spaces import Interval

    rng = np.random.default_rng(seed)
    results = []

    fails = 0
    for _ in range(finite_trials):
        d = random_finite(rng)
        s = random_scale(rng)
        got, ref = mean(s, d), brute_mean_finite(s, d)
        if (set(got.minimizers) != set(ref.minimizers) or got.optimal_cost != ref.optimal_cost
                or got.margin != ref.margin):
            fails += 1
    results.append(CheckResult("finite 1-D meaning vs full scan", finite_trials, fails))

    fails = 0
    for _ in range(finite_trials):
        x = random_scale(rng)
        extra = ()
        if rng.random() < 0.3:
            # plant a pair straddling x so that x can sit exactly on a boundary
            r = 1 + random_scale(rng, 8)
            extra = (x / r, x * r)
        ys = sorted(set(random_finite(rng, include=extra).scales))
        dd = Finite.from_scales(ys)
        b = boundaries(dd)
        if set(cell_ids(classify(x, b), b)) != set(brute_mean_finite(x, dd).minimizers):
            fails += 1
    results.append(CheckResult("boundary classification vs full scan", finite_trials, fails))

    fails = 0
    n2 = continuous_trials
    for _ in range(n2):
        d1 = random_finite(rng, n_max=8)
        d2 = random_finite(rng, n_max=8)
        s = (random_scale(rng), random_scale(rng))
        prod = Finite(tuple((f"{i1},{i2}", (y1, y2))
                            for i1, y1 in d1.items for i2, y2 in d2.items))
        got = mean_md(s, prod)
        ref = brute_mean_finite(s, prod)
        if set(got.minimizers) != set(ref.minimizers) or got.optimal_cost != ref.optimal_cost:
            fails += 1
    results.append(CheckResult("finite 2-D meaning vs full scan", n2, fails))

    fails = 0
    for _ in range(n2):
        d1 = random_finite(rng, n_max=8)
        d2 = random_finite(rng, n_max=8)
        s1, s2 = random_scale(rng), random_scale(rng)
        r1, r2 = product_mean(s1, s2, d1, d2)
        got = frozenset(itertools.product(r1.minimizers, r2.minimizers))
        ref, _ = brute_product_mean(s1, s2, d1, d2)
        if got != ref:
            fails += 1
    results.append(CheckResult("product factorization vs full scan", n2, fails))

    fails = 0
    for _ in range(n2):
        lo = random_scale(rng)
        hi = lo * random_scale(rng, 8) + lo
        s = random_scale(rng)
        got = mean(s, Interval(lo, hi)).minimizers[0]
        g = grid_mean_continuous(s, lo, hi, 4001)
        cell = (math.log(float(hi)) - math.log(float(lo))) / 4000
        if abs(math.log(float(got)) - math.log(g)) > cell * (1 + 1e-9):
            fails += 1
    results.append(CheckResult("interval meaning vs log grid", n2, fails))

    fails = 0
    for _ in range(n2):
        d = random_finite(rng, n_max=12)
        a, c = random_scale(rng), random_scale(rng)
        got = mediate(a, c, d)
        ref = brute_mediate(a, c, d)
        if set(got.chosen_ids) != set(ref.chosen_ids) or got.total_cost != ref.total_cost:
            fails += 1
    results.append(CheckResult("mediation vs full scan", n2, fails))
    return results

