"""Separable d-dimensional meaning problems.

With ``t = log x`` and ``u = log y`` the objective is

    G_t(u) = sum_i cosh(a (t_i - u_i)) - 1,

which is smooth and strictly convex. Over a log-box the minimizer is the
componentwise clamp of ``t``; over a log-polytope it is found by projected
gradient descent with Armijo backtracking.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from ._numeric import DEFAULT_RTOL, DomainError, close, ensure_positive
from .meaning import MeaningResult, margin_of, mean
from .penalty import CANONICAL, PenaltyParam
from .spaces import Finite, Interval, LogBox, LogPolytope, ref_cost_vec

__all__ = [
    "MdMeaningResult",
    "objective",
    "gradient",
    "project_polytope",
    "solve_polytope",
    "mean_md",
    "coordinatewise_equiv_check",
    "continuity_probe",
]

PG_TOL = 1e-10
MAX_ITER = 10_000
ARMIJO = 1e-4
ENUM_LIMIT = 20_000


@dataclass(frozen=True)
class MdMeaningResult(MeaningResult):
    """Meaning result carrying the log-coordinate minimizer (continuous
    dictionaries) and the number of descent iterations used."""

    log_minimizer: tuple = ()
    iterations: int = 0


def _exponent(p) -> float:
    return float((p or CANONICAL).a)


def objective(t, u, p: PenaltyParam | None = None) -> float:
    """``G_t(u) = sum_i cosh(a (t_i - u_i)) - 1``."""
    a = _exponent(p)
    r = a * (np.asarray(t, dtype=float) - np.asarray(u, dtype=float))
    return float(np.sum(2.0 * np.sinh(0.5 * r) ** 2))


def gradient(t, u, p: PenaltyParam | None = None) -> np.ndarray:
    """``dG/du_i = -a sinh(a (t_i - u_i))``."""
    a = _exponent(p)
    return -a * np.sinh(a * (np.asarray(t, dtype=float) - np.asarray(u, dtype=float)))


def _project_enumerate(x, A, c, tol):
    # the projection is the nearest feasible point among the projections onto
    # the affine hulls {A_S u = c_S} of active sets with |S| <= d
    m, d = A.shape
    best, best_dist = None, math.inf
    for k in range(1, min(d, m) + 1):
        idx = np.array(list(itertools.combinations(range(m), k)))
        AS = A[idx]
        G = AS @ AS.transpose(0, 2, 1)
        rhs = AS @ x - c[idx]
        mu = (np.linalg.pinv(G) @ rhs[..., None])[..., 0]
        cand = x - np.einsum("nkd,nk->nd", AS, mu)
        ok = np.max(cand @ A.T - c, axis=1) <= tol
        if np.any(ok):
            dist = np.linalg.norm(cand[ok] - x, axis=1)
            j = int(np.argmin(dist))
            if dist[j] < best_dist:
                best, best_dist = cand[ok][j], dist[j]
    return best


def _project_ldp(x, A, c):
    from scipy.optimize import lsq_linear

    # min |z| s.t. -A z >= A x - c; dual BVLS on E = [-A^T; h^T], f = e_{d+1}
    d = x.size
    h = A @ x - c
    E = np.vstack([-A.T, h[None, :]])
    f = np.zeros(d + 1)
    f[d] = 1.0
    w = lsq_linear(E, f, bounds=(0.0, np.inf), method="bvls", tol=1e-15).x
    r = E @ w - f
    if r[d] >= 0:
        raise DomainError("projection failed: polytope reported empty")
    return x - r[:d] / r[d]


def project_polytope(v, poly: LogPolytope) -> np.ndarray:
    """Euclidean projection of ``v`` onto ``{u : A u <= c}``.

    Small problems (at most ``ENUM_LIMIT`` candidate active sets) are solved
    exactly by enumerating active sets of size ``<= d``. Larger ones go
    through the least-distance dual, a bounded least squares problem.
    """
    A, c = poly.A, poly.c
    x = np.asarray(v, dtype=float)
    if np.all(A @ x <= c):
        return x.copy()
    m, d = A.shape
    tol = 1e-12 * (1.0 + max(np.max(np.abs(x)), np.max(np.abs(c))))
    if sum(math.comb(m, k) for k in range(1, min(d, m) + 1)) <= ENUM_LIMIT:
        u = _project_enumerate(x, A, c, tol)
        if u is not None:
            return u
    return _project_ldp(x, A, c)


def solve_polytope(t, poly: LogPolytope, p: PenaltyParam | None = None, u0=None,
                   tol: float = PG_TOL, max_iter: int = MAX_ITER):
    """Minimize ``G_t`` over a log-polytope.

    Returns ``(u, iterations)``. Starts from the projection of ``t`` unless
    ``u0`` is given (it is projected first). Stops when the gradient mapping
    ``|u - P(u - alpha grad)| / alpha`` has sup-norm at most ``tol`` or the
    step size underflows.
    """
    t = np.asarray(t, dtype=float)
    if t.shape != (poly.dim,):
        raise DomainError(f"dimension mismatch: {t.shape[0]} vs {poly.dim}")
    u = project_polytope(t if u0 is None else u0, poly)
    g_u = objective(t, u, p)
    alpha = 1.0
    it = 0
    for it in range(1, max_iter + 1):
        grad = gradient(t, u, p)
        alpha = min(alpha * 2.0, 1e6)
        while True:
            cand = project_polytope(u - alpha * grad, poly)
            step = cand - u
            g_c = objective(t, cand, p)
            if g_c <= g_u + ARMIJO * float(grad @ step) or alpha < 1e-300:
                break
            alpha *= 0.5
        if alpha < 1e-300:
            break
        mapping = np.max(np.abs(step)) / alpha
        u, g_u = cand, g_c
        if mapping <= tol:
            break
    return u, it


def _finite_md(s, d: Finite, p, rtol):
    costs = [(ref_cost_vec(s, y, p), i, y) for i, y in d.items]
    best = min(c for c, _, _ in costs)
    winners = [(i, y) for c, i, y in costs if close(c, best, rtol)]
    return MdMeaningResult(
        tuple(i for i, _ in winners), best, margin_of([c for c, _, _ in costs], rtol),
        tuple(dict.fromkeys(y for _, y in winners)))


def mean_md(s, d, p: PenaltyParam | None = None, rtol: float = DEFAULT_RTOL) -> MdMeaningResult:
    """Meaning of a scale vector ``s`` over a d-dimensional dictionary.

    Finite dictionaries are scanned exhaustively (ties and margin included).
    Log-boxes and log-polytopes have a unique minimizer, returned as a
    scale vector alongside its log coordinates.
    """
    p = p or CANONICAL
    s = tuple(ensure_positive(v) for v in s)
    if len(s) != d.dim:
        raise DomainError(f"dimension mismatch: {len(s)} vs {d.dim}")
    if isinstance(d, Finite):
        if not d.is_vector:
            r = mean(s[0], d, p, rtol)
            return MdMeaningResult(r.minimizers, r.optimal_cost, r.margin,
                                   tuple((y,) for y in r.scales))
        return _finite_md(s, d, p, rtol)
    t = np.log(np.asarray([float(v) for v in s]))
    if isinstance(d, LogBox):
        # clamp in scale space against exp(lo), exp(hi), exactly as the 1-D
        # interval solver does; unclamped coordinates keep the input scale
        parts = [mean(si, Interval(math.exp(lo), math.exp(hi)), p, rtol)
                 for si, lo, hi in zip(s, d.lo, d.hi)]
        y = tuple(r.minimizers[0] for r in parts)
        cost = sum((r.optimal_cost for r in parts), 0)
        u = tuple(math.log(float(v)) for v in y)
        return MdMeaningResult((y,), cost, None, (y,), u, 0)
    if isinstance(d, LogPolytope):
        u, it = solve_polytope(t, d, p)
        y = tuple(np.exp(u).tolist())
        return MdMeaningResult((y,), objective(t, u, p), None, (y,), tuple(u.tolist()), it)
    if isinstance(d, Interval):
        r = mean(s[0], d, p, rtol)
        y = r.minimizers[0]
        return MdMeaningResult(((y,),), r.optimal_cost, None, ((y,),),
                               (math.log(float(y)),), 0)
    raise DomainError(f"unsupported dictionary {type(d).__name__}")


def product_dictionary(dicts) -> Finite:
    """Finite product of 1-D finite dictionaries; ids are comma-joined."""
    items = [((), ())]
    for d in dicts:
        if not isinstance(d, Finite) or d.is_vector:
            raise DomainError("product_dictionary needs finite 1-D factors")
        items = [(ids + (i,), sc + (y,)) for ids, sc in items for i, y in d.items]
    return Finite(tuple((",".join(ids), sc) for ids, sc in items))


def coordinatewise_equiv_check(s, dicts, p: PenaltyParam | None = None,
                               rtol: float = DEFAULT_RTOL) -> bool:
    """Check that the meaning over a product of finite dictionaries equals
    the product of the per-coordinate meanings (ids and optimal cost)."""
    s = tuple(s)
    if len(s) != len(dicts):
        raise DomainError("need one dictionary per coordinate")
    joint = mean_md(s, product_dictionary(dicts), p, rtol)
    parts = [mean(si, di, p, rtol) for si, di in zip(s, dicts)]
    expected = [()]
    for r in parts:
        expected = [e + (i,) for e in expected for i in r.minimizers]
    same_ids = set(joint.minimizers) == {",".join(e) for e in expected}
    total = sum((r.optimal_cost for r in parts), 0)
    return same_ids and close(joint.optimal_cost, total, rtol)


def continuity_probe(t, d, step: float, p: PenaltyParam | None = None) -> float:
    """Largest sup-norm move of the log minimizer when one coordinate of
    ``t`` is shifted by ``+-step``."""
    if not isinstance(d, (LogBox, LogPolytope)):
        raise DomainError("continuity_probe needs a log-box or log-polytope")
    t = np.asarray(t, dtype=float)

    def solve(tt):
        if isinstance(d, LogBox):
            return d.clamp(tt)
        return solve_polytope(tt, d, p)[0]

    base = solve(t)
    worst = 0.0
    for i in range(t.size):
        for sign in (1.0, -1.0):
            tt = t.copy()
            tt[i] += sign * step
            worst = max(worst, float(np.max(np.abs(solve(tt) - base))))
    return worst
