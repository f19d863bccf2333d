"""Geometric-mean decision boundaries for finite 1-D dictionaries.

For sorted distinct scales ``y_1 < ... < y_N`` and the canonical penalty,
adjacent objects tie exactly at ``m_i = sqrt(y_i y_{i+1})``, and

    2x (J(x/y_{i+1}) - J(x/y_i)) = (y_{i+1} - y_i) (1 - x**2 / (y_i y_{i+1}))

so every comparison is decided by ``x**2`` versus ``y_i y_{i+1}``. Boundaries
are stored as those products; the square root is only taken on request.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

from ._numeric import (
    DEFAULT_RTOL,
    DomainError,
    Surd,
    close,
    ensure_positive,
    is_exact,
    is_rational,
)
from .meaning import margin_of, mean
from .penalty import CANONICAL, PenaltyParam
from .spaces import Finite

__all__ = [
    "BoundarySet",
    "StabilityCertificate",
    "boundaries",
    "classify",
    "stability_radius",
    "robust_under",
]


@dataclass(frozen=True)
class BoundarySet:
    """Sorted distinct scales with their cell labels.

    Cell ``k`` (1-based) is ``(m_{k-1}, m_k)`` with sentinels ``m_0 = 0`` and
    ``m_N = inf``; ``products[i-1] = y_i * y_{i+1} = m_i**2``.
    """

    scales: tuple
    ids: tuple
    products: tuple

    def __len__(self):
        return len(self.scales)

    def boundary(self, i: int):
        """``m_i`` for ``0 <= i <= N``; exact (Fraction or Surd) for exact scales."""
        n = len(self.scales)
        if i == 0:
            return 0
        if i == n:
            return math.inf
        if not 0 < i < n:
            raise IndexError(i)
        prod = self.products[i - 1]
        if is_rational(prod):
            return Surd.sqrt(prod)
        return math.sqrt(float(prod))

    @property
    def interior(self) -> tuple:
        """Interior boundaries ``m_1 .. m_{N-1}``."""
        return tuple(self.boundary(i) for i in range(1, len(self.scales)))


@dataclass(frozen=True)
class StabilityCertificate:
    """Distance to the nearest boundary plus the perturbation budget.

    ``max_perturbation`` is the open bound ``margin/2``: any cost
    perturbation strictly below it cannot create new minimizers.
    """

    stable: bool
    radius: object
    margin: object
    max_perturbation: object


def boundaries(d: Finite) -> BoundarySet:
    """Geometric-mean boundaries of a finite 1-D dictionary of distinct scales."""
    if not isinstance(d, Finite) or d.is_vector:
        raise DomainError("boundaries need a finite 1-D dictionary")
    pairs = sorted(d.items, key=lambda it: it[1])
    scales = tuple(s for _, s in pairs)
    for a, b in zip(scales, scales[1:]):
        if a == b:
            raise DomainError(f"duplicate scale {a}; boundaries need distinct scales")
    products = tuple(a * b for a, b in zip(scales, scales[1:]))
    return BoundarySet(scales, tuple(i for i, _ in pairs), products)


def _locate(x, b: BoundarySet, rtol):
    """Return ``(k, tie)`` where ``x`` lies in cell k, or on boundary ``m_k``
    when ``tie`` is True."""
    x2 = x * x
    exact = is_exact(x2) and all(is_exact(p) for p in b.products)
    if exact:
        k = bisect.bisect_left(b.products, x2)
        if k < len(b.products) and b.products[k] == x2:
            return k + 1, True
        return k + 1, False
    prods = [float(p) for p in b.products]
    x2 = float(x2)
    k = bisect.bisect_left(prods, x2)
    for cand in (k - 1, k):
        if 0 <= cand < len(prods) and close(prods[cand], x2, rtol):
            return cand + 1, True
    return k + 1, False


def classify(x, b: BoundarySet, rtol: float = DEFAULT_RTOL):
    """Meaning cell of ratio ``x``.

    Returns the 1-based cell index ``k`` when ``m_{k-1} < x < m_k`` and the
    pair ``(k, k+1)`` when ``x = m_k``.
    """
    x = ensure_positive(x, "ratio")
    k, tie = _locate(x, b, rtol)
    return (k, k + 1) if tie else k


def cell_ids(cell, b: BoundarySet) -> tuple:
    """Object ids for a value returned by :func:`classify`."""
    if isinstance(cell, tuple):
        return tuple(b.ids[k - 1] for k in cell)
    return (b.ids[cell - 1],)


def stability_radius(x, b: BoundarySet, p: PenaltyParam | None = None,
                     rtol: float = DEFAULT_RTOL) -> StabilityCertificate:
    """Distance from ``x`` to the nearest decision boundary, with margin.

    The radius is the full distance ``min(x - m_{k-1}, m_k - x)``; any
    ``x'`` closer than that keeps the same unique meaning.
    """
    p = p or CANONICAL
    x = ensure_positive(x, "ratio")
    k, tie = _locate(x, b, rtol)
    if tie:
        radius = 0
    else:
        left = x - b.boundary(k - 1)
        right = b.boundary(k)
        radius = left if right == math.inf else min(left, right - x)
    d = Finite(tuple(zip(b.ids, b.scales)))
    margin = mean(x, d, p, rtol).margin
    return StabilityCertificate(radius > 0, radius, margin, margin / 2)


def robust_under(costs, eta, rtol: float = DEFAULT_RTOL) -> bool:
    """True iff the decision margin strictly exceeds ``2 * eta``."""
    if eta < 0:
        raise DomainError("eta must be nonnegative")
    return margin_of(costs, rtol) > 2 * eta
