"""The mismatch penalty family ``J_a(x) = cosh(a log x) - 1``.

``a = 1`` is the canonical penalty ``J(x) = (x + 1/x)/2 - 1 = (x - 1)**2 / (2x)``.
Every member is the canonical one composed with a power map,
``J_a(x) = J(x**a)``, so results for general ``a`` can be read either in the
original ratio units or in the rescaled units ``x**a``; this package always
reports original units.

Evaluation is exact (returns a :class:`~fractions.Fraction` or
:class:`~ratioref._numeric.Surd`) when the ratio is exact and ``a`` is a
positive integer, and float otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction

from ._numeric import (
    DomainError,
    Surd,
    as_exact,
    ensure_positive,
    exact_root,
    is_exact,
    is_rational,
)

__all__ = [
    "PenaltyParam",
    "CANONICAL",
    "SublevelInterval",
    "J",
    "evaluate",
    "dalembert_residual",
    "sublevel",
    "log_form",
    "quadratic_bounds",
]


@dataclass(frozen=True)
class PenaltyParam:
    """Exponent ``a > 0`` selecting ``J_a``; ``a = 1`` is canonical."""

    a: object = Fraction(1)

    def __post_init__(self):
        a = self.a
        if isinstance(a, bool):
            raise DomainError("penalty exponent must be a positive real")
        if isinstance(a, int):
            a = Fraction(a)
            object.__setattr__(self, "a", a)
        try:
            ok = a > 0 and math.isfinite(float(a))
        except (TypeError, ValueError):
            ok = False
        if not ok:
            raise DomainError(f"penalty exponent must be positive, got {self.a!r}")

    @cached_property
    def integer_exponent(self) -> int | None:
        """``a`` as a Python int when it is an exact positive integer."""
        a = self.a
        if is_rational(a) and Fraction(a).denominator == 1:
            return int(a)
        return None

    @property
    def is_canonical(self) -> bool:
        return self.a == 1


CANONICAL = PenaltyParam()


@dataclass(frozen=True)
class SublevelInterval:
    """Closed interval ``{x > 0 : J(x) <= level}`` with reciprocal endpoints."""

    lo: object
    hi: object
    level: object

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi


def _coerce(p) -> PenaltyParam:
    if p is None:
        return CANONICAL
    if isinstance(p, PenaltyParam):
        return p
    return PenaltyParam(p)


def _cosh_minus_one(u: float) -> float:
    # cosh(u) - 1 without cancellation near u = 0
    try:
        return 2.0 * math.sinh(0.5 * u) ** 2
    except OverflowError:
        return math.inf


def evaluate(x, p: PenaltyParam | None = None):
    """Mismatch penalty ``J_a(x) = (x**a + x**-a)/2 - 1``.

    Parameters
    ----------
    x : positive real
        Ratio. ``int``, ``Fraction`` and ``Surd`` inputs stay exact when the
        exponent is a positive integer.
    p : PenaltyParam, optional
        Exponent selector; canonical ``a = 1`` by default.

    Raises
    ------
    DomainError
        If ``x <= 0``.
    """
    p = _coerce(p)
    x = ensure_positive(x, "ratio")
    k = p.integer_exponent
    if k is not None and isinstance(x, (int, Fraction)):
        # (x^k + x^-k)/2 - 1 = (n - d)^2 / (2 n d) for x^k = n/d in lowest terms
        n, d = x.numerator ** k, x.denominator ** k
        return Fraction((n - d) ** 2, 2 * n * d)
    if k is not None and is_exact(x):
        if k == 1:
            return (x + 1 / x) / 2 - 1
        xk = x ** k
        return (xk + 1 / xk) / 2 - 1
    return _cosh_minus_one(float(p.a) * math.log(float(x)))


J = evaluate


def dalembert_residual(x, y, p: PenaltyParam | None = None, relative: bool = False):
    """``J(xy) + J(x/y) - 2J(x) - 2J(y) - 2J(x)J(y)``, identically zero.

    With ``relative=True`` the residual is divided by the sum of the absolute
    values of the five terms (so float results are comparable across scales).
    """
    p = _coerce(p)
    x = ensure_positive(x, "x")
    y = ensure_positive(y, "y")
    jx = evaluate(x, p)
    jy = evaluate(y, p)
    terms = (evaluate(x * y, p), evaluate(x / y, p), -2 * jx, -2 * jy, -2 * jx * jy)
    res = sum(terms[1:], terms[0])
    if not relative:
        return res
    scale = sum(abs(float(t)) for t in terms)
    if scale == 0:
        return 0.0 if not is_exact(res) else res
    if is_exact(res) and res == 0:
        return res
    return float(res) / scale


def sublevel(level, p: PenaltyParam | None = None) -> SublevelInterval:
    """Endpoints ``[a_eps, b_eps]`` of the sublevel set ``{J <= level}``.

    For the canonical penalty and a rational level the endpoints are exact:
    ``b = (1 + eps) + sqrt(eps (2 + eps))`` as a Fraction or Surd, and
    ``a = 1/b``. Other exponents solve ``cosh(a log x) = 1 + eps`` in floats.
    """
    p = _coerce(p)
    if isinstance(level, bool):
        raise DomainError("level must be a nonnegative real")
    level = as_exact(level)
    if level < 0:
        raise DomainError(f"sublevel requires level >= 0, got {level!r}")
    k = p.integer_exponent
    if k is not None and is_rational(level):
        eps = Fraction(level)
        root = Surd.sqrt(eps * (2 + eps))
        hi = (1 + eps) + root
        lo = (1 + eps) - root
        if k == 1:
            return SublevelInterval(lo, hi, eps)
        if not isinstance(hi, Surd):
            hi_k = exact_root(hi, k)
            if hi_k is not None:
                return SublevelInterval(1 / hi_k, hi_k, eps)
    eps = float(level)
    if math.isinf(eps):
        return SublevelInterval(0.0, math.inf, eps)
    # arcosh(1 + eps) = log1p(eps + sqrt(eps (2 + eps)))
    u = math.log1p(eps + math.sqrt(eps * (2.0 + eps))) / float(p.a)
    hi = math.exp(u)
    return SublevelInterval(math.exp(-u), hi, level)


def log_form(t, p: PenaltyParam | None = None) -> float:
    """Penalty in log coordinates, ``J_a(e**t) = cosh(a t) - 1``."""
    p = _coerce(p)
    return _cosh_minus_one(float(p.a) * float(t))


def quadratic_bounds(t) -> tuple[float, float]:
    """Quadratic sandwich ``t**2/2 <= cosh(t) - 1 <= t**2/2 + t**4/24 cosh|t|``
    for the canonical penalty."""
    t = float(t)
    lower = 0.5 * t * t
    return lower, lower + (t ** 4 / 24.0) * math.cosh(abs(t))
