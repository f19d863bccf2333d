"""Scalar plumbing shared by every module.

Two numeric backends coexist:

* exact: ``int``, :class:`fractions.Fraction` and :class:`Surd` (numbers of the
  form ``p + q*sqrt(d)`` with rational ``p, q, d``), used whenever the inputs
  are rational and the penalty exponent is a positive integer;
* float: IEEE doubles, used for transcendental paths (general exponents,
  logarithms, hyperbolic functions).

A value's type decides its backend; nothing here silently turns an exact
value into a float except the explicit ``float()`` conversion.
"""

from __future__ import annotations

import math
import numbers
import re
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from math import isqrt

DEFAULT_RTOL = 1e-12


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class PreconditionError(ValueError):
    """A stated hypothesis of the operation does not hold for the inputs."""


def _exact_sqrt_int(n: int) -> int | None:
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def exact_sqrt(q) -> Fraction | None:
    """Square root of a nonnegative rational if it is rational, else None."""
    q = Fraction(q)
    num = _exact_sqrt_int(q.numerator)
    den = _exact_sqrt_int(q.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _iroot(n: int, k: int) -> int | None:
    if n < 0:
        return None
    if n < 2:
        return n
    # float seed, then integer correction
    r = int(round(n ** (1.0 / k))) if n.bit_length() < 1000 else 1 << (n.bit_length() // k)
    while r ** k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r if r ** k == n else None


def exact_root(q, k: int) -> Fraction | None:
    """k-th root of a positive rational when it is rational, else None."""
    q = Fraction(q)
    if q <= 0:
        return None
    num = _iroot(q.numerator, k)
    den = _iroot(q.denominator, k)
    if num is None or den is None:
        return None
    return Fraction(num, den)


class Surd:
    """Exact real number ``p + q*sqrt(d)`` with rational p, q and a fixed
    non-square positive integer radicand d.

    Only the arithmetic the solvers need is provided: ring operations,
    inversion, ordering and float conversion. Mixing two surds with
    different radicands falls back to float arithmetic.
    """

    __slots__ = ("p", "q", "d")

    def __init__(self, p, q, d):
        self.p = Fraction(p)
        self.q = Fraction(q)
        self.d = int(d)

    @classmethod
    def sqrt(cls, value) -> "Fraction | Surd":
        """Exact square root of a nonnegative rational."""
        value = Fraction(value)
        if value < 0:
            raise DomainError(f"square root of negative value {value}")
        root = exact_sqrt(value)
        if root is not None:
            return root
        # sqrt(n/m) = sqrt(n*m)/m
        n, m = value.numerator, value.denominator
        return cls(0, Fraction(1, m), n * m)

    @staticmethod
    def _make(p, q, d):
        if q == 0:
            return Fraction(p)
        return Surd(p, q, d)

    def _coerce(self, other):
        if isinstance(other, Surd):
            if other.d == self.d:
                return other.p, other.q
            return None
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Fraction(other), Fraction(0)
        return None

    def __float__(self):
        return float(self.p) + float(self.q) * math.sqrt(self.d)

    def __neg__(self):
        return Surd(-self.p, -self.q, self.d)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self < 0 else self

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return float(self) + float(other)
        return self._make(self.p + c[0], self.q + c[1], self.d)

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return float(self) - float(other)
        return self._make(self.p - c[0], self.q - c[1], self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return float(self) * float(other)
        p2, q2 = c
        return self._make(self.p * p2 + self.q * q2 * self.d,
                          self.p * q2 + self.q * p2, self.d)

    __rmul__ = __mul__

    def inverse(self):
        norm = self.p * self.p - self.q * self.q * self.d
        if norm == 0:
            raise ZeroDivisionError("surd is zero")
        return self._make(self.p / norm, -self.q / norm, self.d)

    def __truediv__(self, other):
        if isinstance(other, Surd) and other.d == self.d:
            return self * other.inverse()
        c = self._coerce(other)
        if c is None:
            return float(self) / float(other)
        if c[0] == 0:
            raise ZeroDivisionError("division by zero")
        return self._make(self.p / c[0], self.q / c[0], self.d)

    def __rtruediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return float(other) / float(self)
        return self.inverse() * c[0]

    def __pow__(self, k):
        if not isinstance(k, int):
            return float(self) ** k
        if k < 0:
            return self.inverse() ** (-k)
        out = Fraction(1)
        base = self
        while k:
            if k & 1:
                out = base * out
            base = base * base
            k >>= 1
        return out

    def sign(self) -> int:
        sp = (self.p > 0) - (self.p < 0)
        sq = (self.q > 0) - (self.q < 0)
        if sq == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq
        # opposite signs: compare p^2 with q^2 d
        lhs = self.p * self.p
        rhs = self.q * self.q * self.d
        if lhs == rhs:
            return 0
        return sp if lhs > rhs else sq

    def _cmp(self, other) -> int:
        diff = self - other
        if isinstance(diff, Surd):
            return diff.sign()
        return (diff > 0) - (diff < 0)

    def __eq__(self, other):
        if not isinstance(other, (Surd, int, Fraction, float)):
            return NotImplemented
        return self._cmp(other) == 0

    def __hash__(self):
        return hash((self.p, self.q, self.d))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __repr__(self):
        return f"Surd({self.p}, {self.q}, {self.d})"

    def __str__(self):
        return format_value(self)


def is_exact(x) -> bool:
    """True for values on the exact backend."""
    return isinstance(x, (int, Fraction, Surd)) and not isinstance(x, bool)


def is_rational(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def as_exact(x):
    """Normalize ints to Fraction; leave other values alone."""
    if isinstance(x, bool):
        raise TypeError("booleans are not scales")
    if isinstance(x, int):
        return Fraction(x)
    return x


_FRACTION_RE = re.compile(r"^\s*([+-]?\d+)\s*/\s*([+-]?\d+)\s*$")


def parse_scale(value, allow_float: bool = True):
    """Parse a scalar from JSON/CLI text or a Python number.

    ``"p/q"`` strings and decimal strings become exact fractions, as do
    Python ints. Floats are accepted only with ``allow_float``.
    """
    if isinstance(value, bool):
        raise DomainError("booleans are not scales")
    if isinstance(value, (Fraction, Surd)):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not allow_float:
            raise DomainError(
                f"float scale {value!r} given where exact input is required; "
                "pass it as a 'p/q' or decimal string")
        return value
    if isinstance(value, str):
        m = _FRACTION_RE.match(value)
        if m:
            den = int(m.group(2))
            if den == 0:
                raise DomainError(f"zero denominator in {value!r}")
            return Fraction(int(m.group(1)), den)
        try:
            return Fraction(Decimal(value.strip()))
        except (InvalidOperation, ValueError):
            raise DomainError(f"cannot parse scale {value!r}") from None
    if isinstance(value, numbers.Real):
        return float(value)
    raise DomainError(f"cannot parse scale {value!r}")


def format_value(x, digits: int = 15) -> str:
    """Serialize a scalar: exact values as fraction strings, floats with
    ``digits`` significant digits."""
    if isinstance(x, Surd):
        parts = []
        if x.p != 0:
            parts.append(format_value(x.p))
        q = x.q
        sign = "-" if q < 0 else ("+" if parts else "")
        q = abs(q)
        coeff = "" if q == 1 else f"{format_value(q)}*"
        parts.append(f"{sign}{coeff}sqrt({x.d})")
        return "".join(parts)
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        x = Fraction(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    if x == math.inf:
        return "inf"
    return format(float(x), f".{digits}g")


def to_float(x) -> float:
    return float(x)


def close(a, b, rtol: float = DEFAULT_RTOL) -> bool:
    """Equality test used for ties: exact on the exact backend, relative
    tolerance otherwise."""
    if is_exact(a) and is_exact(b):
        return a == b
    a = float(a)
    b = float(b)
    if a == b:
        return True
    return abs(a - b) <= rtol * max(abs(a), abs(b))


def ensure_positive(x, what: str = "scale"):
    if type(x) is Fraction and x.numerator > 0:
        return x
    try:
        ok = x > 0
    except TypeError:
        raise DomainError(f"{what} must be a positive real, got {x!r}") from None
    if not ok or (isinstance(x, float) and not math.isfinite(x)):
        raise DomainError(f"{what} must be a positive finite real, got {x!r}")
    return as_exact(x)


def log(x) -> float:
    return math.log(float(x))
