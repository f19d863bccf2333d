"""Costed spaces, dictionaries of object scales, and the reference cost.

A dictionary is the feasible set ``Y`` of object scales. Four closed
variants are supported:

``Finite``       explicit ``(id, scale)`` items, scalar or vector scales
``Interval``     closed bounded interval ``[lo, hi]`` in ``(0, inf)``
``LogBox``       closed box in log coordinates, ``lo <= log y <= hi``
``LogPolytope``  ``{y : A log y <= c}``, a closed convex log-image

The JSON form of each variant (see :func:`dictionary_from_json`) is the
input format of the command line tool.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from ._numeric import DomainError, ensure_positive, format_value, parse_scale
from .penalty import CANONICAL, PenaltyParam, evaluate

__all__ = [
    "Finite",
    "Interval",
    "LogBox",
    "LogPolytope",
    "Dictionary",
    "CostedSpace",
    "ref_cost",
    "ref_cost_vec",
    "intrinsic_cost",
    "dictionary_from_json",
    "dictionary_to_json",
    "load_dictionary",
]


def _scale_or_vector(value):
    if isinstance(value, (list, tuple, np.ndarray)):
        if len(value) == 0:
            raise DomainError("scale vectors need at least one coordinate")
        return tuple(ensure_positive(v) for v in value)
    return ensure_positive(value)


@dataclass(frozen=True)
class Finite:
    """Finite dictionary of ``(id, scale)`` items.

    Scales are either all scalars (1-D) or all tuples of one common length
    (d-D). Repeated scales are allowed; objects sharing a scale form a fiber
    and always tie.
    """

    items: tuple

    def __post_init__(self):
        items = tuple((str(i), _scale_or_vector(s)) for i, s in self.items)
        if not items:
            raise DomainError("finite dictionary must be nonempty")
        ids = [i for i, _ in items]
        if len(set(ids)) != len(ids):
            raise DomainError("finite dictionary ids must be unique")
        dims = {len(s) if isinstance(s, tuple) else 0 for _, s in items}
        if len(dims) != 1:
            raise DomainError("finite dictionary mixes scalar and vector scales "
                              "or vectors of different lengths")
        object.__setattr__(self, "items", items)

    @classmethod
    def from_scales(cls, scales, prefix: str = "o") -> "Finite":
        """Label scales ``o1, o2, ...`` in the given order."""
        return cls(tuple((f"{prefix}{k}", s) for k, s in enumerate(scales, 1)))

    @property
    def dim(self) -> int:
        s = self.items[0][1]
        return len(s) if isinstance(s, tuple) else 1

    @property
    def is_vector(self) -> bool:
        return isinstance(self.items[0][1], tuple)

    @property
    def ids(self) -> tuple:
        return tuple(i for i, _ in self.items)

    @property
    def scales(self) -> tuple:
        return tuple(s for _, s in self.items)

    def __len__(self):
        return len(self.items)

    def scale_of(self, obj_id: str):
        for i, s in self.items:
            if i == obj_id:
                return s
        raise KeyError(f"unknown object id {obj_id!r}")

    def fibers(self) -> dict:
        """Map each distinct scale to the ids carrying it (insertion order)."""
        out: dict = {}
        for i, s in self.items:
            out.setdefault(s, []).append(i)
        return out


@dataclass(frozen=True)
class Interval:
    """Closed, bounded interval of scales ``[lo, hi]`` with ``0 < lo <= hi``."""

    lo: object
    hi: object

    def __post_init__(self):
        lo = ensure_positive(self.lo, "interval lo")
        hi = ensure_positive(self.hi, "interval hi")
        if lo > hi:
            raise DomainError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    dim = 1

    def __contains__(self, y) -> bool:
        return self.lo <= y <= self.hi

    def clamp(self, y):
        if y < self.lo:
            return self.lo
        if y > self.hi:
            return self.hi
        return y


def _real_vector(values, what):
    arr = np.asarray([float(v) for v in values], dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise DomainError(f"{what} must be a nonempty vector")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{what} must be finite")
    return tuple(arr.tolist())


@dataclass(frozen=True)
class LogBox:
    """Closed box ``lo <= u <= hi`` in log coordinates ``u = log y``."""

    lo: tuple
    hi: tuple

    def __post_init__(self):
        lo = _real_vector(self.lo, "logbox lo")
        hi = _real_vector(self.hi, "logbox hi")
        if len(lo) != len(hi):
            raise DomainError("logbox bounds differ in length")
        if any(a > b for a, b in zip(lo, hi)):
            raise DomainError("logbox requires lo <= hi componentwise")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dim(self) -> int:
        return len(self.lo)

    def clamp(self, u):
        return np.clip(np.asarray(u, dtype=float), self.lo, self.hi)

    def contains(self, u, tol: float = 0.0) -> bool:
        u = np.asarray(u, dtype=float)
        return bool(np.all(u >= np.asarray(self.lo) - tol)
                    and np.all(u <= np.asarray(self.hi) + tol))


@dataclass(frozen=True)
class LogPolytope:
    """Closed convex set ``{u : normals @ u <= offsets}`` in log coordinates.

    Nonemptiness is verified at construction with a linear feasibility
    problem.
    """

    normals: tuple
    offsets: tuple
    feasible_point: tuple = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.normals, dtype=float))
        c = np.asarray(self.offsets, dtype=float).reshape(-1)
        if A.size == 0 or A.shape[0] != c.shape[0]:
            raise DomainError("logpolytope needs one offset per normal")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(c))):
            raise DomainError("logpolytope data must be finite")
        if np.any(np.linalg.norm(A, axis=1) == 0):
            raise DomainError("logpolytope normals must be nonzero")
        object.__setattr__(self, "normals", tuple(map(tuple, A.tolist())))
        object.__setattr__(self, "offsets", tuple(c.tolist()))
        object.__setattr__(self, "feasible_point", tuple(_feasible_point(A, c)))

    @classmethod
    def from_halfspaces(cls, halfspaces) -> "LogPolytope":
        """Build from ``[(normal, offset), ...]``."""
        halfspaces = list(halfspaces)
        return cls(tuple(n for n, _ in halfspaces), tuple(c for _, c in halfspaces))

    @property
    def A(self) -> np.ndarray:
        return np.asarray(self.normals, dtype=float)

    @property
    def c(self) -> np.ndarray:
        return np.asarray(self.offsets, dtype=float)

    @property
    def dim(self) -> int:
        return len(self.normals[0])

    def violation(self, u) -> float:
        """Largest constraint violation ``max(A u - c)^+``."""
        return float(max(0.0, np.max(self.A @ np.asarray(u, dtype=float) - self.c)))

    def contains(self, u, tol: float = 1e-12) -> bool:
        return self.violation(u) <= tol


def _feasible_point(A, c):
    from scipy.optimize import linprog

    d = A.shape[1]
    res = linprog(np.zeros(d), A_ub=A, b_ub=c, bounds=[(None, None)] * d,
                  method="highs")
    if res.status != 0:
        raise DomainError("logpolytope is empty (infeasible halfspaces)")
    return res.x


Dictionary = Union[Finite, Interval, LogBox, LogPolytope]


@dataclass(frozen=True)
class CostedSpace:
    """Named dictionary together with the penalty it is measured by."""

    name: str
    dictionary: Dictionary
    penalty: PenaltyParam = CANONICAL


def ref_cost(s, o, p: PenaltyParam | None = None):
    """Reference cost ``J(s/o)``; symmetric in its two scales."""
    s = ensure_positive(s, "configuration scale")
    o = ensure_positive(o, "object scale")
    return evaluate(s / o, p)


def ref_cost_vec(s, o, p: PenaltyParam | None = None):
    """Separable reference cost ``sum_i J(s_i / o_i)``."""
    s = tuple(s)
    o = tuple(o)
    if len(s) != len(o):
        raise DomainError(f"dimension mismatch: {len(s)} vs {len(o)}")
    total = 0
    for si, oi in zip(s, o):
        total = total + ref_cost(si, oi, p)
    return total


def intrinsic_cost(c, p: PenaltyParam | None = None):
    """Intrinsic cost ``J(c)`` of a scale, summed over coordinates for vectors."""
    if isinstance(c, (tuple, list, np.ndarray)):
        total = 0
        for ci in c:
            total = total + evaluate(ci, p)
        return total
    return evaluate(c, p)


# -- JSON ---------------------------------------------------------------------

def _parse_item_scale(value, allow_float):
    if isinstance(value, list):
        return tuple(parse_scale(v, allow_float) for v in value)
    return parse_scale(value, allow_float)


def dictionary_from_json(obj, allow_float: bool = False) -> Dictionary:
    """Build a dictionary from its JSON object form.

    Scales are ``"p/q"`` or decimal strings or integers; JSON floats are
    rejected unless ``allow_float`` is set. Log coordinates (``logbox``,
    ``logpolytope``) are plain reals.
    """
    if not isinstance(obj, dict) or "variant" not in obj:
        raise DomainError("dictionary JSON must be an object with a 'variant'")
    variant = str(obj["variant"]).lower()
    if variant == "finite":
        if "items" in obj:
            items = []
            for k, it in enumerate(obj["items"], 1):
                if isinstance(it, dict):
                    items.append((it.get("id", f"o{k}"),
                                  _parse_item_scale(it["scale"], allow_float)))
                else:
                    items.append((f"o{k}", _parse_item_scale(it, allow_float)))
            return Finite(tuple(items))
        if "scales" in obj:
            return Finite.from_scales(
                [_parse_item_scale(v, allow_float) for v in obj["scales"]])
        raise DomainError("finite dictionary needs 'items' or 'scales'")
    if variant == "interval":
        if obj.get("hi") in (None, "inf", "Infinity"):
            raise DomainError("unbounded intervals are not supported")
        return Interval(parse_scale(obj["lo"], allow_float),
                        parse_scale(obj["hi"], allow_float))
    if variant == "logbox":
        return LogBox(tuple(float(parse_scale(v)) for v in obj["lo"]),
                      tuple(float(parse_scale(v)) for v in obj["hi"]))
    if variant == "logpolytope":
        hs = obj["halfspaces"]
        return LogPolytope(
            tuple(tuple(float(parse_scale(v)) for v in h["normal"]) for h in hs),
            tuple(float(parse_scale(h["offset"])) for h in hs))
    raise DomainError(f"unknown dictionary variant {obj['variant']!r}")


def dictionary_to_json(d: Dictionary) -> dict:
    """Inverse of :func:`dictionary_from_json` (exact scales as strings)."""
    if isinstance(d, Finite):
        def enc(s):
            if isinstance(s, tuple):
                return [_enc_scalar(v) for v in s]
            return _enc_scalar(s)
        return {"variant": "finite",
                "items": [{"id": i, "scale": enc(s)} for i, s in d.items]}
    if isinstance(d, Interval):
        return {"variant": "interval", "lo": _enc_scalar(d.lo), "hi": _enc_scalar(d.hi)}
    if isinstance(d, LogBox):
        return {"variant": "logbox", "lo": list(d.lo), "hi": list(d.hi)}
    if isinstance(d, LogPolytope):
        return {"variant": "logpolytope",
                "halfspaces": [{"normal": list(n), "offset": c}
                               for n, c in zip(d.normals, d.offsets)]}
    raise TypeError(f"not a dictionary: {d!r}")


def _enc_scalar(x):
    if isinstance(x, float):
        return x
    return format_value(x)


def load_dictionary(path, allow_float: bool = False) -> Dictionary:
    with open(path) as fh:
        return dictionary_from_json(json.load(fh), allow_float=allow_float)
