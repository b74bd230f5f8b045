"""Barcodes: finite graded multisets of intervals, and the bar-by-bar operations.

Degree convention: a :class:`Bar` with ``degree = d`` stands for the shifted
interval sheaf ``k_I[d]``, i.e. a complex whose only cohomology sits in
cohomological degree ``-d``.  A cohomology class of degree ``h`` of a filtered
space is therefore recorded with ``degree = -h`` (the top class of a closed
``n``-manifold carries ``degree = -n``).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from decimal import Decimal
import json
from typing import Iterable, Iterator

from .scalar import NEG_INF, POS_INF, ZERO, Scalar, get_scale, S


@dataclass(frozen=True, order=False)
class Interval:
    lo: Scalar
    hi: Scalar
    lo_open: bool = False
    hi_open: bool = True

    def __post_init__(self):
        object.__setattr__(self, "lo", S(self.lo))
        object.__setattr__(self, "hi", S(self.hi))
        if not self.lo < self.hi:
            raise ValueError(f"empty or degenerate interval {self.lo}..{self.hi}")
        if self.lo == NEG_INF:
            object.__setattr__(self, "lo_open", True)
        if self.hi == POS_INF:
            object.__setattr__(self, "hi_open", True)

    @classmethod
    def maybe(cls, lo, hi, lo_open=False, hi_open=True):
        """Interval or ``None`` when ``lo >= hi`` (the empty sheaf)."""
        lo, hi = S(lo), S(hi)
        if not lo < hi:
            return None
        return cls(lo, hi, lo_open, hi_open)

    @property
    def infinite(self) -> bool:
        return self.hi == POS_INF

    @property
    def half_open(self) -> bool:
        """True for the shapes ``[a,b)`` and ``[a,+inf)`` with ``a`` finite."""
        return self.lo.finite and not self.lo_open and self.hi_open

    @property
    def length(self) -> Scalar:
        return self.hi - self.lo

    def contains(self, t: Scalar) -> bool:
        t = S(t)
        left = self.lo < t or (self.lo == t and not self.lo_open)
        right = t < self.hi or (t == self.hi and not self.hi_open)
        return left and right

    def translate(self, c) -> "Interval":
        c = S(c)
        return Interval(self.lo + c, self.hi + c, self.lo_open, self.hi_open)

    def sort_key(self):
        return (self.lo._key(), self.lo_open, self.hi._key(), self.hi_open)

    def __str__(self):
        left = "(" if self.lo_open else "["
        right = ")" if self.hi_open else "]"
        return f"{left}{self.lo}, {self.hi}{right}"


@dataclass(frozen=True)
class Bar:
    interval: Interval
    degree: int = 0
    multiplicity: int = 1

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be >= 1")

    def sort_key(self):
        return (self.degree,) + self.interval.sort_key()

    def __str__(self):
        s = f"{self.interval} deg {self.degree}"
        return s if self.multiplicity == 1 else f"{s} x{self.multiplicity}"


def bar(lo, hi, degree: int = 0, lo_open: bool = False, hi_open: bool = True,
        mult: int = 1) -> Bar:
    return Bar(Interval(lo, hi, lo_open, hi_open), degree, mult)


class Barcode:
    """Canonically sorted multiset of bars; equal (interval, degree) pairs are merged."""

    __slots__ = ("bars",)

    def __init__(self, bars: Iterable[Bar] = ()):
        counts: Counter = Counter()
        for b in bars:
            counts[(b.interval, b.degree)] += b.multiplicity
        merged = [Bar(iv, deg, m) for (iv, deg), m in counts.items()]
        merged.sort(key=Bar.sort_key)
        object.__setattr__(self, "bars", tuple(merged))

    def __setattr__(self, name, value):
        raise AttributeError("Barcode is immutable")

    def __iter__(self) -> Iterator[Bar]:
        return iter(self.bars)

    def __len__(self):
        return len(self.bars)

    def __eq__(self, other):
        return isinstance(other, Barcode) and self.bars == other.bars

    def __hash__(self):
        return hash(self.bars)

    def __add__(self, other: "Barcode") -> "Barcode":
        """Direct sum."""
        return Barcode(self.bars + other.bars)

    def __repr__(self):
        if not self.bars:
            return "Barcode(empty)"
        return "Barcode{" + ", ".join(str(b) for b in self.bars) + "}"

    @property
    def total_multiplicity(self) -> int:
        return sum(b.multiplicity for b in self.bars)

    def degrees(self) -> list[int]:
        return sorted({b.degree for b in self.bars})

    def in_degree(self, d: int) -> "Barcode":
        return Barcode(b for b in self.bars if b.degree == d)

    def expanded(self) -> list[Bar]:
        """One unit-multiplicity bar per copy."""
        return [Bar(b.interval, b.degree) for b in self.bars for _ in range(b.multiplicity)]


EMPTY = Barcode()


# ---------------------------------------------------------------------------
# operations

def shift(B: Barcode, k: int) -> Barcode:
    return Barcode(Bar(b.interval, b.degree + k, b.multiplicity) for b in B)


def translate(B: Barcode, c) -> Barcode:
    c = S(c)
    if not c.finite:
        raise ValueError("translation amount must be finite")
    return Barcode(Bar(b.interval.translate(c), b.degree, b.multiplicity) for b in B)


def tensor_ray(B: Barcode) -> Barcode:
    """Tensor with the constant sheaf on ``[0, +inf)``: intersect every support with the ray."""
    out = []
    for b in B:
        iv = b.interval
        if iv.hi < ZERO or (iv.hi == ZERO and iv.hi_open):
            continue
        if iv.hi == ZERO:
            raise ValueError(f"{iv} meets the ray in a single point")
        if iv.lo < ZERO:
            iv = Interval(ZERO, iv.hi, False, iv.hi_open)
        out.append(Bar(iv, b.degree, b.multiplicity))
    return Barcode(out)


def torsion_threshold(iv: Interval) -> Scalar:
    """Least ``c >= 0`` with ``tau_c(k_I) = 0`` (``+inf`` if there is none).

    ``tau_c`` is the composite ``P(k_I) -> T_c k_I`` with ``P`` the convolution
    with ``k_[0,inf)``, whose stalk at ``t`` is ``RGamma((-inf, t]; k_I)``:

    * ``[a,b)``: ``P(k_I) = k_I`` and the bar dies once ``c`` reaches ``b - a``;
    * ``(a,b]`` and ``(a,inf)``: ``P(k_I) = 0``, so every ``tau_c`` vanishes;
    * ``(a,b)``, ``[a,b]``, and every shape unbounded on either side: never.

    The per-shape table is the one the grid oracle computes from the
    convolution definition.
    """
    if iv.lo.finite and iv.lo_open and (iv.infinite or not iv.hi_open):
        return ZERO
    if iv.half_open and not iv.infinite:
        return iv.length
    return POS_INF


def tau_vanishes(B: Barcode, c) -> bool:
    """Whether the morphism ``tau_c: P(F) -> T_c F`` is zero (it acts bar by bar)."""
    c = S(c)
    if c < ZERO:
        raise ValueError("tau_c is only defined for c >= 0")
    return all(torsion_threshold(b.interval) <= c for b in B)


def boundary_depth(B: Barcode) -> Scalar:
    """``min{c : tau_c = 0}``: the largest per-bar threshold (0 for the empty barcode)."""
    depth = ZERO
    for b in B:
        depth = max(depth, torsion_threshold(b.interval))
    return depth


@dataclass(frozen=True)
class SpectralData:
    c_minus: Scalar
    c_plus: Scalar

    @property
    def gamma(self) -> Scalar:
        return self.c_plus - self.c_minus


class NoFundamentalClass(ValueError):
    pass


def spectral_invariants(B: Barcode) -> SpectralData:
    births = [b.interval.lo for b in B if b.interval.infinite]
    if not births:
        raise NoFundamentalClass(
            "no fundamental classes: sheaf is not locally constant and nonzero near +inf")
    return SpectralData(min(births), max(births))


# ---------------------------------------------------------------------------
# JSON

def _num(s: Scalar) -> str:
    return json.dumps(s.to_decimal_str()) if not s.finite else s.to_decimal_str()


def to_json(B: Barcode) -> str:
    """Canonical serialization (sorted bars, fixed key order, one bar per line)."""
    rows = []
    for b in B:
        iv = b.interval
        rows.append(
            '{"lo": %s, "hi": %s, "lo_open": %s, "hi_open": %s, "degree": %d, "mult": %d}'
            % (_num(iv.lo), _num(iv.hi), json.dumps(iv.lo_open), json.dumps(iv.hi_open),
               b.degree, b.multiplicity))
    body = ",\n    ".join(rows)
    bars = f"[\n    {body}\n  ]" if rows else "[]"
    return f'{{\n  "scale": {get_scale()},\n  "bars": {bars}\n}}\n'


def _parse_endpoint(v, scale: int) -> Scalar:
    if isinstance(v, str):
        if v not in ("inf", "-inf", "+inf"):
            raise ValueError(f"bad endpoint {v!r}")
        return S(v)
    if not isinstance(v, Decimal):
        raise ValueError(f"bad endpoint {v!r}")
    ticks = v * scale
    if ticks != ticks.to_integral_value():
        raise ValueError(f"endpoint {v} is finer than the declared scale {scale}")
    return S(v)


def from_dict(data: dict) -> Barcode:
    scale = int(data.get("scale", get_scale()))
    bars = []
    for i, row in enumerate(data["bars"]):
        try:
            lo = _parse_endpoint(row["lo"], scale)
            hi = _parse_endpoint(row["hi"], scale)
            iv = Interval(lo, hi, bool(row.get("lo_open", False)), bool(row.get("hi_open", True)))
            bars.append(Bar(iv, int(row.get("degree", 0)), int(row.get("mult", 1))))
        except (KeyError, ValueError, TypeError) as exc:
            raise ValueError(f"bars[{i}]: {exc}") from exc
    return Barcode(bars)


def from_json(text: str) -> Barcode:
    data = json.loads(text, parse_float=Decimal, parse_int=Decimal)
    if not isinstance(data, dict) or "bars" not in data:
        raise ValueError("barcode JSON must be an object with a 'bars' list")
    return from_dict(data)
