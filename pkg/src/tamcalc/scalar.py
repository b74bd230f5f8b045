"""Fixed-point exact scalars with signed infinities.

A finite scalar is an integer numerator over a global power-of-ten scale
(``10**9`` unless changed with :func:`set_scale`).  Arithmetic between finite
scalars never rounds; floats are only accepted at the boundary
(:meth:`Scalar.from_float`) where they are rounded to the nearest tick.
"""
from __future__ import annotations

from decimal import Decimal
from fractions import Fraction
from functools import total_ordering
import math

DEFAULT_SCALE = 10**9

_scale = DEFAULT_SCALE


def get_scale() -> int:
    return _scale


def set_scale(scale: int) -> None:
    """Change the global tick size.  Existing scalars are not rescaled."""
    global _scale
    if scale <= 0 or 10 ** (len(str(scale)) - 1) != scale:
        raise ValueError(f"scale must be a positive power of ten, got {scale}")
    _scale = scale


@total_ordering
class Scalar:
    __slots__ = ("num", "inf")

    def __init__(self, num: int = 0, inf: int = 0):
        # inf is -1, 0 or +1; num is meaningless when inf != 0
        if inf not in (-1, 0, 1):
            raise ValueError("inf flag must be -1, 0 or 1")
        object.__setattr__(self, "inf", inf)
        object.__setattr__(self, "num", 0 if inf else int(num))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # construction -----------------------------------------------------
    @classmethod
    def of(cls, value) -> "Scalar":
        """Exact conversion from int, Fraction, Decimal, str or Scalar.

        Floats go through :meth:`from_float` (rounded).  Values that are not a
        whole number of ticks raise ``ValueError``.
        """
        if isinstance(value, Scalar):
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not a scalar")
        if isinstance(value, int):
            return cls(value * _scale)
        if isinstance(value, float):
            return cls.from_float(value)
        if isinstance(value, str):
            s = value.strip().lower()
            if s in ("inf", "+inf", "infinity"):
                return POS_INF
            if s in ("-inf", "-infinity"):
                return NEG_INF
            value = Decimal(s)
        if isinstance(value, Decimal):
            if value.is_infinite():
                return POS_INF if value > 0 else NEG_INF
            value = Fraction(value)
        if isinstance(value, Fraction):
            scaled = value * _scale
            if scaled.denominator != 1:
                raise ValueError(f"{value} is not representable at scale {_scale}")
            return cls(scaled.numerator)
        raise TypeError(f"cannot convert {type(value).__name__} to Scalar")

    @classmethod
    def from_float(cls, x: float) -> "Scalar":
        if math.isinf(x):
            return POS_INF if x > 0 else NEG_INF
        if math.isnan(x):
            raise ValueError("NaN is not a scalar")
        return cls(round(Fraction(x) * _scale))

    # predicates -------------------------------------------------------
    @property
    def finite(self) -> bool:
        return self.inf == 0

    def _key(self):
        return (self.inf, self.num)

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.of(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar.of(other)
        return self._key() < other._key()

    def __hash__(self):
        return hash(self._key())

    # arithmetic -------------------------------------------------------
    def __neg__(self):
        return Scalar(-self.num, -self.inf)

    def __add__(self, other):
        other = Scalar.of(other)
        if self.inf and other.inf and self.inf != other.inf:
            raise ArithmeticError("inf - inf is undefined")
        if self.inf or other.inf:
            return POS_INF if (self.inf or other.inf) > 0 else NEG_INF
        return Scalar(self.num + other.num)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-Scalar.of(other))

    def __rsub__(self, other):
        return Scalar.of(other) - self

    def __mul__(self, k):
        if not isinstance(k, int) or isinstance(k, bool):
            return NotImplemented
        if self.inf:
            if k == 0:
                raise ArithmeticError("0 * inf is undefined")
            return POS_INF if self.inf * k > 0 else NEG_INF
        return Scalar(self.num * k)

    __rmul__ = __mul__

    def __abs__(self):
        return -self if self < ZERO else self

    # export -----------------------------------------------------------
    def to_fraction(self) -> Fraction:
        if self.inf:
            raise OverflowError("infinite scalar has no fraction value")
        return Fraction(self.num, _scale)

    def __float__(self):
        if self.inf:
            return math.inf * self.inf
        return self.num / _scale

    def to_decimal_str(self) -> str:
        """Shortest exact decimal spelling, e.g. ``-0.5`` or ``3``."""
        if self.inf:
            return "inf" if self.inf > 0 else "-inf"
        sign = "-" if self.num < 0 else ""
        q, r = divmod(abs(self.num), _scale)
        if r == 0:
            return f"{sign}{q}"
        digits = len(str(_scale)) - 1
        frac = str(r).rjust(digits, "0").rstrip("0")
        return f"{sign}{q}.{frac}"

    def __repr__(self):
        return f"Scalar({self.to_decimal_str()})"

    __str__ = to_decimal_str


POS_INF = Scalar(inf=1)
NEG_INF = Scalar(inf=-1)
ZERO = Scalar(0)


def S(value) -> Scalar:
    """Shorthand for :meth:`Scalar.of`."""
    return Scalar.of(value)
