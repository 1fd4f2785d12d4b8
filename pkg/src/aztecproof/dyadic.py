"""Exact dyadic rationals: ``mantissa / 2**exp2``."""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering


def _split_twos(value: int) -> tuple[int, int]:
    """Return ``(odd, e)`` with ``value == odd * 2**e``; zero maps to (0, 0)."""
    if value == 0:
        return 0, 0
    e = (value & -value).bit_length() - 1
    return value >> e, e


@total_ordering
class DyadicWeight:
    """Normalized dyadic rational.

    The mantissa is odd (or zero, in which case ``exp2 == 0``).  Instances are
    immutable and hashable, so they can key dictionaries and sit in frozensets.
    """

    __slots__ = ("_mantissa", "_exp2")

    def __init__(self, mantissa: int = 0, exp2: int = 0):
        mantissa = int(mantissa)
        exp2 = int(exp2)
        odd, twos = _split_twos(mantissa)
        if odd == 0:
            exp2 = 0
        else:
            exp2 -= twos
            if exp2 < 0:
                odd <<= -exp2
                exp2 = 0
        object.__setattr__(self, "_mantissa", odd)
        object.__setattr__(self, "_exp2", exp2)

    def __setattr__(self, name, value):
        raise AttributeError("DyadicWeight is immutable")

    @property
    def mantissa(self) -> int:
        return self._mantissa

    @property
    def exp2(self) -> int:
        return self._exp2

    @classmethod
    def coerce(cls, value) -> "DyadicWeight":
        if isinstance(value, DyadicWeight):
            return value
        if isinstance(value, bool):
            raise TypeError("refusing to coerce bool to DyadicWeight")
        if isinstance(value, int):
            return cls(value, 0)
        if isinstance(value, Fraction):
            return cls.from_fraction(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to DyadicWeight")

    @classmethod
    def from_fraction(cls, value: Fraction) -> "DyadicWeight":
        den = value.denominator
        if den & (den - 1):
            raise ValueError(f"{value} is not dyadic")
        return cls(value.numerator, den.bit_length() - 1)

    @classmethod
    def pow2(cls, e: int) -> "DyadicWeight":
        """Exact ``2**e`` for any integer ``e``."""
        if e >= 0:
            return cls(1 << e, 0)
        return cls(1, -e)

    def to_fraction(self) -> Fraction:
        return Fraction(self._mantissa, 1 << self._exp2)

    def is_integer(self) -> bool:
        return self._exp2 == 0

    def __int__(self) -> int:
        if self._exp2:
            raise ValueError(f"{self} is not an integer")
        return self._mantissa

    def half(self) -> "DyadicWeight":
        return DyadicWeight(self._mantissa, self._exp2 + 1)

    def scale2(self, e: int) -> "DyadicWeight":
        """Multiply by ``2**e`` (``e`` may be negative)."""
        if e >= 0:
            return DyadicWeight(self._mantissa << e, self._exp2)
        return DyadicWeight(self._mantissa, self._exp2 - e)

    def __add__(self, other):
        try:
            other = DyadicWeight.coerce(other)
        except TypeError:
            return NotImplemented
        e = max(self._exp2, other._exp2)
        m = (self._mantissa << (e - self._exp2)) + (other._mantissa << (e - other._exp2))
        return DyadicWeight(m, e)

    __radd__ = __add__

    def __neg__(self):
        return DyadicWeight(-self._mantissa, self._exp2)

    def __sub__(self, other):
        try:
            other = DyadicWeight.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = DyadicWeight.coerce(other)
        except TypeError:
            return NotImplemented
        return DyadicWeight(self._mantissa * other._mantissa, self._exp2 + other._exp2)

    __rmul__ = __mul__

    def __abs__(self):
        return DyadicWeight(abs(self._mantissa), self._exp2)

    def __bool__(self):
        return self._mantissa != 0

    def __eq__(self, other):
        if isinstance(other, DyadicWeight):
            return self._mantissa == other._mantissa and self._exp2 == other._exp2
        if isinstance(other, int) and not isinstance(other, bool):
            return self._exp2 == 0 and self._mantissa == other
        if isinstance(other, Fraction):
            return self.to_fraction() == other
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, (DyadicWeight, int, Fraction)):
            return self.to_fraction() < DyadicWeight.coerce(other).to_fraction()
        return NotImplemented

    def __hash__(self):
        if self._exp2 == 0:
            return hash(self._mantissa)
        return hash(self.to_fraction())

    def __repr__(self):
        return f"DyadicWeight({self._mantissa}, {self._exp2})"

    def __str__(self):
        if self._exp2 == 0:
            return str(self._mantissa)
        return f"{self._mantissa}/2^{self._exp2}"


ONE = DyadicWeight(1)
ZERO = DyadicWeight(0)
HALF = DyadicWeight(1, 1)
