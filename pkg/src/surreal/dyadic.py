"""Exact dyadic rationals ``numerator / 2**exponent``.

Finite-birthday surreals are exactly the dyadic rationals, so this type is the
numeric twin of :class:`surreal.core.SignSequence` and the oracle used to
cross-check every sign-sequence computation.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = ["Dyadic", "as_fraction"]

_LITERAL = re.compile(
    r"^\s*(?P<num>[+-]?\d+)\s*(?:/\s*(?:2\s*\^\s*(?P<exp>\d+)|(?P<den>\d+)))?\s*$"
)


class Dyadic:
    """Immutable dyadic rational stored in lowest terms.

    Invariant: ``exponent == 0`` or ``numerator`` is odd.
    """

    __slots__ = ("numerator", "exponent")

    def __init__(self, numerator: int = 0, exponent: int = 0):
        if type(numerator) is not int:
            numerator = int(numerator)
        if type(exponent) is not int:
            exponent = int(exponent)
        if exponent < 0:
            numerator <<= -exponent
            exponent = 0
        if numerator == 0:
            exponent = 0
        elif exponent:
            shift = min((numerator & -numerator).bit_length() - 1, exponent)
            numerator >>= shift
            exponent -= shift
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "exponent", exponent)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_fraction(cls, value) -> "Dyadic":
        if isinstance(value, Dyadic):
            return value
        q = Fraction(value)
        den = q.denominator
        if den & (den - 1):
            raise ValueError(f"{q} is not a dyadic rational")
        return cls(q.numerator, den.bit_length() - 1)

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        """Parse ``n``, ``n/2^k`` or ``n/d`` with ``d`` a power of two."""
        m = _LITERAL.match(text.replace("−", "-"))
        if not m:
            raise ValueError(f"not a dyadic literal: {text!r}")
        num = int(m["num"])
        if m["exp"] is not None:
            return cls(num, int(m["exp"]))
        if m["den"] is not None:
            den = int(m["den"])
            if den <= 0 or den & (den - 1):
                raise ValueError(f"denominator {den} is not a power of two")
            return cls(num, den.bit_length() - 1)
        return cls(num)

    # -- views ------------------------------------------------------------

    @property
    def denominator(self) -> int:
        return 1 << self.exponent

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def is_integer(self) -> bool:
        return self.exponent == 0

    def floor(self) -> int:
        return self.numerator >> self.exponent

    def __float__(self):
        return self.numerator / (1 << self.exponent)

    def __int__(self):
        # truncation toward zero, like int(float)
        n = abs(self.numerator) >> self.exponent
        return n if self.numerator >= 0 else -n

    def __bool__(self):
        return self.numerator != 0

    def __str__(self):
        if self.exponent == 0:
            return str(self.numerator)
        return f"{self.numerator}/{1 << self.exponent}"

    def __repr__(self):
        return f"Dyadic({self})"

    def __hash__(self):
        if self.exponent == 0:
            return hash(self.numerator)
        return hash(self.to_fraction())

    # -- arithmetic -------------------------------------------------------

    def _align(self, other: "Dyadic"):
        e = max(self.exponent, other.exponent)
        return self.numerator << (e - self.exponent), other.numerator << (e - other.exponent), e

    def __add__(self, other):
        if type(other) is not Dyadic:
            other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, e = self._align(other)
        return Dyadic(a + b, e)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not Dyadic:
            other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, e = self._align(other)
        return Dyadic(a - b, e)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Dyadic(self.numerator * other.numerator, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __neg__(self):
        return Dyadic(-self.numerator, self.exponent)

    def __pos__(self):
        return self

    def __abs__(self):
        return self if self.numerator >= 0 else -self

    def __pow__(self, m: int):
        if not isinstance(m, int) or m < 0:
            return NotImplemented
        return Dyadic(self.numerator**m, self.exponent * m)

    def half(self, k: int = 1) -> "Dyadic":
        """Return ``self / 2**k``."""
        return Dyadic(self.numerator, self.exponent + k)

    # -- comparison -------------------------------------------------------

    def _cmp(self, other) -> int:
        if isinstance(other, Dyadic):
            a, b, _ = self._align(other)
        elif isinstance(other, int):
            a, b = self.numerator, other << self.exponent
        elif isinstance(other, Rational):
            a = self.numerator * other.denominator
            b = other.numerator << self.exponent
        else:
            raise TypeError
        return (a > b) - (a < b)

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __lt__(self, other):
        try:
            return self._cmp(other) < 0
        except TypeError:
            return NotImplemented

    def __le__(self, other):
        try:
            return self._cmp(other) <= 0
        except TypeError:
            return NotImplemented

    def __gt__(self, other):
        try:
            return self._cmp(other) > 0
        except TypeError:
            return NotImplemented

    def __ge__(self, other):
        try:
            return self._cmp(other) >= 0
        except TypeError:
            return NotImplemented

    def __reduce__(self):
        return (Dyadic, (self.numerator, self.exponent))


def _coerce(value):
    if isinstance(value, Dyadic):
        return value
    if isinstance(value, int):
        return Dyadic(value)
    if isinstance(value, Fraction):
        try:
            return Dyadic.from_fraction(value)
        except ValueError:
            return NotImplemented
    return NotImplemented


def as_fraction(value) -> Fraction:
    """Exact rational view of a Dyadic, Fraction, int or sign sequence."""
    if isinstance(value, Dyadic):
        return value.to_fraction()
    if hasattr(value, "value") and isinstance(value.value, Dyadic):
        return value.value.to_fraction()
    return Fraction(value)
