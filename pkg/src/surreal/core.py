"""Finite-birthday surreal numbers as sign sequences.

A surreal number of finite birthday is a finite string over ``{+, -}``; the
empty string is 0.  Everything here is pure and every value is immutable.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from enum import Enum, IntEnum
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Tuple, Union

from .dyadic import Dyadic
from .errors import InvalidCut, NotAnOption

__all__ = [
    "Sign",
    "Ordering",
    "SignSequence",
    "Cut",
    "ExtendedBound",
    "NEG_INF",
    "POS_INF",
    "ZERO",
    "ONE",
    "compare",
    "is_simpler",
    "is_simpler_or_equal",
    "birthday",
    "canonical_options",
    "simplest_in_cut",
    "simplest_between",
    "inverse_cofinality_witness",
    "concat",
    "negate_signs",
    "to_dyadic",
    "from_dyadic",
    "is_perp",
    "parse_surreal",
    "surreal",
    "all_sign_sequences",
]

_SIGNS_RE = re.compile(r"[+-]*")
# '-' < end-of-sequence < '+' at the first differing index
_KEY_TABLE = str.maketrans("-+", "02")


class Sign(Enum):
    PLUS = "+"
    MINUS = "-"

    def __str__(self):
        return self.value


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class SignSequence:
    """A surreal number of finite birthday, stored as its sign string."""

    __slots__ = ("signs", "_value", "_key")

    def __init__(self, signs: Union[str, Iterable[Sign], "SignSequence"] = ""):
        if isinstance(signs, SignSequence):
            signs = signs.signs
        elif not isinstance(signs, str):
            signs = "".join(s.value if isinstance(s, Sign) else str(s) for s in signs)
        signs = signs.replace("−", "-")
        if not _SIGNS_RE.fullmatch(signs):
            raise ValueError(f"not a sign string: {signs!r}")
        object.__setattr__(self, "signs", signs)
        object.__setattr__(self, "_value", None)
        object.__setattr__(self, "_key", None)

    @classmethod
    def _raw(cls, signs: str, value: Optional[Dyadic] = None) -> "SignSequence":
        obj = object.__new__(cls)
        object.__setattr__(obj, "signs", signs)
        object.__setattr__(obj, "_value", value)
        object.__setattr__(obj, "_key", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("SignSequence is immutable")

    def __reduce__(self):
        return (SignSequence, (self.signs,))

    @property
    def value(self) -> Dyadic:
        """The dyadic rational this sign sequence denotes (cached)."""
        v = self._value
        if v is None:
            v = to_dyadic(self)
            object.__setattr__(self, "_value", v)
        return v

    @property
    def sort_key(self) -> str:
        k = self._key
        if k is None:
            k = self.signs.translate(_KEY_TABLE) + "1"
            object.__setattr__(self, "_key", k)
        return k

    @property
    def birthday(self) -> int:
        return len(self.signs)

    def __len__(self):
        return len(self.signs)

    def __iter__(self) -> Iterator[Sign]:
        return (Sign(c) for c in self.signs)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return SignSequence._raw(self.signs[index])
        return Sign(self.signs[index])

    def prefix(self, n: int) -> "SignSequence":
        return SignSequence._raw(self.signs[:n])

    def __eq__(self, other):
        if isinstance(other, SignSequence):
            return self.signs == other.signs
        return NotImplemented

    def __hash__(self):
        return hash(self.signs)

    def __lt__(self, other):
        if isinstance(other, SignSequence):
            return self.sort_key < other.sort_key
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, SignSequence):
            return self.sort_key <= other.sort_key
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, SignSequence):
            return self.sort_key > other.sort_key
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, SignSequence):
            return self.sort_key >= other.sort_key
        return NotImplemented

    def __neg__(self):
        return negate_signs(self)

    def __str__(self):
        return self.signs

    def __repr__(self):
        return f"SignSequence({self.signs!r})"


ZERO = SignSequence._raw("", Dyadic(0))
ONE = SignSequence._raw("+", Dyadic(1))


def surreal(value) -> SignSequence:
    """Coerce a SignSequence, Dyadic, int, dyadic Fraction or literal string."""
    if isinstance(value, SignSequence):
        return value
    if isinstance(value, Dyadic):
        return from_dyadic(value)
    if isinstance(value, (int, Fraction)):
        return from_dyadic(Dyadic.from_fraction(value))
    if isinstance(value, str):
        return parse_surreal(value)
    raise TypeError(f"cannot interpret {value!r} as a surreal number")


def parse_surreal(text: str) -> SignSequence:
    """Parse a sign string (``[+-]*``) or a dyadic literal (``n``, ``n/2^k``, ``n/d``)."""
    t = text.strip().replace("−", "-")
    if _SIGNS_RE.fullmatch(t):
        return SignSequence._raw(t)
    return from_dyadic(Dyadic.parse(t))


# -- order and simplicity -------------------------------------------------


def compare(x: SignSequence, y: SignSequence) -> Ordering:
    """Order two sign sequences by the rule at their first differing index."""
    xs, ys = x.signs, y.signs
    n = min(len(xs), len(ys))
    gamma = next((i for i in range(n) if xs[i] != ys[i]), n)
    a = xs[gamma] if gamma < len(xs) else None
    b = ys[gamma] if gamma < len(ys) else None
    if a is None and b is None:
        return Ordering.EQUAL
    if (a is None and b == "+") or (a == "-" and b == "+") or (a == "-" and b is None):
        return Ordering.LESS
    return Ordering.GREATER


def is_simpler(x: SignSequence, y: SignSequence) -> bool:
    """True iff ``x`` is a strict prefix of ``y``."""
    return len(x.signs) < len(y.signs) and y.signs.startswith(x.signs)


def is_simpler_or_equal(x: SignSequence, y: SignSequence) -> bool:
    return y.signs.startswith(x.signs)


def is_perp(x: SignSequence, y: SignSequence) -> bool:
    """True iff neither sequence is a prefix of the other."""
    return not (x.signs.startswith(y.signs) or y.signs.startswith(x.signs))


def birthday(x: SignSequence) -> int:
    return len(x.signs)


def canonical_options(x: SignSequence) -> Tuple[Tuple[SignSequence, ...], Tuple[SignSequence, ...]]:
    """Strict prefixes of ``x`` split into those below and above ``x``.

    A prefix lies below ``x`` exactly when the sign following it is ``+``.
    Both sides are returned in increasing order.
    """
    s = x.signs
    left = tuple(SignSequence._raw(s[:i]) for i, c in enumerate(s) if c == "+")
    right = tuple(SignSequence._raw(s[:i]) for i in range(len(s) - 1, -1, -1) if s[i] == "-")
    return left, right


def concat(x: SignSequence, y: SignSequence) -> SignSequence:
    return SignSequence._raw(x.signs + y.signs)


def negate_signs(x: SignSequence) -> SignSequence:
    v = x._value
    return SignSequence._raw(x.signs.translate(_FLIP), None if v is None else -v)


_FLIP = str.maketrans("+-", "-+")


# -- dyadic bridge --------------------------------------------------------


def to_dyadic(x: SignSequence) -> Dyadic:
    s = x.signs
    if not s:
        return Dyadic(0)
    first = s[0]
    run = len(s) - len(s.lstrip(first))
    n = run if first == "+" else -run
    rest = s[run:]
    m = len(rest)
    num = n << m
    for k, c in enumerate(rest, start=1):
        if c == "+":
            num += 1 << (m - k)
        else:
            num -= 1 << (m - k)
    return Dyadic(num, m)


def _walk(lo, hi, stop_at=None) -> SignSequence:
    """Greedy sign walk from 0.

    Appends ``+`` while the current value is ``<= lo`` and ``-`` while it is
    ``>= hi``; stops once strictly inside ``(lo, hi)`` or equal to ``stop_at``.
    Bounds may be Dyadic, Fraction, int or None (unbounded).
    """
    signs = []
    num, exp = 0, 0
    first = None
    halving = False
    while True:
        v = Dyadic(num, exp)
        if stop_at is not None:
            c = v._cmp(stop_at)
            if c == 0:
                break
            s = "+" if c < 0 else "-"
        elif lo is not None and v._cmp(lo) <= 0:
            s = "+"
        elif hi is not None and v._cmp(hi) >= 0:
            s = "-"
        else:
            break
        if not halving and (first is None or s == first):
            first = s
            num += (1 << exp) if s == "+" else -(1 << exp)
        else:
            if not halving:
                halving = True
            num <<= 1
            exp += 1
            num += 1 if s == "+" else -1
        signs.append(s)
    return SignSequence._raw("".join(signs), Dyadic(num, exp))


def from_dyadic(d) -> SignSequence:
    """The unique sign sequence denoting the dyadic ``d``."""
    d = Dyadic.from_fraction(d) if not isinstance(d, Dyadic) else d
    return _walk(None, None, stop_at=d)


def simplest_between(lo=None, hi=None) -> SignSequence:
    """Simplest surreal strictly between two numeric bounds.

    ``lo``/``hi`` may be any exact rational (a non-dyadic bound such as 2/3
    acts as the supremum of a left set that does not attain it) or None.
    """
    if lo is not None and hi is not None and not lo < hi:
        raise InvalidCut(f"empty cut: {lo} is not below {hi}")
    return _walk(lo, hi)


# -- cuts -----------------------------------------------------------------


def _normalize_side(items: Iterable) -> Tuple[SignSequence, ...]:
    seen = {}
    for item in items:
        x = surreal(item)
        seen.setdefault(x.signs, x)
    return tuple(sorted(seen.values()))


@dataclass(frozen=True)
class Cut:
    """A pair of finite sets of surreals with every left element below every right one.

    Both sides are stored duplicate-free in increasing order.
    """

    left: Tuple[SignSequence, ...] = ()
    right: Tuple[SignSequence, ...] = ()

    def __post_init__(self):
        left = _normalize_side(self.left)
        right = _normalize_side(self.right)
        if left and right and not left[-1] < right[0]:
            raise InvalidCut(f"left element {left[-1]} is not below right element {right[0]}")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @classmethod
    def canonical(cls, x: SignSequence) -> "Cut":
        return cls(*canonical_options(x))

    @property
    def value(self) -> SignSequence:
        return simplest_in_cut(self.left, self.right)

    def __str__(self):
        fmt = lambda side: ", ".join(str(v.value) for v in side)
        return f"<{fmt(self.left)} | {fmt(self.right)}>"


def simplest_in_cut(left: Iterable, right: Iterable) -> SignSequence:
    """The unique simplest surreal strictly between ``left`` and ``right``.

    Computed by walking signs from 0: ``+`` while not above every left element,
    ``-`` while not below every right element.
    """
    left = [surreal(v) for v in left]
    right = [surreal(v) for v in right]
    lo = max(left) if left else None
    hi = min(right) if right else None
    if lo is not None and hi is not None and not lo < hi:
        raise InvalidCut(f"left element {lo} is not below right element {hi}")
    z = ""
    while True:
        zk = SignSequence._raw(z)
        if lo is not None and not lo < zk:
            z += "+"
        elif hi is not None and not zk < hi:
            z += "-"
        else:
            return zk


def inverse_cofinality_witness(x: SignSequence, rep: Cut, z: SignSequence) -> SignSequence:
    """Find the element of ``rep`` that sits between ``z`` and ``x``.

    ``z`` must be a strict prefix of ``x`` and ``rep`` a representation of
    ``x``.  Returns the least left ``y`` with ``z <= y < x`` when ``z < x``,
    otherwise the greatest right ``y`` with ``x < y <= z``.
    """
    if not is_simpler(z, x):
        raise NotAnOption(f"{z.signs!r} is not a strict prefix of {x.signs!r}")
    if rep.value != x:
        raise InvalidCut(f"representation {rep} does not denote {x.signs!r}")
    if z < x:
        found = [y for y in rep.left if z <= y < x]
        if found:
            return found[0]
    else:
        found = [y for y in rep.right if x < y <= z]
        if found:
            return found[-1]
    raise InvalidCut(f"no witness for {z.signs!r} in {rep}")  # unreachable for valid reps


# -- extended bounds ------------------------------------------------------


@dataclass(frozen=True)
class ExtendedBound:
    """An element of the surreals extended by -inf and +inf."""

    kind: int  # -1 for -inf, 0 finite, +1 for +inf
    value: Optional[SignSequence] = None

    def __post_init__(self):
        if self.kind not in (-1, 0, 1):
            raise ValueError("kind must be -1, 0 or 1")
        if (self.kind == 0) != (self.value is not None):
            raise ValueError("finite bounds carry a value, infinite ones do not")

    @classmethod
    def finite(cls, x) -> "ExtendedBound":
        return cls(0, surreal(x))

    @classmethod
    def coerce(cls, x) -> "ExtendedBound":
        if isinstance(x, ExtendedBound):
            return x
        if x is None:
            raise ValueError("use NEG_INF / POS_INF for unbounded ends")
        if isinstance(x, str) and x.strip() in ("-inf", "+inf", "inf", "−inf"):
            return NEG_INF if x.strip() in ("-inf", "−inf") else POS_INF
        return cls.finite(x)

    @property
    def is_finite(self) -> bool:
        return self.kind == 0

    def _key(self):
        return (self.kind, self.value.sort_key if self.value is not None else "")

    def _other_key(self, other):
        if isinstance(other, SignSequence):
            return (0, other.sort_key)
        if isinstance(other, ExtendedBound):
            return other._key()
        return None

    def __lt__(self, other):
        k = self._other_key(other)
        return NotImplemented if k is None else self._key() < k

    def __le__(self, other):
        k = self._other_key(other)
        return NotImplemented if k is None else self._key() <= k

    def __gt__(self, other):
        k = self._other_key(other)
        return NotImplemented if k is None else self._key() > k

    def __ge__(self, other):
        k = self._other_key(other)
        return NotImplemented if k is None else self._key() >= k

    def as_number(self):
        """Dyadic value, or None for an infinite end."""
        return self.value.value if self.value is not None else None

    def __str__(self):
        if self.kind < 0:
            return "-inf"
        if self.kind > 0:
            return "+inf"
        return str(self.value.value)


NEG_INF = ExtendedBound(-1)
POS_INF = ExtendedBound(1)


def all_sign_sequences(max_birthday: int, min_birthday: int = 0) -> Iterator[SignSequence]:
    """Every sign sequence with birthday in the range, by birthday then value."""
    for n in range(min_birthday, max_birthday + 1):
        for t in itertools.product("-+", repeat=n):
            yield SignSequence._raw("".join(t))
