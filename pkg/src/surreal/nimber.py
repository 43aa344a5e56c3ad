"""Finite nimbers: mex arithmetic, fast field operations and small experiments.

Reference addition and multiplication are computed from their mex
recursions into dense tables.  The fast paths (XOR, and the Fermat-power
decomposition for products) are checked against those tables in the tests.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Set, Tuple

import numpy as np

from .core import Ordering
from .errors import CapTooSmall, DivisionByZero, MemoOverflow, NotFound

try:  # pragma: no cover - exercised implicitly
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None

__all__ = [
    "mex",
    "nim_add",
    "nim_mul",
    "nim_add_mex",
    "nim_mul_mex",
    "add_table_mex",
    "mul_table_mex",
    "nim_inverse",
    "nim_pow",
    "fermat_segment",
    "is_closed_field_segment",
    "NimPolynomial",
    "nim_poly_eval",
    "zero_set",
    "compare_nim_poly",
    "simplest_irreducible",
    "NimOption",
    "NimGeneticDefinition",
    "NimGeneticEvaluator",
    "eval_genetic_nim",
    "nim_builtin",
    "successor",
    "nim_closure",
    "is_initial_nim",
]

DEFAULT_TABLE_CAP = 1024


def mex(values: Iterable[int]) -> int:
    """Least natural number not in ``values``."""
    seen = set(values)
    n = 0
    while n in seen:
        n += 1
    return n


def nim_add(a: int, b: int) -> int:
    return a ^ b


# -- reference tables -----------------------------------------------------


def _add_table_py(n: int) -> np.ndarray:
    t = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            t[a, b] = mex([int(t[x, b]) for x in range(a)] + [int(t[a, y]) for y in range(b)])
    return t


def _mul_table_py(n: int) -> np.ndarray:
    t = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(a, n):
            v = mex(int(t[x, b]) ^ int(t[a, y]) ^ int(t[x, y]) for x in range(a) for y in range(b))
            t[a, b] = t[b, a] = v
    return t


if njit is not None:

    @njit(cache=True)
    def _add_table_nb(n):
        t = np.zeros((n, n), dtype=np.int64)
        stamp = np.zeros(2 * n + 2, dtype=np.int64)
        tick = 0
        for a in range(n):
            for b in range(n):
                tick += 1
                for x in range(a):
                    stamp[t[x, b]] = tick
                for y in range(b):
                    stamp[t[a, y]] = tick
                m = 0
                while stamp[m] == tick:
                    m += 1
                t[a, b] = m
        return t

    @njit(cache=True)
    def _mul_table_nb(n, bound):
        # products of numbers below n stay below ``bound`` (a Fermat power)
        t = np.zeros((n, n), dtype=np.int64)
        stamp = np.zeros(bound + 1, dtype=np.int64)
        tick = 0
        for a in range(n):
            for b in range(a, n):
                tick += 1
                for x in range(a):
                    txb = t[x, b]
                    for y in range(b):
                        stamp[txb ^ t[a, y] ^ t[x, y]] = tick
                m = 0
                while stamp[m] == tick:
                    m += 1
                t[a, b] = m
                t[b, a] = m
        return t


def _table_cap() -> int:
    raw = os.environ.get("SURREAL_MEMO_CAP")
    return max(DEFAULT_TABLE_CAP, int(raw)) if raw else DEFAULT_TABLE_CAP


_tables: Dict[str, np.ndarray] = {}


def add_table_mex(n: int, use_numba: bool = True) -> np.ndarray:
    """``n x n`` table of nim sums from the mex recursion."""
    if n > 4 * _table_cap():
        raise MemoOverflow(f"addition table of size {n} exceeds the configured cap")
    cached = _tables.get("add")
    if cached is not None and cached.shape[0] >= n:
        return cached[:n, :n]
    t = _add_table_nb(n) if (use_numba and njit is not None) else _add_table_py(n)
    _tables["add"] = t
    return t


def mul_table_mex(n: int, use_numba: bool = True) -> np.ndarray:
    """``n x n`` table of nim products from the mex recursion."""
    if n > _table_cap():
        raise MemoOverflow(f"multiplication table of size {n} exceeds the configured cap")
    cached = _tables.get("mul")
    if cached is not None and cached.shape[0] >= n:
        return cached[:n, :n]
    if use_numba and njit is not None:
        t = _mul_table_nb(n, fermat_segment(max(n - 1, 1)))
    else:
        t = _mul_table_py(n)
    _tables["mul"] = t
    return t


def nim_add_mex(a: int, b: int) -> int:
    return int(add_table_mex(max(a, b) + 1)[a, b])


def nim_mul_mex(a: int, b: int) -> int:
    return int(mul_table_mex(max(a, b) + 1)[a, b])


# -- fast multiplication --------------------------------------------------


def fermat_segment(a: int) -> int:
    """Least ``2**(2**k)`` strictly greater than ``a``."""
    f = 2
    while f <= a:
        f = f * f
    return f


def _build_small():
    n = 256
    t = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            t[a][b] = t[b][a] = _mul_rec(a, b, None)
    return t


def _mul_rec(a: int, b: int, small) -> int:
    if a < 2 or b < 2:
        return a * b
    if small is not None and a < 256 and b < 256:
        return small[a][b]
    F = 2
    while F * F <= max(a, b):
        F = F * F
    # a = a1*F + a0 with a0, a1 < F
    a1, a0 = divmod(a, F)
    b1, b0 = divmod(b, F)
    low = _mul_rec(a0, b0, small)
    hh = _mul_rec(a1, b1, small)
    high = _mul_rec(a1 ^ a0, b1 ^ b0, small) ^ low
    return high * F ^ low ^ _mul_rec(hh, F >> 1, small)


_SMALL: Optional[List[List[int]]] = None


def nim_mul(a: int, b: int) -> int:
    """Nim product via ``F (x) F = F + F/2`` and ``F (x) x = F * x`` for ``x < F``."""
    global _SMALL
    if a < 0 or b < 0:
        raise ValueError("nimbers are natural numbers")
    if _SMALL is None:
        _SMALL = _build_small()
    if a < 256 and b < 256:
        return _SMALL[a][b]
    return _mul_rec(a, b, _SMALL)


def nim_pow(a: int, e: int) -> int:
    if e < 0:
        return nim_pow(nim_inverse(a), -e)
    out, base = 1, a
    while e:
        if e & 1:
            out = nim_mul(out, base)
        base = nim_mul(base, base)
        e >>= 1
    return out


def nim_inverse(a: int) -> int:
    """Inverse inside the least Fermat segment containing ``a``."""
    if a == 0:
        raise DivisionByZero("nimber 0 has no inverse")
    F = fermat_segment(a)
    return nim_pow(a, F - 2)


def _mul_table_fast(n: int) -> np.ndarray:
    return np.array([[nim_mul(a, b) for b in range(n)] for a in range(n)], dtype=np.int64)


def is_closed_field_segment(n: int) -> bool:
    """Whether ``{0, ..., n-1}`` is closed under nim sum, product and inverse."""
    if n < 2:
        raise ValueError("segment size must be at least 2")
    if n <= 256:
        global _SMALL
        if _SMALL is None:
            _SMALL = _build_small()
        mt = np.array(_SMALL, dtype=np.int64)[:n, :n]
    else:
        mt = _mul_table_fast(n)
    idx = np.arange(n)
    if (idx[:, None] ^ idx[None, :]).max() >= n:
        return False
    if mt.max() >= n:
        return False
    return bool((mt[1:, 1:] == 1).any(axis=1).all())


# -- polynomials ----------------------------------------------------------


class NimPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(v) for v in coeffs]
        if any(v < 0 for v in c):
            raise ValueError("nimber coefficients are natural numbers")
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: Tuple[int, ...] = tuple(c)

    @classmethod
    def parse(cls, text: str) -> "NimPolynomial":
        raw = json.loads(text)
        if not isinstance(raw, list):
            raise ValueError("nimber polynomial literal must be a list")
        return cls(raw)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        return nim_poly_eval(self, x)

    def __eq__(self, other):
        return isinstance(other, NimPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            parts.append(str(c) if i == 0 else (mono if c == 1 else f"{c}{mono}"))
        return " + ".join(parts)

    def __repr__(self):
        return f"NimPolynomial({list(self.coeffs)})"


def nim_poly_eval(p: NimPolynomial, x: int) -> int:
    acc = 0
    for c in reversed(p.coeffs):
        acc = nim_mul(acc, x) ^ c
    return acc


def compare_nim_poly(p: NimPolynomial, q: NimPolynomial) -> Ordering:
    """Degree first, then coefficients from the top down."""
    kp = (p.degree, tuple(reversed(p.coeffs)))
    kq = (q.degree, tuple(reversed(q.coeffs)))
    return Ordering((kp > kq) - (kp < kq))


class _Gf16:
    """Log/antilog tables of the nimber field with 2**16 elements."""

    ORDER = 65535

    def __init__(self):
        g = self._generator()
        exp = np.zeros(2 * self.ORDER, dtype=np.int64)
        v = 1
        for i in range(self.ORDER):
            exp[i] = v
            v = nim_mul(v, g)
        exp[self.ORDER:] = exp[: self.ORDER]
        log = np.zeros(65536, dtype=np.int64)
        log[exp[: self.ORDER]] = np.arange(self.ORDER)
        self.exp, self.log = exp, log

    def _generator(self) -> int:
        # 65535 = 3 * 5 * 17 * 257
        for g in range(2, 65536):
            if all(nim_pow(g, self.ORDER // q) != 1 for q in (3, 5, 17, 257)):
                return g
        raise AssertionError("no generator")

    def mul(self, a: np.ndarray, b) -> np.ndarray:
        b = np.broadcast_to(np.asarray(b, dtype=np.int64), a.shape)
        out = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, out)


_GF16: Optional[_Gf16] = None


def _gf16() -> _Gf16:
    global _GF16
    if _GF16 is None:
        _GF16 = _Gf16()
    return _GF16


def _values_on_range(p: NimPolynomial, n: int) -> np.ndarray:
    """``p(x)`` for every ``x < n`` (vectorised when everything fits in 16 bits)."""
    if n <= 65536 and all(c < 65536 for c in p.coeffs):
        gf = _gf16()
        xs = np.arange(n, dtype=np.int64)
        acc = np.zeros(n, dtype=np.int64)
        for c in reversed(p.coeffs):
            acc = gf.mul(acc, xs) ^ c
        return acc
    return np.array([nim_poly_eval(p, x) for x in range(n)], dtype=object)


def zero_set(f, d: int = 0, bound: int = 16) -> Set[int]:
    """All ``x < bound`` with ``f(x) = d``; ``f`` is a polynomial, genetic definition or callable."""
    if isinstance(f, NimPolynomial):
        vals = _values_on_range(f, bound)
        return {int(x) for x in np.flatnonzero(vals == d)}
    if isinstance(f, NimGeneticDefinition):
        ev = NimGeneticEvaluator(f)
        return {x for x in range(bound) if ev(x) == d}
    return {x for x in range(bound) if f(x) == d}


def simplest_irreducible(degree: int, coeff_bound: int, root_bound: int) -> NimPolynomial:
    """Least monic polynomial of ``degree`` (coefficients below ``coeff_bound``) with no root below ``root_bound``.

    Root-freeness stands in for irreducibility, which it matches for degree
    at most 3 once ``root_bound`` covers a field holding all coefficients.
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    total = coeff_bound ** degree
    for idx in range(total):
        # idx enumerates (a_{k-1}, ..., a_0) lexicographically
        lower = []
        r = idx
        for _ in range(degree):
            r, c = divmod(r, coeff_bound)
            lower.append(c)
        p = NimPolynomial(lower + [1])
        if not zero_set(p, 0, root_bound):
            return p
    raise NotFound(f"every monic degree-{degree} polynomial with coefficients < {coeff_bound} has a root below {root_bound}")


# -- genetic definitions on nimbers ---------------------------------------


@dataclass(frozen=True)
class NimOption:
    """``fn(x)`` when ``uses_option`` is false, else ``fn(x, xh, f(xh))`` for each ``xh < x``.

    ``fn`` may return None to skip an option tuple.
    """

    fn: Callable
    uses_option: bool = True
    name: str = ""


@dataclass(frozen=True)
class NimGeneticDefinition:
    name: str
    options: Tuple[NimOption, ...]


class NimGeneticEvaluator:
    """Bottom-up evaluator: ``f(x) = mex`` of all option values."""

    def __init__(self, definition: NimGeneticDefinition, memo_cap: Optional[int] = None):
        self.definition = definition
        raw = os.environ.get("SURREAL_MEMO_CAP")
        self.memo_cap = memo_cap if memo_cap is not None else (int(raw) if raw else 1 << 20)
        self._values: List[int] = []

    def __call__(self, x: int) -> int:
        if x < 0:
            raise ValueError("nimbers are natural numbers")
        if x >= self.memo_cap:
            raise MemoOverflow(f"evaluation at {x} exceeds the memo cap {self.memo_cap}")
        vals = self._values
        while len(vals) <= x:
            n = len(vals)
            out = []
            for opt in self.definition.options:
                if opt.uses_option:
                    out.extend(opt.fn(n, xh, vals[xh]) for xh in range(n))
                else:
                    out.append(opt.fn(n))
            vals.append(mex(v for v in out if v is not None))
        return vals[x]


def eval_genetic_nim(definition: NimGeneticDefinition, x: int) -> int:
    return NimGeneticEvaluator(definition)(x)


_NIM_BUILTINS = {
    # <0, x>: two options that ignore x-hat
    "zero_or_x": NimGeneticDefinition(
        "zero_or_x",
        (NimOption(lambda x: 0, False, "0"), NimOption(lambda x: x, False, "x")),
    ),
    # <x-hat>: the literal recursive form of the successor
    "successor_genetic": NimGeneticDefinition(
        "successor_genetic", (NimOption(lambda x, xh, fxh: xh, True, "xh"),)
    ),
    # x + y with y fixed at 1 via <x-hat + 1, x>
    "add_one": NimGeneticDefinition(
        "add_one",
        (NimOption(lambda x, xh, fxh: xh ^ 1, True, "xh+1"), NimOption(lambda x: x, False, "x")),
    ),
}


def nim_builtin(name: str) -> NimGeneticDefinition:
    from .errors import UnknownBuiltin

    try:
        return _NIM_BUILTINS[name]
    except KeyError:
        raise UnknownBuiltin(f"unknown nimber builtin {name!r}; known: {', '.join(_NIM_BUILTINS)}") from None


def successor(x: int) -> int:
    """Ordinal successor ``x + 1``."""
    if x < 0:
        raise ValueError("nimbers are natural numbers")
    return x + 1


# -- closures -------------------------------------------------------------

_BINARY = {"add": nim_add, "mul": nim_mul}


def nim_closure(seed: Iterable[int], ops: Iterable[str] = ("add", "mul"), cap: int = 256) -> Set[int]:
    """Least set containing ``seed`` and closed under ``ops`` (add, mul, inverse).

    Raises :class:`CapTooSmall` when some operation on members lands at or
    above ``cap``, so a returned set is always a genuine fixpoint.
    """
    ops = tuple(ops)
    unknown = set(ops) - {"add", "mul", "inverse"}
    if unknown:
        raise ValueError(f"unknown operations: {sorted(unknown)}")
    members = set(int(s) for s in seed)
    if any(s < 0 or s >= cap for s in members):
        raise ValueError("seed must lie in [0, cap)")
    frontier = set(members)
    escapes: Set[int] = set()
    while frontier:
        found: Set[int] = set()
        snapshot = sorted(members)
        for a in sorted(frontier):
            for name in ops:
                if name == "inverse":
                    if a:
                        found.add(nim_inverse(a))
                    continue
                op = _BINARY[name]
                for b in snapshot:
                    found.add(op(a, b))
        escapes |= {v for v in found if v >= cap}
        if escapes:
            raise CapTooSmall(f"closure leaves [0, {cap})", escapes=sorted(escapes)[:16])
        frontier = found - members
        members |= frontier
    return members


def is_initial_nim(s: Iterable[int]) -> bool:
    s = set(s)
    return s == set(range(len(s)))
