"""Exact univariate polynomials over the rationals.

Polynomials are tuples of :class:`fractions.Fraction`, lowest degree first,
with no trailing zeros (the zero polynomial is the empty tuple).  Only what
root isolation needs is here: arithmetic, division, gcd, square-free part and
Sturm sequences.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

QPoly = Tuple[Fraction, ...]

NEG_INF = float("-inf")
POS_INF = float("inf")


def qpoly(coeffs: Sequence) -> QPoly:
    c = [Fraction(v) for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(p: QPoly) -> int:
    return len(p) - 1


def add(p: QPoly, q: QPoly) -> QPoly:
    n = max(len(p), len(q))
    return qpoly([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def neg(p: QPoly) -> QPoly:
    return tuple(-c for c in p)


def sub(p: QPoly, q: QPoly) -> QPoly:
    return add(p, neg(q))


def mul(p: QPoly, q: QPoly) -> QPoly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return qpoly(out)


def scale(p: QPoly, c) -> QPoly:
    return qpoly([a * c for a in p])


def power(p: QPoly, n: int) -> QPoly:
    out: QPoly = (Fraction(1),)
    for _ in range(n):
        out = mul(out, p)
    return out


def evaluate(p: QPoly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: QPoly) -> QPoly:
    return qpoly([i * c for i, c in enumerate(p)][1:])


def divmod_(p: QPoly, q: QPoly) -> Tuple[QPoly, QPoly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    quot = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    lead = q[-1]
    while len(r) >= len(q) and r:
        k = len(r) - len(q)
        c = r[-1] / lead
        quot[k] = c
        for i, b in enumerate(q):
            r[i + k] -= c * b
        while r and r[-1] == 0:
            r.pop()
    return qpoly(quot), tuple(r)


def monic(p: QPoly) -> QPoly:
    return scale(p, 1 / p[-1]) if p else p


def gcd(p: QPoly, q: QPoly) -> QPoly:
    while q:
        p, q = q, divmod_(p, q)[1]
    return monic(p)


def squarefree(p: QPoly) -> QPoly:
    """Product of the distinct irreducible factors of ``p`` (same real roots, all simple)."""
    if len(p) <= 1:
        return p
    g = gcd(p, derivative(p))
    return divmod_(p, g)[0] if len(g) > 1 else p


def sturm(p: QPoly) -> List[QPoly]:
    seq = [p, derivative(p)]
    while seq[-1]:
        r = divmod_(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append(neg(r))
    return [s for s in seq if s]


def sign(v) -> int:
    return (v > 0) - (v < 0)


def sign_at(p: QPoly, x) -> int:
    """Sign of ``p`` at ``x``; ``x`` may be a Fraction/Dyadic or +-inf."""
    if not p:
        return 0
    if x == POS_INF:
        return sign(p[-1])
    if x == NEG_INF:
        return sign(p[-1]) * (-1 if degree(p) % 2 else 1)
    return sign(evaluate(p, x))


def variations(seq: List[QPoly], x) -> int:
    signs = [s for s in (sign_at(q, x) for q in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(seq: List[QPoly], a, b) -> int:
    """Distinct real roots in ``(a, b]`` of the square-free head of ``seq``."""
    return variations(seq, a) - variations(seq, b)


def cauchy_bound(p: QPoly) -> int:
    """A power of two strictly exceeding the absolute value of every real root."""
    lead = abs(p[-1])
    m = max((abs(c) / lead for c in p[:-1]), default=Fraction(0))
    bound = 1
    while bound <= 1 + m:
        bound *= 2
    return bound


def roots_between(p: QPoly, a, b) -> List[Tuple[Fraction, Fraction]]:
    """Isolate the real roots of ``p`` in the open interval ``(a, b)``.

    Returns sorted pairs ``(lo, hi)``: ``lo == hi`` for a root hit exactly,
    otherwise an open interval with dyadic (or given) endpoints that are not
    roots and contains exactly one simple root of the square-free part.
    Infinite endpoints are replaced by a power-of-two root bound.
    """
    sf = squarefree(p)
    if len(sf) <= 1:
        return []
    B = cauchy_bound(sf)
    a = Fraction(-B) if a == NEG_INF or a < -B else Fraction(a)
    b = Fraction(B) if b == POS_INF or b > B else Fraction(b)
    if not a < b:
        return []
    seq = sturm(sf)
    out: List[Tuple[Fraction, Fraction]] = []

    def open_count(lo, hi):
        n = count_roots(seq, lo, hi)
        return n - (1 if sign_at(sf, hi) == 0 else 0)

    def rec(lo, hi, n):
        if n == 0:
            return
        if n == 1 and sign_at(sf, lo) and sign_at(sf, hi):
            out.append((lo, hi))
            return
        mid = (lo + hi) / 2
        if sign_at(sf, mid) == 0:
            rec(lo, mid, open_count(lo, mid))
            out.append((mid, mid))
            rec(mid, hi, open_count(mid, hi))
        else:
            rec(lo, mid, open_count(lo, mid))
            rec(mid, hi, open_count(mid, hi))

    rec(a, b, open_count(a, b))
    return out


def sign_relative_to_root(sf: QPoly, lo, hi, x) -> int:
    """Compare ``x`` with the unique root of ``sf`` in ``(lo, hi)``: -1, 0 or 1.

    ``sf`` must be square-free with nonzero, opposite signs at ``lo`` and ``hi``.
    """
    if x <= lo:
        return -1
    if x >= hi:
        return 1
    s = sign_at(sf, x)
    if s == 0:
        return 0
    return 1 if s != sign_at(sf, lo) else -1
