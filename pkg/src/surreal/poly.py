"""Polynomials with dyadic surreal coefficients.

Besides evaluation this module implements the polynomial option calculus
(``p - (a_m - a')(x - x^L)^alpha (x - x^R)^(m - alpha)``), the simplicity
order on polynomials and two root extractors: a direct sign walk driven by
exact Sturm-based comparisons, and an option-growing procedure that builds
the root as a cut the way the existence proof for roots does.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from . import qpoly as Q
from .core import (
    NEG_INF,
    POS_INF,
    ExtendedBound,
    SignSequence,
    canonical_options,
    from_dyadic,
    is_simpler,
    parse_surreal,
    simplest_between,
    surreal,
)
from .dyadic import Dyadic
from .errors import DivisionByZero, InconsistentCut, NegativeRadicand, NoRoot, SideRequired
from .genetic import Side

__all__ = [
    "SurrealPolynomial",
    "PolyOption",
    "Enclosure",
    "RootResult",
    "GeneticRootSearch",
    "eval_poly",
    "poly_options",
    "instantiate_option",
    "is_simpler_poly",
    "derivative",
    "isolate_roots",
    "root_sign_expansion",
    "find_root_genetic",
    "simplest_root",
    "reciprocal",
    "sqrt",
]


class SurrealPolynomial:
    """``sum a_i x^i`` with SignSequence coefficients, trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [surreal(v) if not isinstance(v, str) else parse_surreal(v) for v in coeffs]
        while c and not c[-1].signs:
            c.pop()
        self.coeffs: Tuple[SignSequence, ...] = tuple(c)

    @classmethod
    def parse(cls, text: str) -> "SurrealPolynomial":
        """Read a lowest-degree-first literal such as ``[-2, 0, 1]`` or ``[-1, "1/2"]``."""
        text = text.strip().replace("−", "-")
        try:
            raw = json.loads(text)
        except json.JSONDecodeError:
            body = text.strip("[]")
            raw = [t.strip() for t in body.split(",") if t.strip()]
        if not isinstance(raw, list):
            raise ValueError(f"polynomial literal must be a list: {text!r}")
        return cls(Dyadic.parse(str(v)) for v in raw)

    @classmethod
    def from_fractions(cls, coeffs: Sequence[Fraction]) -> "SurrealPolynomial":
        return cls(from_dyadic(Dyadic.from_fraction(c)) for c in coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> SignSequence:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else SignSequence("")

    def values(self) -> List[Dyadic]:
        return [c.value for c in self.coeffs]

    def fractions(self) -> Q.QPoly:
        return Q.qpoly(c.value.to_fraction() for c in self.coeffs)

    def __call__(self, x) -> SignSequence:
        return eval_poly(self, x)

    def __neg__(self):
        return SurrealPolynomial(-c.value for c in self.coeffs)

    def shift(self, d) -> "SurrealPolynomial":
        """``p - d`` for a constant ``d``."""
        vals = self.values() or [Dyadic(0)]
        vals[0] = vals[0] - surreal(d).value
        return SurrealPolynomial(vals)

    def __eq__(self, other):
        return isinstance(other, SurrealPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            v = self.coeffs[i].value
            if not v:
                continue
            mag = abs(v)
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            coef = str(mag) if (mag != 1 or i == 0) else ""
            term = f"{coef}{'*' if coef and '/' in coef and mono else ''}{mono}"
            sign = "-" if v < 0 else "+"
            terms.append((sign, term))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for s, t in terms[1:]:
            out += f" {s} {t}"
        return out

    def __repr__(self):
        return f"SurrealPolynomial({[str(c.value) for c in self.coeffs]})"


def _poly(p) -> SurrealPolynomial:
    if isinstance(p, SurrealPolynomial):
        return p
    if isinstance(p, str):
        return SurrealPolynomial.parse(p)
    return SurrealPolynomial(p)


def eval_poly(p, x) -> SignSequence:
    """Horner evaluation with exact dyadic arithmetic."""
    p = _poly(p)
    xv = surreal(x).value
    acc = Dyadic(0)
    for c in reversed(p.coeffs):
        acc = acc * xv + c.value
    return from_dyadic(acc)


def derivative(p) -> SurrealPolynomial:
    p = _poly(p)
    return SurrealPolynomial(i * c.value for i, c in enumerate(p.coeffs) if i)


# -- option calculus ------------------------------------------------------


@dataclass(frozen=True)
class PolyOption:
    m: int
    alpha: int
    coeff_option: SignSequence
    side: Side

    def __str__(self):
        return f"(m={self.m}, alpha={self.alpha}, a'={self.coeff_option.value}, {self.side.name.lower()})"


def _option_side(m: int, alpha: int, a_hat: Dyadic, a: Dyadic) -> Side:
    even = (m - alpha) % 2 == 0
    return Side.LEFT if (even and a_hat < a) or (not even and a_hat > a) else Side.RIGHT


def poly_options(p) -> List[PolyOption]:
    """All ``(m, alpha, a')`` with ``a'`` a canonical option of ``a_m``, classified by side."""
    p = _poly(p)
    out = []
    for m in range(p.degree + 1):
        a = p.coeffs[m]
        left, right = canonical_options(a)
        for a_hat in tuple(left) + tuple(right):
            for alpha in range(m + 1):
                out.append(PolyOption(m, alpha, a_hat, _option_side(m, alpha, a_hat.value, a.value)))
    return out


def _factor(xl, xr, alpha: int, beta: int) -> Q.QPoly:
    out: Q.QPoly = (Fraction(1),)
    if alpha:
        if xl is None:
            raise SideRequired("this option needs a left endpoint x^L")
        out = Q.mul(out, Q.power((-surreal(xl).value.to_fraction(), Fraction(1)), alpha))
    if beta:
        if xr is None:
            raise SideRequired("this option needs a right endpoint x^R")
        out = Q.mul(out, Q.power((-surreal(xr).value.to_fraction(), Fraction(1)), beta))
    return out


def _instantiate_q(opt: PolyOption, pq: Q.QPoly, a_m: Fraction, xl, xr) -> Q.QPoly:
    diff = a_m - opt.coeff_option.value.to_fraction()
    return Q.sub(pq, Q.scale(_factor(xl, xr, opt.alpha, opt.m - opt.alpha), diff))


def instantiate_option(opt: PolyOption, p, xl=None, xr=None) -> SurrealPolynomial:
    """Expand ``p - (a_m - a')(x - xl)^alpha (x - xr)^(m - alpha)``.

    ``xl`` / ``xr`` may be None when the matching exponent is zero.
    """
    p = _poly(p)
    if xl is not None and xr is not None and not surreal(xl) < surreal(xr):
        raise ValueError("x^L must be below x^R")
    a_m = p.coefficient(opt.m).value.to_fraction()
    return SurrealPolynomial.from_fractions(_instantiate_q(opt, p.fractions(), a_m, xl, xr))


def is_simpler_poly(q, p) -> bool:
    """True when at the highest index where the coefficients differ, ``q``'s is simpler."""
    q, p = _poly(q), _poly(p)
    n = max(len(q.coeffs), len(p.coeffs))
    for i in range(n - 1, -1, -1):
        b, a = q.coefficient(i), p.coefficient(i)
        if b != a:
            return is_simpler(b, a)
    return False


# -- root isolation and the sign walk ------------------------------------


def _bound_value(b):
    b = ExtendedBound.coerce(b)
    if b.kind < 0:
        return Q.NEG_INF
    if b.kind > 0:
        return Q.POS_INF
    return b.value.value.to_fraction()


def isolate_roots(p, d=0, a="-inf", b="+inf") -> List[Tuple[Dyadic, Dyadic]]:
    """Disjoint dyadic intervals, one per distinct solution of ``p(x) = d`` in ``(a, b)``.

    A degenerate pair ``(r, r)`` marks an exact dyadic solution; otherwise the
    open interval holds exactly one solution and its endpoints are not solutions.
    """
    p = _poly(p)
    if p.degree < 1:
        raise ValueError("polynomial must be nonconstant")
    target = p.shift(d).fractions()
    pairs = Q.roots_between(target, _bound_value(a), _bound_value(b))
    return [(Dyadic.from_fraction(lo), Dyadic.from_fraction(hi)) for lo, hi in pairs]


@dataclass(frozen=True)
class Enclosure:
    low: ExtendedBound
    high: ExtendedBound
    prefix: SignSequence
    exact: bool = False

    def to_dict(self) -> dict:
        return {"low": str(self.low), "high": str(self.high), "prefix": self.prefix.signs, "exact": self.exact}


@dataclass(frozen=True)
class RootResult:
    """Outcome of a root extraction: ``kind`` is ``"exact"`` or ``"prefix"``."""

    kind: str
    value: SignSequence
    enclosure: Enclosure

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    @property
    def signs(self) -> str:
        return self.value.signs

    @classmethod
    def exact_value(cls, v: SignSequence) -> "RootResult":
        b = ExtendedBound.finite(v)
        return cls("exact", v, Enclosure(b, b, v, True))

    @classmethod
    def prefix_of(cls, prefix: SignSequence, low=None, high=None) -> "RootResult":
        if low is None or high is None:
            left, right = canonical_options(prefix)
            low = ExtendedBound.finite(max(left)) if left else NEG_INF
            high = ExtendedBound.finite(min(right)) if right else POS_INF
        return cls("prefix", prefix, Enclosure(low, high, prefix, False))

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "signs": self.value.signs, "enclosure": self.enclosure.to_dict()}
        if self.is_exact:
            out["dyadic"] = str(self.value.value)
        return out


class _IsolatedRoot:
    """Exact comparator for the unique root of ``target`` inside an isolating interval."""

    def __init__(self, target: Q.QPoly, lo, hi):
        self.sf = Q.squarefree(target)
        if lo == Q.NEG_INF or hi == Q.POS_INF:
            B = Q.cauchy_bound(self.sf) if len(self.sf) > 1 else 1
            lo = Fraction(-B) if lo == Q.NEG_INF else lo
            hi = Fraction(B) if hi == Q.POS_INF else hi
        self.lo, self.hi = Fraction(lo), Fraction(hi)
        self.exact: Optional[Fraction] = None
        if self.lo == self.hi:
            if Q.sign_at(self.sf, self.lo) != 0:
                raise NoRoot(f"{self.lo} is not a root")
            self.exact = self.lo
            return
        if Q.sign_at(self.sf, self.lo) == 0 or Q.sign_at(self.sf, self.hi) == 0:
            # pull endpoints off roots so the comparator sees a clean sign change
            inner = Q.roots_between(self.sf, self.lo, self.hi)
            if len(inner) != 1:
                raise NoRoot("interval does not isolate exactly one root") if not inner else ValueError(
                    "interval contains more than one root")
            self.lo, self.hi = inner[0]
            if self.lo == self.hi:
                self.exact = self.lo
            return
        n = Q.count_roots(Q.sturm(self.sf), self.lo, self.hi)
        if n == 0:
            raise NoRoot(f"no root in ({self.lo}, {self.hi})")
        if n > 1:
            raise ValueError(f"({self.lo}, {self.hi}) contains {n} roots; isolate first")
        if Q.sign_at(self.sf, self.lo) == Q.sign_at(self.sf, self.hi):
            raise NoRoot("no sign change across the interval")

    def compare(self, x) -> int:
        """Sign of ``x - root``."""
        x = x.to_fraction() if isinstance(x, Dyadic) else Fraction(x)
        if self.exact is not None:
            return Q.sign(x - self.exact)
        return Q.sign_relative_to_root(self.sf, self.lo, self.hi, x)

    def walk(self, max_signs: int) -> RootResult:
        signs = []
        v = Dyadic(0)
        node = SignSequence("")
        for _ in range(max_signs):
            c = self.compare(v)
            if c == 0:
                return RootResult.exact_value(node)
            signs.append("+" if c < 0 else "-")
            node = SignSequence("".join(signs))
            v = node.value
        if self.compare(v) == 0:
            return RootResult.exact_value(node)
        return RootResult.prefix_of(node)


def _interval(iv):
    lo, hi = iv
    return _bound_value(lo), _bound_value(hi)


def root_sign_expansion(p, d, iv, max_signs: int) -> RootResult:
    """Sign expansion of the unique solution of ``p(x) = d`` inside ``iv``.

    Each sign is the exact comparison of the root with the value of the
    prefix built so far.
    """
    p = _poly(p)
    lo, hi = _interval(iv)
    root = _IsolatedRoot(p.shift(d).fractions(), lo, hi)
    return root.walk(max_signs)


def simplest_root(p, d=0, a="-inf", b="+inf", max_signs: int = 64) -> RootResult:
    """Simplest solution of ``p(x) = d`` in ``(a, b)``.

    Exact dyadic solutions win by birthday.  When every solution is
    non-dyadic the smallest one (in the order) is returned as a prefix.
    """
    pairs = isolate_roots(p, d, a, b)
    if not pairs:
        raise NoRoot("no solution in the interval")
    results = [root_sign_expansion(p, d, (from_dyadic(lo), from_dyadic(hi)) if lo != hi else (from_dyadic(lo), from_dyadic(lo)), max_signs) for lo, hi in pairs]
    exact = [r for r in results if r.is_exact]
    if exact:
        return min(exact, key=lambda r: (len(r.value), r.value.sort_key))
    return results[0]


# -- genetic root search --------------------------------------------------


@dataclass
class TraceEntry:
    side: Side
    value: Dyadic
    source: str

    def to_dict(self) -> dict:
        return {"side": self.side.name.lower(), "value": str(self.value), "source": self.source}


@dataclass
class GeneticRootSearch:
    result: RootResult
    trace: List[TraceEntry] = field(default_factory=list)
    budget_exhausted: bool = False

    def to_dict(self) -> dict:
        out = self.result.to_dict()
        out["budget_exhausted"] = self.budget_exhausted
        out["trace"] = [t.to_dict() for t in self.trace]
        return out


def _aux_root(poly_q: Q.QPoly, lo: Fraction, hi: Fraction, which: str, side: Side, depth: int):
    """First or last root of ``poly_q`` in ``(lo, hi)`` as a safe dyadic option.

    A dyadic root is returned as is.  A non-dyadic root is replaced by the
    nearest prefix value on the side where the option may be weakened: below
    it for a left option, above it for a right option.
    """
    pairs = Q.roots_between(poly_q, lo, hi)
    if not pairs:
        return None
    a, b = pairs[0] if which == "first" else pairs[-1]
    if a == b:
        return Dyadic.from_fraction(a)
    walk = _IsolatedRoot(poly_q, a, b).walk(depth)
    if walk.is_exact:
        return walk.value.value
    bound = walk.enclosure.low if side is Side.LEFT else walk.enclosure.high
    if bound.kind != 0:
        return None
    return bound.value.value


def find_root_genetic(p, d, iv, budget: int = 32, aux_depth: int = 64) -> GeneticRootSearch:
    """Build the solution of ``p(x) = d`` in ``iv`` as a growing cut ``<L | R>``.

    ``L`` and ``R`` start with the interval ends.  Each round proposes options
    from two sources: for each option ``d'`` of ``d``, the last (first)
    solution of ``p(x) = d'`` in the interval; and for each instantiated
    polynomial option ``g`` built from the current cut ends, the first point
    where a left ``g`` reaches ``d`` or the last point where a right ``g``
    drops to ``d``.  The tightest new left and right candidates are added.
    The search stops when the simplest element of the cut solves the
    equation, when no candidate tightens the cut, or when ``budget`` options
    have been added (seeds included).
    """
    p = _poly(p)
    d = surreal(d)
    if p.degree < 1:
        raise ValueError("polynomial must be nonconstant")
    lo, hi = _interval(iv)
    root = _IsolatedRoot(p.shift(d).fractions(), lo, hi)
    # orient so that p - d goes from negative to positive across the root
    a_q = Fraction(lo) if lo != Q.NEG_INF else None
    b_q = Fraction(hi) if hi != Q.POS_INF else None
    sf = root.sf
    if root.exact is None and Q.sign_at(sf, root.lo) > 0:
        P, D = -p, -d
    elif root.exact is not None:
        # the orientation is read from p - d just around the exact root
        step = Fraction(1, 1 << aux_depth)
        P, D = (-p, -d) if Q.sign_at(p.shift(d).fractions(), root.exact - step) > 0 else (p, d)
    else:
        P, D = p, d
    Pq = P.fractions()
    Dv = D.value.to_fraction()
    lo_u = a_q if a_q is not None else root.lo
    hi_u = b_q if b_q is not None else root.hi

    L: List[Dyadic] = []
    R: List[Dyadic] = []
    trace: List[TraceEntry] = []

    def add(side: Side, v: Dyadic, source: str):
        c = root.compare(v)
        if (side is Side.LEFT and c >= 0) or (side is Side.RIGHT and c <= 0):
            raise InconsistentCut(f"{side.name.lower()} option {v} from {source} is on the wrong side of the root")
        (L if side is Side.LEFT else R).append(v)
        trace.append(TraceEntry(side, v, source))

    if a_q is not None:
        add(Side.LEFT, Dyadic.from_fraction(a_q), "interval end")
    if b_q is not None and len(trace) < budget:
        add(Side.RIGHT, Dyadic.from_fraction(b_q), "interval end")

    def current():
        return simplest_between(max(L) if L else None, min(R) if R else None)

    # candidates from options of d: they only depend on the interval
    d_cands: List[Tuple[Side, Dyadic, str]] = []
    dl, dr = canonical_options(D)
    for dh in dl:
        v = _aux_root(Q.sub(Pq, (dh.value.to_fraction(),)), lo_u, hi_u, "last", Side.LEFT, aux_depth)
        if v is not None:
            d_cands.append((Side.LEFT, v, f"last solution of p = {dh.value}"))
    for dh in dr:
        v = _aux_root(Q.sub(Pq, (dh.value.to_fraction(),)), lo_u, hi_u, "first", Side.RIGHT, aux_depth)
        if v is not None:
            d_cands.append((Side.RIGHT, v, f"first solution of p = {dh.value}"))

    opts = poly_options(P)
    seen = set()
    exhausted = False
    while True:
        c = current()
        if root.compare(c.value) == 0:
            return GeneticRootSearch(RootResult.exact_value(c), trace)
        if len(trace) >= budget:
            exhausted = True
            break
        cands = list(d_cands)
        xls = [None] + sorted(set(L))
        xrs = [None] + sorted(set(R))
        for opt in opts:
            a_m = P.coefficient(opt.m).value.to_fraction()
            for xl in xls:
                if opt.alpha == 0 and xl is not None:
                    continue
                if opt.alpha and xl is None:
                    continue
                for xr in xrs:
                    if opt.m - opt.alpha == 0 and xr is not None:
                        continue
                    if opt.m - opt.alpha and xr is None:
                        continue
                    key = (opt, xl, xr)
                    if key in seen:
                        continue
                    seen.add(key)
                    g = _instantiate_q(opt, Pq, a_m, xl, xr)
                    u0 = max(lo_u, xl.to_fraction()) if xl is not None else lo_u
                    u1 = min(hi_u, xr.to_fraction()) if xr is not None else hi_u
                    target = Q.sub(g, (Dv,))
                    if not target:
                        continue
                    label = f"option {opt} at x^L={xl}, x^R={xr}"
                    if opt.side is Side.LEFT:
                        v = _aux_root(target, u0, u1, "first", Side.RIGHT, aux_depth)
                        if v is not None:
                            cands.append((Side.RIGHT, v, label))
                    else:
                        v = _aux_root(target, u0, u1, "last", Side.LEFT, aux_depth)
                        if v is not None:
                            cands.append((Side.LEFT, v, label))
        best_l = max((cd for cd in cands if cd[0] is Side.LEFT), key=lambda cd: cd[1], default=None)
        best_r = min((cd for cd in cands if cd[0] is Side.RIGHT), key=lambda cd: cd[1], default=None)
        progressed = False
        if best_l is not None and (not L or best_l[1] > max(L)):
            add(*best_l)
            progressed = True
        if best_r is not None and (not R or best_r[1] < min(R)) and len(trace) < budget:
            add(*best_r)
            progressed = True
        if not progressed:
            break
    c = current()
    if root.compare(c.value) == 0:
        return GeneticRootSearch(RootResult.exact_value(c), trace)
    low = ExtendedBound.finite(from_dyadic(max(L))) if L else NEG_INF
    high = ExtendedBound.finite(from_dyadic(min(R))) if R else POS_INF
    return GeneticRootSearch(RootResult.prefix_of(c, low, high), trace, budget_exhausted=exhausted)


# -- special cases --------------------------------------------------------


def reciprocal(a, max_signs: int = 64) -> RootResult:
    """``1/a`` as the solution of ``a x - 1 = 0``."""
    a = surreal(a)
    if not a.value:
        raise DivisionByZero("reciprocal of 0")
    p = SurrealPolynomial([-1, a.value])
    return root_sign_expansion(p, 0, (NEG_INF, POS_INF), max_signs)


def sqrt(a, max_signs: int = 64) -> RootResult:
    """Nonnegative square root as the solution of ``x^2 - a = 0`` in ``[0, oo)``."""
    a = surreal(a)
    if a.value < 0:
        raise NegativeRadicand(f"square root of {a.value}")
    if not a.value:
        return RootResult.exact_value(SignSequence(""))
    p = SurrealPolynomial([-a.value, 0, 1])
    return root_sign_expansion(p, 0, (from_dyadic(Dyadic(0)), POS_INF), max_signs)
