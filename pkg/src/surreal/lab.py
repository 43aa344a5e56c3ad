"""Finite experiments on initial sets, concatenation and the sup property.

2/3 has the infinite sign sequence ``+-+-...`` and is never materialised.
Comparisons against it read exactly as many of its signs as needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .arith import add, mul, neg, sub
from .core import (
    POS_INF,
    ExtendedBound,
    Ordering,
    SignSequence,
    all_sign_sequences,
    canonical_options,
    compare,
    concat,
    is_simpler,
    simplest_in_cut,
    surreal,
)
from .genetic import builtin, eval_genetic

__all__ = [
    "Report",
    "TwoThirds",
    "TWO_THIRDS_SIGNS",
    "compare_two_thirds",
    "two_thirds_prefix",
    "is_initial_finite",
    "is_convex_finite",
    "prefix_violations",
    "closure_under_ops",
    "ClosureResult",
    "initiality_report",
    "ConcatSequences",
    "concat_sequences",
    "CensusReport",
    "sign_change_census",
    "sup_escape_experiment",
    "local_tameness_witness",
    "CENSUS_FUNCTIONS",
]


@dataclass
class Report:
    """JSON-ready experiment report."""

    name: str
    parameters: dict
    verdict: str
    witnesses: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"name": self.name, "parameters": self.parameters, "verdict": self.verdict, "witnesses": self.witnesses}


# -- 2/3 ------------------------------------------------------------------


class TwoThirds:
    """Marker for the number with sign sequence ``+-+-...``."""

    def __str__(self):
        return "2/3"


TWO_THIRDS_SIGNS = TwoThirds()


def two_thirds_prefix(n: int) -> SignSequence:
    return SignSequence(("+-" * (n // 2 + 1))[:n])


def compare_two_thirds(x) -> Ordering:
    """Order of ``x`` against 2/3, reading ``len(x) + 1`` signs of 2/3."""
    x = surreal(x)
    # the prefix is one sign longer than x, so the comparison is decisive
    return compare(x, two_thirds_prefix(len(x) + 1))


def _cmp_target(v: SignSequence, d) -> int:
    if isinstance(d, TwoThirds):
        return int(compare_two_thirds(v))
    return int(compare(v, d))


# -- initial sets ---------------------------------------------------------


def prefix_violations(s: Iterable) -> List[Tuple[SignSequence, SignSequence]]:
    """Pairs ``(x, y)`` with ``y`` a prefix of member ``x`` but not a member."""
    members = {surreal(x) for x in s}
    out = []
    for x in sorted(members, key=lambda v: (len(v), v.sort_key)):
        for k in range(len(x)):
            y = x.prefix(k)
            if y not in members:
                out.append((x, y))
    return out


def is_initial_finite(s: Iterable) -> bool:
    """True iff the finite set is closed under taking prefixes."""
    return not prefix_violations(s)


def is_convex_finite(s: Iterable, universe: Iterable) -> bool:
    """True iff every universe element lying between two members is a member."""
    members = sorted({surreal(x) for x in s})
    if len(members) < 2:
        return True
    lo, hi = members[0], members[-1]
    have = set(members)
    return all(z in have for z in (surreal(u) for u in universe) if lo < z < hi)


_OPS: Dict[str, Tuple[int, Callable]] = {
    "add": (2, add),
    "mul": (2, mul),
    "sub": (2, sub),
    "neg": (1, neg),
}


@dataclass
class ClosureResult:
    elements: frozenset
    escapes: int
    escape_examples: List[SignSequence]

    @property
    def saturated(self) -> bool:
        return self.escapes == 0


def closure_under_ops(s: Iterable, ops: Iterable[str], birthday_cap: int) -> ClosureResult:
    """Least set containing ``s``, closed under ``ops`` as far as the birthday cap allows.

    Results born after ``birthday_cap`` are dropped and counted as escapes.
    """
    ops = tuple(ops)
    for name in ops:
        if name not in _OPS:
            raise ValueError(f"unknown operation {name!r}; known: {', '.join(_OPS)}")
    members = {surreal(x) for x in s}
    if any(len(x) > birthday_cap for x in members):
        raise ValueError("seed exceeds the birthday cap")
    escaped = set()
    frontier = set(members)
    while frontier:
        found = set()
        snapshot = list(members)
        for a in frontier:
            for name in ops:
                arity, fn = _OPS[name]
                if arity == 1:
                    found.add(fn(a))
                    continue
                for b in snapshot:
                    found.add(fn(a, b))
                    found.add(fn(b, a))
        kept = {v for v in found if len(v) <= birthday_cap}
        escaped |= found - kept
        frontier = kept - members
        members |= frontier
    examples = sorted(escaped, key=lambda v: (len(v), v.sort_key))[:8]
    return ClosureResult(frozenset(members), len(escaped), examples)


def _fmt(v: SignSequence) -> dict:
    return {"signs": v.signs, "dyadic": str(v.value), "birthday": len(v)}


def initiality_report(s: Iterable, ops: Iterable[str], cap: int) -> Report:
    """Close ``s`` under ``ops`` within ``cap`` and check prefix-closedness."""
    seed = sorted({surreal(x) for x in s})
    ops = tuple(ops)
    res = closure_under_ops(seed, ops, cap)
    bad = prefix_violations(res.elements)
    if bad:
        verdict = "not initial"
    elif res.escapes:
        verdict = f"initial-within-cap with {res.escapes} escapes"
    else:
        verdict = "initial"
    witnesses = [{"member": _fmt(x), "missing_prefix": _fmt(y)} for x, y in bad[:10]]
    return Report(
        "initiality",
        {
            "seed": [str(x.value) for x in seed],
            "ops": list(ops),
            "cap": cap,
            "size": len(res.elements),
            "escapes": res.escapes,
            "initial": not bad,
        },
        verdict,
        witnesses,
    )


# -- concatenation sequences ---------------------------------------------


@dataclass(frozen=True)
class ConcatSequences:
    n: int
    a: SignSequence
    b: SignSequence
    c: SignSequence
    checks: Tuple[Tuple[str, bool], ...] = ()

    @property
    def ok(self) -> bool:
        return all(v for _, v in self.checks)


def concat_sequences(n_max: int) -> List[ConcatSequences]:
    """``a_1 = +-``, ``a_{n+1} = a_n:+-``, ``b_n = a_n:+``, ``c_n = a_n:-`` with their inequalities checked.

    Each entry records ``c_n < a_n < c_{n+1} < d < b_n`` (``d`` = 2/3, compared
    exactly), ``a_n:1 = b_n`` and ``c_n:1 < a_n``.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    plus, minus, one = SignSequence("+"), SignSequence("-"), SignSequence("+")
    out = []
    a = SignSequence("+-")
    for n in range(1, n_max + 1):
        b, c = concat(a, plus), concat(a, minus)
        a_next = concat(a, SignSequence("+-"))
        c_next = concat(a_next, minus)
        checks = (
            ("c_n < a_n", c < a),
            ("a_n < c_n+1", a < c_next),
            ("c_n+1 < d", compare_two_thirds(c_next) < 0),
            ("d < b_n", compare_two_thirds(b) > 0),
            ("a_n < d", compare_two_thirds(a) < 0),
            ("a_n:1 = b_n", concat(a, one) == b),
            ("c_n:1 < a_n", concat(c, one) < a),
        )
        out.append(ConcatSequences(n, a, b, c, checks))
        a = a_next
    return out


# -- sign-change census ---------------------------------------------------


@dataclass
class CensusReport:
    samples: List[Tuple[SignSequence, int]]
    alternations: int
    witnesses: List[dict] = field(default_factory=list)

    def to_report(self, name: str, parameters: dict) -> Report:
        verdict = f"{self.alternations} sign alternations over {len(self.samples)} samples"
        return Report(name, parameters, verdict, self.witnesses)


def _concat_one(x):
    return concat(surreal(x), SignSequence("+"))


def _floor_minus_x(x):
    return eval_genetic(builtin("floor_minus_x"), x)


CENSUS_FUNCTIONS: Dict[str, Callable] = {
    "concat1": _concat_one,
    "floor_minus_x": _floor_minus_x,
    "identity": lambda x: surreal(x),
    "zero": lambda x: SignSequence(""),
}


def sign_change_census(f, d, samples: Sequence) -> CensusReport:
    """Signs of ``f(x) - d`` along ``samples`` and the number of flips.

    ``f`` is a callable or a name from :data:`CENSUS_FUNCTIONS`; ``d`` is a
    number or :data:`TWO_THIRDS_SIGNS`.  Zero signs are kept in the sample
    list but do not count as flips.
    """
    fn = CENSUS_FUNCTIONS[f] if isinstance(f, str) else f
    target = d if isinstance(d, TwoThirds) else surreal(d)
    rows = []
    for x in samples:
        x = surreal(x)
        rows.append((x, _cmp_target(surreal(fn(x)), target)))
    flips = 0
    witnesses = []
    last = None
    for x, s in rows:
        if s == 0:
            continue
        if last is not None and s != last[1]:
            flips += 1
            if len(witnesses) < 10:
                witnesses.append({"from": str(last[0].value), "to": str(x.value), "signs": [last[1], s]})
        last = (x, s)
    return CensusReport(rows, flips, witnesses)


# -- sup escape -----------------------------------------------------------


def sup_escape_experiment(caps: Sequence[int]) -> Report:
    """For each birthday cap the largest ``x < 2/3`` with ``x:1 >= 2/3``.

    A strictly increasing sequence of maxima that never settles is the finite
    face of a supremum that is missing from the surreals.
    """
    caps = list(caps)
    if any(b <= a for a, b in zip(caps, caps[1:])):
        raise ValueError("caps must be increasing")
    plus = SignSequence("+")
    rows = []
    best: Optional[SignSequence] = None
    seen = 0
    for x in all_sign_sequences(max(caps) if caps else 0):
        # all_sign_sequences is ordered by birthday, so caps can be read off in passing
        while seen < len(caps) and len(x) > caps[seen]:
            rows.append((caps[seen], best))
            seen += 1
        if compare_two_thirds(x) < 0 and compare_two_thirds(concat(x, plus)) >= 0:
            if best is None or x > best:
                best = x
    while seen < len(caps):
        rows.append((caps[seen], best))
        seen += 1
    maxima = [m for _, m in rows]
    increasing = all(m is not None for m in maxima) and all(p < q for p, q in zip(maxima, maxima[1:]))
    witnesses = [{"cap": c, "max": None if m is None else _fmt(m)} for c, m in rows]
    return Report(
        "sup_escape",
        {"caps": caps},
        "strictly increasing, no stabilisation" if increasing else "stabilised",
        witnesses,
    )


# -- local tameness ------------------------------------------------------


def local_tameness_witness(c, d) -> Tuple[ExtendedBound, ExtendedBound]:
    """Interval ``(a, b)`` around ``c`` on which ``x:1 - d`` keeps one sign on each side of ``c``.

    ``d < c``: ``a = <d | c>``, ``b = +inf``.  ``d = c``: ``a = c:-``,
    ``b = +inf``.  ``d > c``: ``a = c:-`` and ``b = <c | d>`` when ``c`` is a
    prefix of ``d``, otherwise ``b`` is the least right option of ``c``.
    """
    c, d = surreal(c), surreal(d)
    minus = SignSequence("-")
    if d < c:
        return ExtendedBound.finite(simplest_in_cut([d], [c])), POS_INF
    if d == c:
        return ExtendedBound.finite(concat(c, minus)), POS_INF
    a = ExtendedBound.finite(concat(c, minus))
    if is_simpler(c, d):
        return a, ExtendedBound.finite(simplest_in_cut([c], [d]))
    _, right = canonical_options(c)
    return a, ExtendedBound.finite(min(right))
