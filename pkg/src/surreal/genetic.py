"""Evaluator for recursive ("genetic") definitions ``f = <f^L | f^R>``.

An option function consumes the argument tuple together with one sigma-option
tuple per declared pattern, and may call ``f`` on strictly simpler tuples.
The value of ``f`` at ``x`` is the simplest number above every left option
value and below every right option value, where the option tuples range over
the canonical options of ``x`` (or over a user supplied representation at the
top call).
"""

from __future__ import annotations

import bisect
import itertools
import os
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .core import (
    Cut,
    SignSequence,
    all_sign_sequences,
    canonical_options,
    simplest_between,
    simplest_in_cut,
    surreal,
)
from .dyadic import Dyadic
from .errors import EmptyCutViolation, InvalidCut, MemoOverflow, UnknownBuiltin

__all__ = [
    "Side",
    "SigmaPattern",
    "OptionFunction",
    "GeneticDefinition",
    "GeneticEvaluator",
    "UniformityReport",
    "sigma_options",
    "eval_genetic",
    "eval_with_representation",
    "check_uniformity",
    "singleton_coarsenings",
    "builtin",
    "BUILTINS",
    "TWO_THIRDS",
]

DEFAULT_MEMO_CAP = 2_000_000
TWO_THIRDS = Fraction(2, 3)


class Side(Enum):
    LEFT = "L"
    RIGHT = "R"


@dataclass(frozen=True)
class SigmaPattern:
    """Direction pattern over ``{+, -, 0}^n`` minus the all-zero pattern."""

    entries: Tuple[str, ...]

    def __post_init__(self):
        entries = tuple(self.entries.replace("−", "-")) if isinstance(self.entries, str) else tuple(self.entries)
        if not entries or any(e not in "+-0" or len(e) != 1 for e in entries):
            raise ValueError(f"bad sigma pattern {self.entries!r}")
        if all(e == "0" for e in entries):
            raise ValueError("the all-zero pattern is excluded")
        object.__setattr__(self, "entries", entries)

    @property
    def arity(self) -> int:
        return len(self.entries)

    @classmethod
    def all(cls, n: int) -> List["SigmaPattern"]:
        return [cls(p) for p in itertools.product("+-0", repeat=n) if set(p) != {"0"}]

    def __str__(self):
        return "".join(self.entries)


def _sides_of(x: SignSequence, sides=None):
    return canonical_options(x) if sides is None else sides


def sigma_options(xs: Sequence[SignSequence], sigma, sides=None) -> List[Tuple[SignSequence, ...]]:
    """All sigma-options of ``xs``.

    Coordinate ``i`` moves to a smaller option for ``-``, a larger one for
    ``+`` and stays put for ``0``.  ``sides`` optionally supplies per-coordinate
    ``(left, right)`` option sets (default: canonical options).
    """
    if not isinstance(sigma, SigmaPattern):
        sigma = SigmaPattern(sigma)
    xs = tuple(surreal(x) for x in xs)
    if sigma.arity != len(xs):
        raise ValueError(f"pattern {sigma} does not match arity {len(xs)}")
    choices = []
    for i, (x, e) in enumerate(zip(xs, sigma.entries)):
        if e == "0":
            choices.append((x,))
        else:
            left, right = sides[i] if sides is not None else canonical_options(x)
            choices.append(left if e == "-" else right)
    return list(itertools.product(*choices))


@dataclass(frozen=True)
class OptionFunction:
    """One left or right option of a genetic definition.

    ``fn(f, x, *opts)`` receives the recursive function ``f`` (callable on
    argument tuples strictly simpler than ``x``), the argument tuple ``x`` and
    one sigma-option tuple per entry of ``patterns``.  It returns a number
    (SignSequence, Dyadic, int or exact Fraction) or None when it does not
    apply to that option tuple.
    """

    side: Side
    arity: int
    patterns: Tuple[SigmaPattern, ...]
    fn: Callable
    name: str = ""

    def __post_init__(self):
        pats = tuple(p if isinstance(p, SigmaPattern) else SigmaPattern(p) for p in self.patterns)
        if any(p.arity != self.arity for p in pats):
            raise ValueError(f"option {self.name}: pattern arity differs from {self.arity}")
        object.__setattr__(self, "patterns", pats)


@dataclass(frozen=True)
class GeneticDefinition:
    """``f = <left | right>`` with optional trailing arguments fixed by :meth:`bind`."""

    name: str
    arity: int
    left: Tuple[OptionFunction, ...]
    right: Tuple[OptionFunction, ...]
    uniform_claimed: bool = False
    bound: Tuple[SignSequence, ...] = ()

    def __post_init__(self):
        for opt in self.left + self.right:
            if opt.arity != self.arity:
                raise ValueError(f"{self.name}: option {opt.name} has arity {opt.arity}")
        if len(self.bound) > self.arity:
            raise ValueError("too many bound arguments")

    @property
    def free_arity(self) -> int:
        return self.arity - len(self.bound)

    @property
    def options(self) -> Tuple[OptionFunction, ...]:
        return self.left + self.right

    def bind(self, *trailing) -> "GeneticDefinition":
        vals = tuple(surreal(v) for v in trailing)
        label = ",".join(str(v.value) for v in vals)
        return replace(self, bound=self.bound + vals, name=f"{self.name}[{label}]")


def _number(v):
    """Normalise an option value to a Dyadic or a non-dyadic Fraction."""
    if isinstance(v, SignSequence):
        return v.value
    if isinstance(v, Dyadic):
        return v
    if isinstance(v, int):
        return Dyadic(v)
    if isinstance(v, Fraction):
        den = v.denominator
        return Dyadic(v.numerator, den.bit_length() - 1) if den & (den - 1) == 0 else v
    raise TypeError(f"option returned {v!r}")


def _memo_cap_from_env() -> int:
    raw = os.environ.get("SURREAL_MEMO_CAP")
    return int(raw) if raw else DEFAULT_MEMO_CAP


class GeneticEvaluator:
    """Memoised evaluator for one :class:`GeneticDefinition`.

    The memo is private to the instance; do not share an instance between
    threads.  ``memo_cap`` bounds the number of cached entries and overflow
    raises :class:`MemoOverflow` instead of evicting.
    """

    def __init__(self, definition: GeneticDefinition, memo: bool = True, memo_cap: Optional[int] = None):
        self.definition = definition
        self.use_memo = memo
        self.memo_cap = _memo_cap_from_env() if memo_cap is None else memo_cap
        self._memo: Dict[Tuple[SignSequence, ...], SignSequence] = {}

    def __call__(self, *args) -> SignSequence:
        free = tuple(surreal(a) for a in args)
        if len(free) != self.definition.free_arity:
            raise TypeError(f"{self.definition.name} takes {self.definition.free_arity} arguments")
        return self._eval(free + self.definition.bound)

    @property
    def cache_size(self) -> int:
        return len(self._memo)

    def clear(self):
        self._memo.clear()

    def _f(self, *full):
        if self.use_memo:
            # hot path: option functions mostly pass sign sequences straight through
            hit = self._memo.get(full)
            if hit is not None:
                return hit
        return self._eval(tuple(a if type(a) is SignSequence else surreal(a) for a in full))

    def _eval(self, xs: Tuple[SignSequence, ...]) -> SignSequence:
        key = xs
        if self.use_memo:
            hit = self._memo.get(key)
            if hit is not None:
                return hit
        value = self._evaluate(xs, None)
        if self.use_memo:
            if len(self._memo) >= self.memo_cap:
                raise MemoOverflow(f"memo for {self.definition.name} exceeded {self.memo_cap} entries")
            self._memo[key] = value
        return value

    def option_values(self, xs, sides=None):
        """Yield ``(option, option_tuples, value)`` for every applicable option evaluation."""
        xs = tuple(xs)
        if sides is None:
            sides = [canonical_options(x) for x in xs]
        cache = {}
        for opt in self.definition.options:
            per_pattern = []
            for pat in opt.patterns:
                if pat not in cache:
                    cache[pat] = sigma_options(xs, pat, sides)
                per_pattern.append(cache[pat])
            for combo in itertools.product(*per_pattern):
                v = opt.fn(self._f, xs, *combo)
                if v is not None:
                    yield opt, combo, _number(v)

    def _evaluate(self, xs, sides) -> SignSequence:
        lo = hi = None
        lo_src = hi_src = None
        for opt, combo, v in self.option_values(xs, sides):
            if opt.side is Side.LEFT:
                if lo is None or v > lo:
                    lo, lo_src = v, (opt.name, combo)
            elif hi is None or v < hi:
                hi, hi_src = v, (opt.name, combo)
        if lo is not None and hi is not None and not lo < hi:
            raise EmptyCutViolation(
                f"{self.definition.name} at {[str(x.value) for x in xs]}: "
                f"left value {lo} from {lo_src[0]} is not below right value {hi} from {hi_src[0]}",
                left=lo,
                right=hi,
            )
        return simplest_between(lo, hi)

    def evaluate_with_representation(self, args, reps) -> SignSequence:
        """Evaluate with the top-level options drawn from ``reps``.

        ``reps`` holds one :class:`Cut` (or None for canonical) per free
        argument; inner calls still use canonical options.
        """
        free = tuple(surreal(a) for a in args)
        if len(reps) != len(free):
            raise ValueError("one representation per free argument is required")
        xs = free + self.definition.bound
        sides = []
        for x, rep in zip(free, reps):
            if rep is None:
                sides.append(canonical_options(x))
                continue
            if not isinstance(rep, Cut):
                rep = Cut(*rep)
            if rep.value != x:
                raise InvalidCut(f"{rep} is a representation of {rep.value.value}, not {x.value}")
            sides.append((rep.left, rep.right))
        sides.extend(canonical_options(b) for b in self.definition.bound)
        return self._evaluate(xs, sides)


_default_evaluators: Dict[int, Tuple[GeneticDefinition, GeneticEvaluator]] = {}


def _evaluator_for(definition: GeneticDefinition) -> GeneticEvaluator:
    entry = _default_evaluators.get(id(definition))
    if entry is None or entry[0] is not definition:
        entry = (definition, GeneticEvaluator(definition))
        _default_evaluators[id(definition)] = entry
    return entry[1]


def eval_genetic(definition: GeneticDefinition, *args) -> SignSequence:
    """Evaluate ``definition`` at ``args`` using a per-definition default evaluator."""
    return _evaluator_for(definition)(*args)


def eval_with_representation(definition: GeneticDefinition, args, reps) -> SignSequence:
    return _evaluator_for(definition).evaluate_with_representation(args, reps)


# -- uniformity -----------------------------------------------------------


@dataclass
class UniformityReport:
    uniform_on_samples: bool
    witnesses: List[dict] = field(default_factory=list)
    checked_brackets: int = 0
    checked_representations: int = 0

    def to_dict(self) -> dict:
        return {
            "uniform_on_samples": self.uniform_on_samples,
            "checked_brackets": self.checked_brackets,
            "checked_representations": self.checked_representations,
            "witnesses": self.witnesses,
        }


def singleton_coarsenings(x: SignSequence, pool: Sequence[SignSequence]) -> List[Cut]:
    """Representations of ``x`` whose sides hold at most one pool element each.

    The canonical representation is always included first.
    """
    x = surreal(x)
    below = [y for y in pool if y < x]
    above = [y for y in pool if y > x]
    reps = [Cut.canonical(x)]
    seen = {(tuple(v.signs for v in reps[0].left), tuple(v.signs for v in reps[0].right))}
    for l in [None] + below:
        for r in [None] + above:
            L = () if l is None else (l,)
            R = () if r is None else (r,)
            if simplest_in_cut(L, R) != x:
                continue
            key = (tuple(v.signs for v in L), tuple(v.signs for v in R))
            if key not in seen:
                seen.add(key)
                reps.append(Cut(L, R))
    return reps


def _one_coordinate_coarsenings(free, pool, cache):
    # vary one coordinate at a time, the rest canonical
    n = len(free)
    for i, x in enumerate(free):
        if x not in cache:
            cache[x] = singleton_coarsenings(x, pool)
        for rep in cache[x]:
            yield tuple(rep if j == i else None for j in range(n))


def _show(v):
    return str(v.value) if isinstance(v, SignSequence) else str(v)


def check_uniformity(
    definition: GeneticDefinition,
    samples: Iterable,
    coarsenings=None,
    pool: Optional[Sequence[SignSequence]] = None,
    evaluator: Optional[GeneticEvaluator] = None,
    check_brackets: bool = True,
) -> UniformityReport:
    """Test both uniformity conditions on finitely many samples.

    Bracketing: every left option evaluated at arbitrary pool values lying on
    the required side of each free coordinate stays below ``f(x)``, every right
    option above.  Representation independence: evaluating with each supplied
    representation reproduces the canonical value.

    ``coarsenings`` maps a free-argument tuple to an iterable of per-coordinate
    representation tuples; by default every combination of
    :func:`singleton_coarsenings` over ``pool`` is tried on one coordinate
    at a time while the other coordinates keep their canonical options.  The first
    counterexample of each kind is reported.
    """
    ev = evaluator or GeneticEvaluator(definition)
    pool = sorted(all_sign_sequences(4) if pool is None else (surreal(p) for p in pool))
    pool_keys = [p.sort_key for p in pool]
    report = UniformityReport(True)
    failed = set()
    rep_cache: Dict[SignSequence, List[Cut]] = {}
    nfree = definition.free_arity
    bound = definition.bound

    def fail(kind, info):
        report.uniform_on_samples = False
        if kind not in failed:
            failed.add(kind)
            report.witnesses.append(dict(kind=kind, **info))

    for sample in samples:
        free = (surreal(sample),) if isinstance(sample, (SignSequence, str, int, Dyadic)) else tuple(surreal(s) for s in sample)
        xs = free + bound
        fx = ev._eval(xs)
        fxv = fx.value

        if check_brackets:
            sides = []
            for i, x in enumerate(xs):
                if i < nfree:
                    k = bisect.bisect_left(pool_keys, x.sort_key)
                    j = bisect.bisect_right(pool_keys, x.sort_key)
                    sides.append((pool[:k], pool[j:]))
                else:
                    sides.append(canonical_options(x))
            for opt, combo, v in ev.option_values(xs, sides):
                report.checked_brackets += 1
                ok = v < fxv if opt.side is Side.LEFT else v > fxv
                if not ok:
                    fail("bracketing", dict(
                        args=[_show(x) for x in free],
                        option=opt.name,
                        option_tuples=[[_show(y) for y in t] for t in combo],
                        option_value=str(v),
                        value=str(fxv),
                    ))

        if coarsenings is None:
            rep_iter = _one_coordinate_coarsenings(free, pool, rep_cache)
        else:
            rep_iter = coarsenings(free) if callable(coarsenings) else coarsenings.get(free, ())
        for reps in rep_iter:
            reps = tuple(reps)
            report.checked_representations += 1
            try:
                got = ev.evaluate_with_representation(free, reps)
            except EmptyCutViolation as exc:
                fail("representation", dict(
                    args=[_show(x) for x in free],
                    representation=[str(r) for r in reps],
                    error=str(exc),
                    value=str(fxv),
                ))
                continue
            if got != fx:
                fail("representation", dict(
                    args=[_show(x) for x in free],
                    representation=[str(r) for r in reps],
                    got=str(got.value),
                    value=str(fxv),
                ))
    return report


# -- catalog --------------------------------------------------------------

L, R = Side.LEFT, Side.RIGHT


def _opt(side, arity, patterns, name):
    def deco(fn):
        return OptionFunction(side, arity, tuple(patterns), fn, name)
    return deco


def _add1() -> GeneticDefinition:
    # x + 1 = < x^L + 1, x | x^R + 1 >
    left = (
        OptionFunction(L, 1, ("-",), lambda f, x, o: f(*o), "f(xL)"),
        OptionFunction(L, 1, (), lambda f, x: x[0], "x"),
    )
    right = (OptionFunction(R, 1, ("+",), lambda f, x, o: f(*o), "f(xR)"),)
    return GeneticDefinition("add1", 1, left, right, uniform_claimed=True)


def _sum2() -> GeneticDefinition:
    left = (
        OptionFunction(L, 2, ("-0",), lambda f, x, o: f(*o), "f(xL,y)"),
        OptionFunction(L, 2, ("0-",), lambda f, x, o: f(*o), "f(x,yL)"),
    )
    right = (
        OptionFunction(R, 2, ("+0",), lambda f, x, o: f(*o), "f(xR,y)"),
        OptionFunction(R, 2, ("0+",), lambda f, x, o: f(*o), "f(x,yR)"),
    )
    return GeneticDefinition("sum2", 2, left, right, uniform_claimed=True)


def _prod_option(f, x, o):
    # f(x', y) + f(x, y') - f(x', y')
    (xo, yo) = o
    return f(xo, x[1]).value + f(x[0], yo).value - f(xo, yo).value


def _prod2() -> GeneticDefinition:
    left = (
        OptionFunction(L, 2, ("--",), _prod_option, "xLy+xyL-xLyL"),
        OptionFunction(L, 2, ("++",), _prod_option, "xRy+xyR-xRyR"),
    )
    right = (
        OptionFunction(R, 2, ("-+",), _prod_option, "xLy+xyR-xLyR"),
        OptionFunction(R, 2, ("+-",), _prod_option, "xRy+xyL-xRyL"),
    )
    return GeneticDefinition("prod2", 2, left, right, uniform_claimed=True)


def _neg() -> GeneticDefinition:
    left = (OptionFunction(L, 1, ("+",), lambda f, x, o: f(*o), "f(xR)"),)
    right = (OptionFunction(R, 1, ("-",), lambda f, x, o: f(*o), "f(xL)"),)
    return GeneticDefinition("neg", 1, left, right, uniform_claimed=True)


def _omnific_floor() -> GeneticDefinition:
    left = (OptionFunction(L, 1, (), lambda f, x: x[0].value - 1, "x-1"),)
    right = (OptionFunction(R, 1, (), lambda f, x: x[0].value + 1, "x+1"),)
    return GeneticDefinition("omnific_floor", 1, left, right, uniform_claimed=True)


_FLOOR_EVAL = None


def _omnific(x: SignSequence) -> Dyadic:
    global _FLOOR_EVAL
    if _FLOOR_EVAL is None:
        _FLOOR_EVAL = GeneticEvaluator(_omnific_floor(), memo=False)
    return _FLOOR_EVAL(x).value


def _floor_minus_x() -> GeneticDefinition:
    # [x] - x = < -1, [x] - x^R | 1, [x] - x^L >
    left = (
        OptionFunction(L, 1, (), lambda f, x: -1, "-1"),
        OptionFunction(L, 1, ("+",), lambda f, x, o: _omnific(x[0]) - o[0].value, "[x]-xR"),
    )
    right = (
        OptionFunction(R, 1, (), lambda f, x: 1, "1"),
        OptionFunction(R, 1, ("-",), lambda f, x, o: _omnific(x[0]) - o[0].value, "[x]-xL"),
    )
    return GeneticDefinition("floor_minus_x", 1, left, right, uniform_claimed=True)


def _pathological_point() -> GeneticDefinition:
    # < -|x| | g1(x^L), g2(x^R) >  with g1(z) = 0 iff z >= 0 else 2, g2(z) = 0 iff z <= 0 else 2
    left = (OptionFunction(L, 1, (), lambda f, x: -abs(x[0].value), "-|x|"),)
    right = (
        OptionFunction(R, 1, ("-",), lambda f, x, o: 0 if o[0].value >= 0 else 2, "g1(xL)"),
        OptionFunction(R, 1, ("+",), lambda f, x, o: 0 if o[0].value <= 0 else 2, "g2(xR)"),
    )
    return GeneticDefinition("pathological_point", 1, left, right, uniform_claimed=True)


def _family_23(depth: Optional[int] = None) -> GeneticDefinition:
    """Clamp family around 2/3 indexed by dyadic thresholds.

    With ``depth=None`` each side collapses to its pointwise supremum
    (infimum): ``sup_r min(z, r)`` over dyadic ``r < 2/3`` is ``z`` when
    ``z < 2/3`` and the unattained bound 2/3 otherwise, which determines the
    same cut.  With an integer ``depth`` the family is listed explicitly over
    the dyadic thresholds of birthday at most ``depth``.
    """
    d = TWO_THIRDS
    if depth is None:
        left = (OptionFunction(L, 1, ("-",), lambda f, x, o: o[0].value if o[0].value < d else d, "sup_r min(xL,r)"),)
        right = (OptionFunction(R, 1, ("+",), lambda f, x, o: o[0].value if o[0].value > d else d, "inf_s max(xR,s)"),)
        return GeneticDefinition("family_23", 1, left, right, uniform_claimed=True)
    left, right = [], []
    for t in all_sign_sequences(depth):
        r = t.value
        if r < d:
            left.append(OptionFunction(L, 1, ("-",), lambda f, x, o, r=r: min(o[0].value, r), f"min(xL,{r})"))
        else:
            right.append(OptionFunction(R, 1, ("+",), lambda f, x, o, r=r: max(o[0].value, r), f"max(xR,{r})"))
    return GeneticDefinition(f"family_23@{depth}", 1, tuple(left), tuple(right), uniform_claimed=True)


def _concat2() -> GeneticDefinition:
    # x:y = < x^L, x:y^L | x^R, x:y^R >  (x must use its canonical representation)
    left = (
        OptionFunction(L, 2, ("-0",), lambda f, x, o: o[0], "xL"),
        OptionFunction(L, 2, ("0-",), lambda f, x, o: f(*o), "x:yL"),
    )
    right = (
        OptionFunction(R, 2, ("+0",), lambda f, x, o: o[0], "xR"),
        OptionFunction(R, 2, ("0+",), lambda f, x, o: f(*o), "x:yR"),
    )
    return GeneticDefinition("concat2", 2, left, right, uniform_claimed=False)


_CATALOG = {
    "add1": _add1,
    "sum2": _sum2,
    "prod2": _prod2,
    "neg": _neg,
    "omnific_floor": _omnific_floor,
    "floor_minus_x": _floor_minus_x,
    "pathological_point": _pathological_point,
    "family_23": _family_23,
    "concat2": _concat2,
}

BUILTINS = tuple(_CATALOG) + ("concat_right",)
_cache: Dict[tuple, GeneticDefinition] = {}


def builtin(name: str, *params) -> GeneticDefinition:
    """Look up a catalog definition.

    ``concat_right`` takes the fixed right operand ``y``; ``family_23``
    optionally takes an explicit threshold depth.
    """
    key = (name,) + tuple(str(p) for p in params)
    if key in _cache:
        return _cache[key]
    if name == "concat_right":
        if len(params) != 1:
            raise TypeError("concat_right needs the right operand y")
        defn = _concat2().bind(params[0])
        defn = replace(defn, name=f"concat_right({surreal(params[0]).value})")
    elif name in _CATALOG:
        defn = _CATALOG[name](*params)
    else:
        raise UnknownBuiltin(f"unknown builtin {name!r}; known: {', '.join(BUILTINS)}")
    _cache[key] = defn
    return defn
