"""Independent oracles shared by the test modules.

Nothing here calls the sign-walk code in ``surreal.core``; values are
computed from the closed form for finite sign expansions and cuts are
searched in birthday order.
"""

import itertools
from fractions import Fraction

import pytest


def oracle_value(signs: str) -> Fraction:
    """Closed form: a run of k equal leading signs gives +-k, each later sign adds +-2^-j."""
    if not signs:
        return Fraction(0)
    first = signs[0]
    k = len(signs) - len(signs.lstrip(first))
    v = Fraction(k if first == "+" else -k)
    for j, s in enumerate(signs[k:], start=1):
        v += Fraction(1 if s == "+" else -1, 2**j)
    return v


def all_signs(max_len: int):
    for n in range(max_len + 1):
        for t in itertools.product("+-", repeat=n):
            yield "".join(t)


def oracle_simplest(lo=None, hi=None, max_len=16) -> str:
    """Birthday-order search for the simplest sign string with value in (lo, hi)."""
    for s in all_signs(max_len):
        v = oracle_value(s)
        if (lo is None or v > lo) and (hi is None or v < hi):
            return s
    raise AssertionError("search bound too small")


def oracle_expansion(cmp_root, n: int) -> str:
    """First ``n`` signs of a number given ``cmp_root(v) = sign(root - v)``.

    Each step compares the root with the value of the signs collected so far
    (midpoint refinement: integer steps first, then halving).
    """
    signs = ""
    for _ in range(n):
        c = cmp_root(oracle_value(signs))
        if c == 0:
            break
        signs += "+" if c > 0 else "-"
    return signs


def fsign(v) -> int:
    return (v > 0) - (v < 0)


@pytest.fixture(scope="session")
def small_signs():
    return list(all_signs(4))


# (coefficients lowest first, target, interval) with exactly one solution inside
ROOT_FIXTURES = [
    ("[-1,2]", "0", ("-inf", "+inf")),
    ("[-2,3]", "0", ("-inf", "+inf")),
    ("[0,3]", "1", ("-inf", "+inf")),
    ("[1,-5]", "0", ("-inf", "+inf")),
    ("[1/2,1]", "3/4", ("-inf", "+inf")),
    ("[-2,0,1]", "0", ("0", "+inf")),
    ("[-2,0,1]", "0", ("-inf", "0")),
    ("[-4,0,1]", "0", ("0", "3")),
    ("[-3,0,1]", "0", ("1", "2")),
    ("[-1,1,1]", "0", ("0", "1")),
    ("[-3,0,2]", "0", ("0", "2")),
    ("[0,0,1]", "1/2", ("0", "1")),
    ("[5,0,-1]", "0", ("0", "+inf")),
    ("[0,-1,1]", "0", ("1/2", "3")),
]


def root_comparator(coeffs, target, lo, hi):
    """``sign(root - v)`` for the single solution of ``p(v) = target`` in ``(lo, hi)``.

    Uses only Fraction evaluation: outside the interval the answer is fixed,
    inside it is read from the sign of ``p - target`` relative to its sign
    just above ``lo``.
    """
    def p(v):
        return sum(c * v**i for i, c in enumerate(coeffs)) - target

    # orientation: sign of p - target between lo and the root
    if lo is None:
        probe = Fraction(-(2**20))
    else:
        probe = lo if p(lo) != 0 else lo + Fraction(1, 2**20)
    below = fsign(p(probe))

    def cmp(v):
        if lo is not None and v <= lo:
            return 1
        if hi is not None and v >= hi:
            return -1
        s = fsign(p(v))
        return 0 if s == 0 else (1 if s == below else -1)

    return cmp


# -- acceptance reporting ------------------------------------------------------

ACCEPTANCE_LINES = {}


@pytest.fixture
def verdict(request):
    """Record one summary line per acceptance criterion, pass or fail."""
    number = request.node.get_closest_marker("criterion").args[0]
    state = {"detail": ""}
    yield state
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    ACCEPTANCE_LINES[number] = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {state['detail']}"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
