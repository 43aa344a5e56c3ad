from fractions import Fraction

from hypothesis import given, strategies as st

from surreal import qpoly as Q

small = st.fractions(min_value=-8, max_value=8, max_denominator=8)
polys = st.lists(small, max_size=5).map(Q.qpoly)
points = st.fractions(min_value=-10, max_value=10, max_denominator=16)


@given(polys, polys, points)
def test_ring_operations_commute_with_evaluation(p, q, x):
    ev = Q.evaluate
    assert ev(Q.add(p, q), x) == ev(p, x) + ev(q, x)
    assert ev(Q.sub(p, q), x) == ev(p, x) - ev(q, x)
    assert ev(Q.mul(p, q), x) == ev(p, x) * ev(q, x)
    assert ev(Q.power(p, 3), x) == ev(p, x) ** 3


@given(polys, polys)
def test_division_identity(p, q):
    if not q:
        return
    quo, rem = Q.divmod_(p, q)
    assert Q.add(Q.mul(quo, q), rem) == p
    assert Q.degree(rem) < Q.degree(q)


def test_trimming_and_degree():
    assert Q.qpoly([1, 2, 0, 0]) == (1, 2)
    assert Q.degree(()) == -1
    assert Q.derivative(Q.qpoly([5, 0, 3])) == (0, 6)


def test_squarefree_and_gcd():
    p = Q.mul(Q.power((-1, 1), 2), (2, 1))  # (x-1)^2 (x+2)
    assert Q.monic(Q.squarefree(p)) == Q.monic(Q.mul((-1, 1), (2, 1)))
    assert Q.monic(Q.gcd(p, Q.derivative(p))) == (-1, 1)


def brute_roots(p, lo, hi, n=4000):
    """Sign changes (and zeros) of ``p`` on a fine grid; counts simple roots."""
    count = 0
    step = (hi - lo) / n
    prev = Q.evaluate(p, lo + step / 2)
    for k in range(1, n):
        cur = Q.evaluate(p, lo + step / 2 + k * step)
        if cur == 0 or (prev != 0 and (cur > 0) != (prev > 0)):
            count += 1
        prev = cur
    return count


def test_sturm_count_matches_grid():
    for roots in ([0, 1, 3], [-2, Fraction(1, 3), 5], [Fraction(-7, 3)], [1, 2, 3, 4]):
        p = (Fraction(1),)
        for r in roots:
            p = Q.mul(p, (-Fraction(r), Fraction(1)))
        seq = Q.sturm(p)
        assert Q.count_roots(seq, Fraction(-9), Fraction(9)) == len(roots)
        assert brute_roots(p, Fraction(-9), Fraction(9)) == len(roots)


def test_roots_between_isolates_each_root():
    p = Q.qpoly([-2, 0, 1])
    pairs = Q.roots_between(p, Q.NEG_INF, Q.POS_INF)
    assert len(pairs) == 2
    for lo, hi in pairs:
        assert Q.sign_at(p, lo) * Q.sign_at(p, hi) < 0
        assert lo * lo < 2 < hi * hi or hi * hi < 2 < lo * lo
    exact = Q.roots_between(Q.qpoly([0, -1, 1]), Fraction(-4), Fraction(4))
    assert (Fraction(0), Fraction(0)) in exact and (Fraction(1), Fraction(1)) in exact
    assert Q.roots_between(Q.qpoly([1, 0, 1]), Q.NEG_INF, Q.POS_INF) == []


def test_cauchy_bound_is_power_of_two_above_roots():
    p = Q.qpoly([-100, 0, 1])
    b = Q.cauchy_bound(p)
    assert b & (b - 1) == 0 and b > 10


def test_sign_at_infinity():
    p = Q.qpoly([1, 0, -1, 1])
    assert Q.sign_at(p, Q.POS_INF) == 1 and Q.sign_at(p, Q.NEG_INF) == -1


def test_sign_relative_to_root():
    sf = Q.qpoly([-2, 0, 1])
    lo, hi = Fraction(1), Fraction(2)
    assert Q.sign_relative_to_root(sf, lo, hi, Fraction(7, 5)) == -1
    assert Q.sign_relative_to_root(sf, lo, hi, Fraction(3, 2)) == 1
    assert Q.sign_relative_to_root(sf, lo, hi, Fraction(0)) == -1
