import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import all_signs, oracle_simplest, oracle_value
from surreal.core import (
    Cut,
    ExtendedBound,
    NEG_INF,
    POS_INF,
    Ordering,
    SignSequence,
    all_sign_sequences,
    birthday,
    canonical_options,
    compare,
    concat,
    from_dyadic,
    inverse_cofinality_witness,
    is_perp,
    is_simpler,
    negate_signs,
    parse_surreal,
    simplest_between,
    simplest_in_cut,
    surreal,
    to_dyadic,
)
from surreal.dyadic import Dyadic
from surreal.errors import InvalidCut, NotAnOption

S = SignSequence
sign_strings = st.text(alphabet="+-", max_size=14)


def v(text):
    return parse_surreal(text)


# -- order ----------------------------------------------------------------


@pytest.mark.parametrize("x, y, want", [("+-", "+-+", Ordering.LESS), ("-", "+", Ordering.LESS), ("+-", "+-", Ordering.EQUAL), ("+", "+-", Ordering.GREATER)])
def test_compare_examples(x, y, want):
    assert compare(S(x), S(y)) == want


def test_compare_is_a_total_order_matching_values():
    seqs = [S(s) for s in all_signs(8)]
    vals = [oracle_value(s.signs) for s in seqs]
    for i in range(0, len(seqs), 7):
        for j in range(len(seqs)):
            c = compare(seqs[i], seqs[j])
            assert int(c) == (vals[i] > vals[j]) - (vals[i] < vals[j])
            assert (seqs[i] < seqs[j]) == (c == Ordering.LESS)


def test_sort_order_is_value_order():
    seqs = sorted(S(s) for s in all_signs(8))
    vals = [oracle_value(s.signs) for s in seqs]
    assert vals == sorted(vals)
    assert len(set(vals)) == len(vals)


# -- simplicity -----------------------------------------------------------


def test_is_simpler_examples():
    assert is_simpler(S("+"), S("+-"))
    assert not is_simpler(S("+-"), S("+"))
    assert is_simpler(S(""), S("-+"))
    assert not is_simpler(S("+"), S("+"))


def test_birthday_examples():
    assert [birthday(S(s)) for s in ("", "+-", "+-+-")] == [0, 2, 4]


def test_is_perp_examples():
    assert is_perp(v("1/2"), v("3/2"))
    assert not is_perp(v("0"), v("1"))
    assert not is_perp(v("1/2"), v("1/2"))


# -- dyadic bridge ----------------------------------------------------------


@pytest.mark.parametrize("signs, value", [("+-", "1/2"), ("", "0"), ("+-+-", "5/8"), ("--+", "-3/2"), ("+++", "3")])
def test_dyadic_bridge_examples(signs, value):
    assert to_dyadic(S(signs)) == Dyadic.parse(value)
    assert from_dyadic(Dyadic.parse(value)) == S(signs)


def test_round_trip_exhaustive():
    prev = None
    for s in sorted(all_sign_sequences(10)):
        d = to_dyadic(s)
        assert d.to_fraction() == oracle_value(s.signs)
        assert from_dyadic(d) == s
        if prev is not None:
            assert prev < d
        prev = d


@given(st.integers(-5000, 5000), st.integers(0, 40))
def test_from_dyadic_matches_value(n, k):
    d = Dyadic(n, k)
    assert oracle_value(from_dyadic(d).signs) == d.to_fraction()


def test_surreal_coercions():
    assert surreal(3) == S("+++")
    assert surreal(Fraction(-1, 2)) == S("-+")
    assert surreal("5/8") == S("+-+-")
    assert surreal("-+") == S("-+")
    with pytest.raises(TypeError):
        surreal(0.5)


# -- canonical options and cuts --------------------------------------------


def test_canonical_options_examples():
    assert canonical_options(S("")) == ((), ())
    left, right = canonical_options(v("5/8"))
    assert [x.value for x in left] == [0, Fraction(1, 2)]
    assert [x.value for x in right] == [Fraction(3, 4), 1]
    left, right = canonical_options(v("2"))
    assert [x.value for x in left] == [0, 1] and right == ()


def test_canonical_representation_recovers_value():
    for s in all_sign_sequences(8):
        left, right = canonical_options(s)
        assert all(is_simpler(y, s) and y < s for y in left)
        assert all(is_simpler(y, s) and y > s for y in right)
        assert len(left) + len(right) == len(s)
        assert simplest_in_cut(left, right) == s


def test_simplest_in_cut_examples():
    assert simplest_in_cut([], []) == S("")
    assert simplest_in_cut([v("0")], [v("1")]) == S("+-")
    assert simplest_in_cut([v("1")], []) == S("++")
    assert simplest_in_cut([], [v("-3/4")]) == S("-")


def test_simplest_in_cut_rejects_bad_cut():
    with pytest.raises(InvalidCut):
        simplest_in_cut([v("1")], [v("1/2")])
    with pytest.raises(InvalidCut):
        Cut((v("1"),), (v("1"),))


def test_simplest_in_cut_against_search():
    pool = list(all_sign_sequences(5))
    for lo, hi in itertools.combinations(sorted(pool), 2):
        z = simplest_in_cut([lo], [hi])
        assert z.signs == oracle_simplest(oracle_value(lo.signs), oracle_value(hi.signs))
        # no strict prefix of z lies strictly inside
        assert all(not (lo < z.prefix(k) < hi) for k in range(len(z)))
    for x in pool:
        assert simplest_in_cut([x], []).signs == oracle_simplest(oracle_value(x.signs), None)
        assert simplest_in_cut([], [x]).signs == oracle_simplest(None, oracle_value(x.signs))


def test_simplest_in_cut_with_larger_sides():
    pool = sorted(all_sign_sequences(3))
    for i in range(len(pool) + 1):
        for j in range(i, len(pool) + 1):
            left, right = pool[:i][-3:], pool[j:][:3]
            z = simplest_in_cut(left, right)
            lo = oracle_value(left[-1].signs) if left else None
            hi = oracle_value(right[0].signs) if right else None
            assert z.signs == oracle_simplest(lo, hi)


def test_simplest_between_numeric_bounds():
    assert simplest_between(Fraction(1, 4), Fraction(3, 2)) == S("+")
    assert simplest_between(Fraction(2, 3), None) == S("+")
    assert simplest_between(Fraction(1, 3), Fraction(2, 5)) == v("3/8")
    assert simplest_between(None, None) == S("")
    with pytest.raises(InvalidCut):
        simplest_between(Fraction(1), Fraction(1))


def test_cut_normalises_and_prints():
    c = Cut([v("1/4"), v("0"), v("1/4")], [v("3/4")])
    assert [x.value for x in c.left] == [0, Fraction(1, 4)]
    assert c.value == v("1/2")
    assert str(c) == "<0, 1/4 | 3/4>"
    assert Cut.canonical(v("5/8")).value == v("5/8")


# -- inverse cofinality -----------------------------------------------------


def test_inverse_cofinality_examples():
    rep = Cut([v("1/4")], [v("3/4")])
    assert inverse_cofinality_witness(v("1/2"), rep, v("0")) == v("1/4")
    assert inverse_cofinality_witness(v("1/2"), rep, v("1")) == v("3/4")
    x = v("5/8")
    assert inverse_cofinality_witness(x, Cut.canonical(x), v("1/2")) == v("1/2")


def test_inverse_cofinality_errors():
    rep = Cut([v("1/4")], [v("3/4")])
    with pytest.raises(NotAnOption):
        inverse_cofinality_witness(v("1/2"), rep, v("1/4"))
    with pytest.raises(InvalidCut):
        inverse_cofinality_witness(v("1/2"), Cut([v("0")], [v("1/4")]), v("0"))


def test_inverse_cofinality_exhaustive():
    pool = sorted(all_sign_sequences(4))
    for x in all_sign_sequences(4):
        below = [y for y in pool if y < x]
        above = [y for y in pool if y > x]
        for i in range(len(below) + 1):
            for j in range(len(above) + 1):
                # the i largest lower and j smallest upper elements
                left, right = below[len(below) - i:], above[:j]
                if simplest_in_cut(left, right) != x:
                    continue
                rep = Cut(left, right)
                for k in range(len(x)):
                    z = x.prefix(k)
                    y = inverse_cofinality_witness(x, rep, z)
                    assert (z <= y < x and y in rep.left) or (x < y <= z and y in rep.right)


# -- concatenation and negation ---------------------------------------------


def test_concat_examples():
    assert concat(v("0"), v("1")) == v("1")
    assert concat(v("1/2"), v("1")) == v("3/4")
    assert concat(v("-1"), v("1")) == v("-1/2")


@given(sign_strings, sign_strings, sign_strings)
def test_concat_laws(a, b, c):
    x, y, z = S(a), S(b), S(c)
    assert concat(concat(x, y), z) == concat(x, concat(y, z))
    assert concat(x, S("")) == x
    if b:
        assert is_simpler(x, concat(x, y))


def test_concat_one_lemma():
    one = S("+")
    for x in all_sign_sequences(10):
        x1 = concat(x, one)
        assert x1 > x and is_simpler(x, x1)
        for k in range(len(x)):
            y = x.prefix(k)
            if y > x:
                assert x1 < y


@pytest.mark.parametrize("x, want", [("1/2", "-1/2"), ("0", "0"), ("3/4", "-3/4")])
def test_negate_examples(x, want):
    assert negate_signs(v(x)) == v(want)


@given(sign_strings, sign_strings)
def test_negate_reverses_order(a, b):
    x, y = S(a), S(b)
    assert negate_signs(negate_signs(x)) == x
    assert compare(negate_signs(x), negate_signs(y)) == Ordering(-int(compare(x, y)))
    assert -x == negate_signs(x)


# -- misc -------------------------------------------------------------------


def test_extended_bounds_order():
    one = ExtendedBound.finite(v("1"))
    assert NEG_INF < one < POS_INF
    assert NEG_INF < v("-100") and POS_INF > v("100")
    assert ExtendedBound.coerce("-inf") == NEG_INF and ExtendedBound.coerce("+inf") == POS_INF
    assert str(one) == "1" and str(NEG_INF) == "-inf"
    assert one.as_number() == 1 and POS_INF.as_number() is None


def test_all_sign_sequences_counts():
    assert len(list(all_sign_sequences(6))) == 127
    assert len(list(all_sign_sequences(3, 3))) == 8


def test_sign_sequence_rejects_bad_input():
    with pytest.raises(ValueError):
        SignSequence("+x")


def test_slicing_and_prefix():
    x = S("+-+-")
    assert x[:2] == S("+-") and x.prefix(3) == S("+-+")
