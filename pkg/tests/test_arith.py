from hypothesis import given, strategies as st

from conftest import oracle_value
from surreal.arith import add, add_genetic, mul, mul_genetic, neg, neg_genetic, pow_nat, sub
from surreal.core import SignSequence, parse_surreal
from surreal.genetic import GeneticEvaluator, builtin

import pytest

signs = st.text(alphabet="+-", max_size=12)


@given(signs, signs)
def test_production_ops_match_closed_form(a, b):
    x, y = SignSequence(a), SignSequence(b)
    qa, qb = oracle_value(a), oracle_value(b)
    assert oracle_value(add(x, y).signs) == qa + qb
    assert oracle_value(sub(x, y).signs) == qa - qb
    assert oracle_value(mul(x, y).signs) == qa * qb
    assert oracle_value(neg(x).signs) == -qa


@given(st.text(alphabet="+-", max_size=5), st.text(alphabet="+-", max_size=5))
def test_genetic_paths_agree(a, b):
    assert add_genetic(a, b) == add(a, b)
    assert mul_genetic(a, b) == mul(a, b)
    assert neg_genetic(a) == neg(a)


def test_examples():
    v = parse_surreal
    assert add("1/2", "1/4") == v("3/4")
    assert mul("-3/2", "1/2") == v("-3/4")
    assert pow_nat("1/2", 3) == v("1/8")
    assert pow_nat(5, 0) == v("1")
    with pytest.raises(ValueError):
        pow_nat(2, -1)


def test_custom_evaluator_is_used():
    ev = GeneticEvaluator(builtin("sum2"))
    add_genetic(1, 1, evaluator=ev)
    assert ev.cache_size > 0
