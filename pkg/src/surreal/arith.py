"""Exact arithmetic on finite-birthday surreals.

The production operations go through the dyadic twin of each sign sequence.
``add_genetic``/``mul_genetic``/``neg_genetic`` run the recursive definitions
instead and exist so the two paths can be compared.
"""

from __future__ import annotations

from typing import Optional

from .core import SignSequence, from_dyadic, negate_signs, surreal
from .genetic import GeneticEvaluator, builtin

__all__ = [
    "add",
    "sub",
    "neg",
    "mul",
    "pow_nat",
    "add_genetic",
    "mul_genetic",
    "neg_genetic",
]


def add(x, y) -> SignSequence:
    return from_dyadic(surreal(x).value + surreal(y).value)


def neg(x) -> SignSequence:
    return negate_signs(surreal(x))


def sub(x, y) -> SignSequence:
    return add(x, neg(y))


def mul(x, y) -> SignSequence:
    return from_dyadic(surreal(x).value * surreal(y).value)


def pow_nat(x, m: int) -> SignSequence:
    if not isinstance(m, int) or m < 0:
        raise ValueError("exponent must be a natural number")
    return from_dyadic(surreal(x).value ** m)


_evaluators = {}


def _ev(name: str, evaluator: Optional[GeneticEvaluator]) -> GeneticEvaluator:
    if evaluator is not None:
        return evaluator
    if name not in _evaluators:
        _evaluators[name] = GeneticEvaluator(builtin(name))
    return _evaluators[name]


def add_genetic(x, y, evaluator: Optional[GeneticEvaluator] = None) -> SignSequence:
    return _ev("sum2", evaluator)(x, y)


def mul_genetic(x, y, evaluator: Optional[GeneticEvaluator] = None) -> SignSequence:
    return _ev("prod2", evaluator)(x, y)


def neg_genetic(x, evaluator: Optional[GeneticEvaluator] = None) -> SignSequence:
    return _ev("neg", evaluator)(x)
