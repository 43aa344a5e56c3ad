"""Acceptance suite: one test per criterion, each with its time limit.

Expected values come from the closed-form oracles in ``conftest``; a summary
line per criterion is printed at the end of the run.
"""

import random
import time
from fractions import Fraction

import pytest

from conftest import ROOT_FIXTURES, all_signs, oracle_expansion, oracle_value, root_comparator
from surreal._grid import grid_eval
from surreal.core import Cut, SignSequence, all_sign_sequences, concat, parse_surreal
from surreal.genetic import GeneticEvaluator, builtin, check_uniformity
from surreal.lab import (
    closure_under_ops,
    compare_two_thirds,
    concat_sequences,
    is_initial_finite,
    sup_escape_experiment,
    two_thirds_prefix,
)
from surreal.nimber import (
    NimPolynomial,
    add_table_mex,
    is_closed_field_segment,
    is_initial_nim,
    mul_table_mex,
    nim_closure,
    nim_inverse,
    nim_mul,
    simplest_irreducible,
    zero_set,
)
from surreal.poly import SurrealPolynomial, find_root_genetic, reciprocal, root_sign_expansion, sqrt

S = SignSequence
TWO_THIRDS = Fraction(2, 3)


def v(text):
    return parse_surreal(text)


def val(x):
    return oracle_value(x.signs)


class Clock:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


@pytest.mark.criterion(1)
def test_concatenation_table(verdict):
    one = S("+")
    with Clock() as clock:
        checks = [(concat(v("0"), one), Fraction(1)), (concat(v("1/2"), one), Fraction(3, 4))]
        for a in range(11):
            checks.append((concat(S("+" * a), one), Fraction(a + 1)))
            checks.append((concat(S("-" * (a + 1)), one), Fraction(-2 * a - 1, 2)))
        bad = [(x.signs, want) for x, want in checks if val(x) != want]
    verdict["detail"] = f"{len(checks)} concatenations exact, {clock.seconds:.3f}s (limit 1s)"
    assert not bad
    assert clock.seconds < 1


@pytest.mark.criterion(2)
def test_two_thirds_sequences(verdict):
    with Clock() as clock:
        rows = concat_sequences(20)
        # independent check with Fractions and a decisive prefix of 2/3
        for r in rows:
            a, b, c = val(r.a), val(r.b), val(r.c)
            c_next = oracle_value(r.a.signs + "+-" + "-")
            assert c < a < c_next < TWO_THIRDS < b
            n = len(r.b) + 1
            d_prefix = two_thirds_prefix(n)
            assert val(S(r.b.signs)) > val(d_prefix) and int(compare_two_thirds(r.b)) == 1
    verdict["detail"] = f"n<=20, {sum(len(r.checks) for r in rows)} inequalities, {clock.seconds:.3f}s (limit 1s)"
    assert all(r.ok for r in rows)
    assert clock.seconds < 1


@pytest.mark.criterion(3)
def test_genetic_arithmetic_matches_oracle(verdict):
    with Clock() as clock:
        add, mul = GeneticEvaluator(builtin("sum2")), GeneticEvaluator(builtin("prod2"))
        pool = list(all_sign_sequences(6))
        exhaustive = 0
        for x in pool:
            for y in pool:
                assert val(add(x, y)) == val(x) + val(y)
                assert val(mul(x, y)) == val(x) * val(y)
                exhaustive += 1
        rng = random.Random(20240601)

        def word():
            return "".join(rng.choice("+-") for _ in range(rng.randint(0, 12)))

        pairs = [(word(), word()) for _ in range(10_000)]
        sums, prods = grid_eval("sum2", pairs), grid_eval("prod2", pairs)
        for (a, b), s, p in zip(pairs, sums, prods):
            assert val(s) == oracle_value(a) + oracle_value(b)
            assert val(p) == oracle_value(a) * oracle_value(b)
        # the batched grid and the generic engine agree on a slice of the sample
        for (a, b), s in list(zip(pairs, sums))[:150]:
            assert add(S(a), S(b)) == s
    verdict["detail"] = f"{exhaustive} exhaustive + {len(pairs)} sampled pairs, {clock.seconds:.1f}s (limit 60s)"
    assert exhaustive == 127 * 127
    assert clock.seconds < 60


@pytest.mark.criterion(4)
def test_uniformity(verdict):
    with Clock() as clock:
        pool = list(all_sign_sequences(4))
        pairs = [(x, y) for x in pool for y in pool]
        sum_report = check_uniformity(builtin("sum2"), pairs, pool=pool)
        prod_report = check_uniformity(builtin("prod2"), pairs, pool=pool)
        x = v("1/2")
        rep = Cut([v("1/4")], [v("3/4")])
        concat_report = check_uniformity(
            builtin("concat_right", 1), [x], coarsenings={(x,): [(rep,)]}, check_brackets=False
        )
    witness = concat_report.witnesses[0] if concat_report.witnesses else {}
    verdict["detail"] = (
        f"sum2/prod2 uniform on {len(pairs)} pairs; concat_right(1) at 1/2 with {rep} gives "
        f"{witness.get('got')} vs {witness.get('value')}, {clock.seconds:.1f}s (limit 30s)"
    )
    assert sum_report.uniform_on_samples and prod_report.uniform_on_samples
    assert not concat_report.uniform_on_samples
    assert witness["got"] == "5/8" and witness["value"] == "3/4"
    assert clock.seconds < 30


@pytest.mark.criterion(5)
def test_root_extraction(verdict):
    with Clock() as clock:
        recip = reciprocal(3, 32)
        root = sqrt(2, 32)
        want_recip = oracle_expansion(lambda q: (Fraction(1, 3) > q) - (Fraction(1, 3) < q), 32)
        want_sqrt = oracle_expansion(lambda q: 1 if q < 0 else (q * q < 2) - (q * q > 2), 32)
        agree = 0
        for poly, target, iv in ROOT_FIXTURES:
            p = SurrealPolynomial.parse(poly)
            walk = root_sign_expansion(p, target, iv, 80)
            found = find_root_genetic(p, target, iv).result
            common = min(len(walk.signs), len(found.signs))
            assert found.signs[:common] == walk.signs[:common]
            if found.is_exact:
                assert walk.is_exact and walk.value == found.value
            agree += 1
            # the walk itself against the independent comparator
            lo, hi = (None if e.endswith("inf") else val(v(e)) for e in iv)
            coeffs = [c.value.to_fraction() for c in p.coeffs]
            assert walk.signs[:32] == oracle_expansion(root_comparator(coeffs, val(v(target)), lo, hi), 32)
    verdict["detail"] = f"1/3 and sqrt 2 match 32 oracle signs, {agree} fixtures agree, {clock.seconds:.2f}s (limit 10s)"
    assert recip.signs == want_recip and len(want_recip) == 32
    assert root.signs == want_sqrt and len(want_sqrt) == 32
    assert clock.seconds < 10


@pytest.mark.criterion(6)
def test_nimber_kernel(verdict):
    import numpy as np

    with Clock() as clock:
        idx = np.arange(1024)
        xor_ok = bool((add_table_mex(1024) == (idx[:, None] ^ idx[None, :])).all())
        mt = mul_table_mex(512)
        fast = np.array([[nim_mul(a, b) for b in range(512)] for a in range(512)])
        mul_ok = bool((mt == fast).all())
        r = range(16)
        axioms_ok = all(
            nim_mul(nim_mul(a, b), c) == nim_mul(a, nim_mul(b, c))
            and nim_mul(a, b) == nim_mul(b, a)
            and nim_mul(a, b ^ c) == nim_mul(a, b) ^ nim_mul(a, c)
            and nim_mul(a, b) < 16
            for a in r
            for b in r
            for c in r
        ) and all(nim_mul(a, 1) == a and nim_mul(a, nim_inverse(a)) == 1 for a in range(1, 16))
        fields = [n for n in range(2, 257) if is_closed_field_segment(n)]
    verdict["detail"] = f"xor<1024 {xor_ok}, mul<512 {mul_ok}, L(16) axioms {axioms_ok}, subfields {fields}, {clock.seconds:.1f}s (limit 120s)"
    assert xor_ok and mul_ok and axioms_ok
    assert fields == [2, 4, 16, 256]
    assert clock.seconds < 120


@pytest.mark.criterion(7)
def test_simplest_irreducible_cubic(verdict):
    with Clock() as clock:
        p = simplest_irreducible(3, 4, 1 << 16)
        cube_roots_of_two = zero_set(NimPolynomial([0, 0, 0, 1]), 2, 1 << 16)
    verdict["detail"] = f"found {p}, solutions of x^3 = 2 below 2^16: {len(cube_roots_of_two)}, {clock.seconds:.2f}s (limit 60s)"
    assert p == NimPolynomial([2, 0, 0, 1])
    assert not cube_roots_of_two
    assert clock.seconds < 60


@pytest.mark.criterion(8)
def test_closures_are_initial(verdict):
    with Clock() as clock:
        nim_ok = [is_initial_nim(nim_closure(range(k + 1), ("add", "mul"))) for k in range(17)]
        pool = list(all_sign_sequences(2))
        seeds = 0
        surreal_ok = True
        for mask in range(1, 1 << len(pool)):
            seed = [x for i, x in enumerate(pool) if mask >> i & 1]
            if not is_initial_finite(seed):
                continue
            seeds += 1
            surreal_ok &= is_initial_finite(closure_under_ops(seed, ["add"], 5).elements)
    verdict["detail"] = f"nim k<=16 all initial {all(nim_ok)}, {seeds} surreal seeds prefix-closed {surreal_ok}, {clock.seconds:.2f}s (limit 60s)"
    assert all(nim_ok) and surreal_ok and seeds > 0
    assert clock.seconds < 60


@pytest.mark.criterion(9)
def test_sup_escape(verdict):
    with Clock() as clock:
        report = sup_escape_experiment(list(range(2, 17, 2)))
    maxima = [w["max"]["signs"] for w in report.witnesses]
    values = [oracle_value(m) for m in maxima]
    verdict["detail"] = f"maxima {', '.join(str(q) for q in values)}, {clock.seconds:.2f}s (limit 10s)"
    assert maxima == ["+-" * n for n in range(1, 9)]
    assert all(p < q for p, q in zip(values, values[1:]))
    assert report.verdict == "strictly increasing, no stabilisation"
    assert clock.seconds < 10


@pytest.mark.criterion(10)
def test_omnific_floor(verdict):
    ev = GeneticEvaluator(builtin("omnific_floor"))
    mismatches = []
    with Clock() as clock:
        for s in all_signs(8):
            q = oracle_value(s)
            if not -8 < q < 8:
                continue
            got = val(ev(S(s)))
            floor = q.numerator // q.denominator
            if got != floor:
                mismatches.append((q, got, floor))
    first = ", ".join(f"f({q})={g} vs floor {f}" for q, g, f in mismatches[:2])
    negative = all(q < 0 and q.denominator > 1 for q, _, _ in mismatches)
    verdict["detail"] = (
        f"{len(mismatches)} mismatches in (-8, 8), all negative non-integers: {negative} "
        f"(e.g. {first}), {clock.seconds:.2f}s (limit 10s)"
    )
    assert clock.seconds < 10
    assert not mismatches
