import decimal
import math
from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import given, settings, strategies as st

from conftest import fibonacci
from qpwalk.cfrac import (ContinuedFraction, approximation_check, cf_expand,
                          classify_field, evaluate, golden_ratio_fraction)


def test_golden_ratio_fraction_accuracy():
    decimal.getcontext().prec = 80
    reference = (decimal.Decimal(5).sqrt() - 1) / 2
    mine = golden_ratio_fraction(60)
    got = decimal.Decimal(mine.numerator) / decimal.Decimal(mine.denominator)
    assert abs(got - reference) < decimal.Decimal(10) ** -58


def test_golden_expansion_is_all_ones_with_fibonacci_convergents():
    cf = cf_expand(golden_ratio_fraction(), 40)
    assert cf.coefficients == tuple([1] * 40)
    assert not cf.finite and not cf.truncated
    for k, conv in enumerate(cf.convergents, start=1):
        assert conv.numerator == fibonacci(k)
        assert conv.denominator == fibonacci(k + 1)


def test_convergent_recurrence_holds():
    x = Fraction(isqrt(2 * 10 ** 120), 10 ** 60) - 1  # sqrt(2) - 1 stand-in
    cf = cf_expand(x, 20)
    n = [1, 0] + [c.numerator for c in cf.convergents]
    d = [0, 1] + [c.denominator for c in cf.convergents]
    for k in range(2, len(n)):
        c_k = cf.coefficients[k - 2]
        assert n[k] == c_k * n[k - 1] + n[k - 2]
        assert d[k] == c_k * d[k - 1] + d[k - 2]


def test_sqrt2_expansion_is_periodic():
    x = Fraction(isqrt(2 * 10 ** 120), 10 ** 60) - 1
    cf = cf_expand(x, 15)
    assert cf.coefficients == tuple([2] * 15)


def test_finite_expansion_of_rationals_reconstructs():
    x = Fraction(16, 113)
    cf = cf_expand(x, 50)
    assert cf.finite and not cf.truncated
    assert evaluate(cf.coefficients) == x
    assert cf.convergents[-1].value == x


def test_float_input_uses_exact_fraction_then_guards():
    golden_float = (math.sqrt(5.0) - 1.0) / 2.0
    cf = cf_expand(golden_float, 40)
    assert cf.truncated
    assert cf.depth() < 40
    # the recognizable leading behavior survives the float round-off
    assert cf.coefficients[:12] == tuple([1] * 12)


def test_approximation_check_true_for_genuine_convergents():
    cf = cf_expand(golden_ratio_fraction(), 25)
    checks = approximation_check(cf)
    assert len(checks) == 24
    assert all(checks)


def test_approximation_check_catches_corruption():
    cf = cf_expand(golden_ratio_fraction(), 10)
    broken = list(cf.convergents)
    victim = broken[4]
    broken[4] = type(victim)(numerator=victim.numerator + 1,
                             denominator=victim.denominator)
    corrupted = ContinuedFraction(x=cf.x, coefficients=cf.coefficients,
                                  convergents=tuple(broken),
                                  finite=cf.finite, truncated=cf.truncated)
    checks = approximation_check(corrupted)
    assert checks[4] is False


def test_classify_field_kinds():
    golden = cf_expand(golden_ratio_fraction(), 30)
    assert classify_field(golden).kind == "bounded-coefficients"
    rational = cf_expand(Fraction(7, 30), 30)
    assert classify_field(rational).kind == "rational"
    pi_frac = cf_expand(math.pi - 3.0, 10)
    assert classify_field(pi_frac).kind == "unbounded-coefficients"
    assert classify_field(pi_frac).max_coefficient >= 292


@settings(max_examples=60)
@given(st.fractions(min_value=Fraction(1, 10 ** 6), max_value=Fraction(999999, 10 ** 6)))
def test_depth_floor_and_reconstruction(x):
    cf = cf_expand(x, 60)
    # denominators grow at least as fast as the Fibonacci numbers
    for k, conv in enumerate(cf.convergents, start=1):
        assert conv.denominator >= fibonacci(k)
    if cf.finite:
        assert evaluate(cf.coefficients) == x


@settings(max_examples=40)
@given(st.integers(min_value=2, max_value=10 ** 6))
def test_nonsquare_roots_satisfy_convergent_bound(n):
    root = isqrt(n)
    if root * root == n:
        return
    x = Fraction(isqrt(n * 10 ** 120), 10 ** 60) % 1
    cf = cf_expand(x, 12)
    assert all(approximation_check(cf))


def test_cf_expand_validates_domain():
    with pytest.raises(ValueError):
        cf_expand(Fraction(3, 2), 5)
    with pytest.raises(ValueError):
        cf_expand(Fraction(0, 1), 5)
    with pytest.raises(ValueError):
        cf_expand(Fraction(1, 2), 0)
