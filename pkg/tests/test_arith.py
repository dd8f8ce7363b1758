import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gbs.arith import (
    ArithError,
    ExactRational,
    FactoredInt,
    PrimeSet,
    crt_solvable,
    crt_solve,
    factor_over,
    first_primes,
    is_prime,
    prime_factors,
    valuation,
)

P23 = PrimeSet((2, 3))
SP23 = PrimeSet((-1, 2, 3))


def test_valuation_examples():
    assert valuation(24, 2) == 3
    assert valuation(-5, -1) == 1
    assert valuation(5, -1) == 0
    assert valuation(7, 2) == 0


def test_valuation_rejects_zero():
    with pytest.raises(ArithError):
        valuation(0, 2)


def test_factor_over_examples():
    f = factor_over(-24, SP23)
    assert (f.residual, f.exps) == (1, (1, 3, 1))
    f = factor_over(30, P23)
    assert (f.residual, f.exps) == (5, (1, 1))
    f = factor_over(7, P23)
    assert (f.residual, f.exps) == (7, (0, 0))


def test_factor_over_rejects_zero_and_bare_negative():
    with pytest.raises(ArithError):
        factor_over(0, P23)
    with pytest.raises(ArithError):
        factor_over(-6, P23)


@given(st.integers(min_value=-10**12, max_value=10**12).filter(bool))
def test_factor_round_trip(k):
    assert factor_over(k, SP23).value() == k


def test_prime_set_validation():
    with pytest.raises(ArithError):
        PrimeSet((2, 2))
    with pytest.raises(ArithError):
        PrimeSet((2, -1))
    with pytest.raises(ArithError):
        PrimeSet((4,))
    assert PrimeSet(()).real_primes == ()


def test_prime_helpers():
    assert first_primes(5) == (2, 3, 5, 7, 11)
    assert prime_factors(360) == (2, 3, 5)
    assert prime_factors(-1) == ()
    assert is_prime(97) and not is_prime(91)


def test_crt_examples():
    assert crt_solvable([(1, 2), (2, 3)], P23) is True
    assert crt_solvable([(1, 4), (3, 8)], PrimeSet((2,))) is False
    assert crt_solvable([(5, 1)], P23) is True


def test_crt_rejects_foreign_modulus():
    with pytest.raises(ArithError):
        crt_solvable([(0, 10)], P23)


def _brute_solvable(congs):
    lcm = 1
    for _, d in congs:
        lcm = lcm * abs(d) // math.gcd(lcm, abs(d))
    return any(all((x - c) % d == 0 for c, d in congs) for x in range(lcm))


def test_crt_against_brute_force():
    rng = random.Random(2024)
    primes = PrimeSet((2, 3, 5))
    for _ in range(400):
        congs = [
            (
                rng.randint(-40, 40),
                2 ** rng.randint(0, 4) * 3 ** rng.randint(0, 3) * 5 ** rng.randint(0, 2),
            )
            for _ in range(rng.randint(1, 5))
        ]
        assert crt_solvable(congs, primes) == _brute_solvable(congs)


def test_crt_solve_gives_real_solutions():
    rng = random.Random(99)
    primes = PrimeSet((2, 3, 5))
    solved = 0
    for _ in range(300):
        congs = [
            (rng.randint(-30, 30), 2 ** rng.randint(0, 4) * 3 ** rng.randint(0, 2))
            for _ in range(rng.randint(1, 4))
        ]
        sol = crt_solve(congs, primes)
        if sol is None:
            assert not crt_solvable(congs, primes)
            continue
        x, mod = sol
        solved += 1
        assert 0 <= x < max(mod, 1)
        assert all((x - c) % d == 0 for c, d in congs)
    assert solved > 0


rationals = st.builds(
    ExactRational,
    st.integers(min_value=-10**6, max_value=10**6),
    st.integers(min_value=-10**6, max_value=10**6).filter(bool),
)


@given(rationals, rationals)
def test_rational_arithmetic_matches_fraction(a, b):
    fa, fb = Fraction(a.num, a.den), Fraction(b.num, b.den)
    assert Fraction((a + b).num, (a + b).den) == fa + fb
    assert Fraction((a - b).num, (a - b).den) == fa - fb
    assert Fraction((a * b).num, (a * b).den) == fa * fb
    if b.num:
        assert Fraction((a / b).num, (a / b).den) == fa / fb


@given(rationals, rationals)
def test_rational_equality_is_cross_multiplication(a, b):
    assert (a == b) == (Fraction(a.num, a.den) == Fraction(b.num, b.den))


@given(rationals, st.integers(min_value=1, max_value=50))
def test_rational_equality_ignores_scaling(a, s):
    assert a == ExactRational(a.num * s, a.den * s)
    assert hash(a) == hash(ExactRational(a.num * s, a.den * s))


@given(rationals)
def test_rational_integrality(a):
    assert a.is_integer() == (Fraction(a.num, a.den).denominator == 1)
    if a.is_integer():
        assert a.as_integer() == Fraction(a.num, a.den)
        assert a.divisible_by(3) == (a.as_integer() % 3 == 0)


def test_rational_stays_unreduced_until_threshold():
    r = ExactRational(4, 6)
    assert (r.num, r.den) == (4, 6)
    assert str(r) == "4/6"
    big = ExactRational(2 ** 5000, 2 ** 5001)
    assert (big.num, big.den) == (1, 2)


def test_rational_rejects_zero_denominator():
    with pytest.raises(ArithError):
        ExactRational(1, 0)


def test_factored_int_fields():
    f = factor_over(360, SP23)
    assert f == FactoredInt(5, (0, 3, 2), SP23)
