from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
from sympy import primerange

from arith_helper.exact import (
    REAL_PLACE,
    ResidueInt,
    crt,
    factorize,
    fraction_gcd,
    fraction_sqrt,
    hilbert_symbol,
    kronecker_symbol,
    lcm,
    primes_not_dividing,
    prime_divisors,
    ramified_primes,
    valuation,
)


def test_factorize_sorted_and_empty_for_one():
    assert factorize(1) == []
    assert factorize(143) == [(11, 1), (13, 1)]
    assert factorize(2 ** 5 * 27) == [(2, 5), (3, 3)]
    with pytest.raises(ValueError):
        factorize(0)


def test_valuation_of_rationals():
    assert valuation(48, 2) == 4
    assert valuation(Fraction(12, 5), 2) == 2
    assert valuation(Fraction(12, 5), 5) == -1
    assert valuation(7, 3) == 0
    with pytest.raises(ValueError):
        valuation(0, 3)


def test_lcm_and_fraction_gcd():
    assert lcm(2, 3, 4) == 12
    assert lcm() == 1
    assert fraction_gcd([Fraction(1, 2), Fraction(1, 3)]) == Fraction(1, 6)
    assert fraction_gcd([4, 6]) == 2


def test_fraction_sqrt():
    assert fraction_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    with pytest.raises(ValueError):
        fraction_sqrt(Fraction(2))


def test_primes_not_dividing():
    gen = primes_not_dividing(6)
    assert [next(gen) for _ in range(4)] == [5, 7, 11, 13]
    gen = primes_not_dividing(11, start=10)
    assert next(gen) == 13


@pytest.mark.parametrize("p", list(primerange(3, 101)))
def test_kronecker_matches_residue_search(p):
    squares = {x * x % p for x in range(1, p)}
    for a in range(-100, 101):
        expected = 0 if a % p == 0 else (1 if a % p in squares else -1)
        assert kronecker_symbol(a, p) == expected, a


def test_kronecker_at_two():
    for a in range(-20, 21):
        expected = 0 if a % 2 == 0 else (1 if a % 8 in (1, 7) else -1)
        assert kronecker_symbol(a, 2) == expected


def test_known_ramification():
    assert ramified_primes(-1, -1) == (2,)
    assert ramified_primes(-1, -11) == (11,)
    assert hilbert_symbol(-1, -1, REAL_PLACE) == -1
    assert hilbert_symbol(-1, 3, REAL_PLACE) == 1


def test_hilbert_product_formula():
    for a, b in product(range(-15, 16), repeat=2):
        if a == 0 or b == 0:
            continue
        places = [REAL_PLACE] + prime_divisors(2 * a * b)
        total = 1
        for place in places:
            total *= hilbert_symbol(a, b, place)
        assert total == 1, (a, b)


def test_hilbert_symbol_is_symmetric_and_bilinear_at_odd_primes():
    for p in (3, 5, 7):
        for a, b, c in product([1, 2, 3, 5, 6, 7, -1, -3], repeat=3):
            assert hilbert_symbol(a, b, p) == hilbert_symbol(b, a, p)
            assert hilbert_symbol(a, b * c, p) == hilbert_symbol(a, b, p) * hilbert_symbol(a, c, p)


def test_crt():
    assert crt([2, 3], [3, 5]) == (8, 15)
    assert crt([1, 3], [4, 6]) == (9, 12)
    with pytest.raises(ValueError):
        crt([0, 1], [2, 4])


def test_residue_arithmetic():
    x = ResidueInt(3, 7)
    y = ResidueInt(5, 7)
    assert x * y == ResidueInt(1, 7)
    assert x + y == 1
    assert x - y == 5
    assert x.inverse() == y
    assert x ** 6 == 1
    assert x * Fraction(1, 3) == 1
    assert not ResidueInt(2, 4).is_unit()
    with pytest.raises(ValueError):
        ResidueInt(1, 5) + ResidueInt(1, 7)


def _hilbert_by_search(a, b, p):
    """
    1 when z^2 = a x^2 + b y^2 has a primitive solution mod p^k, else -1.

    For squarefree a, b a primitive solution mod p^3 (mod 2^5 at p = 2) lifts to Q_p.
    """
    modulus = p ** (5 if p == 2 else 3)
    any_root, unit_root = set(), set()
    for z in range(modulus):
        any_root.add(z * z % modulus)
        if z % p:
            unit_root.add(z * z % modulus)
    for x in range(modulus):
        for y in range(modulus):
            value = (a * x * x + b * y * y) % modulus
            roots = any_root if (x % p or y % p) else unit_root
            if value in roots:
                return 1
    return -1


SQUAREFREE = [-1, 2, -2, 3, -3, 5, -5, 6, -7, 7, 10, -14, 15]


@pytest.mark.parametrize("p", [2, 3, 5, pytest.param(7, marks=pytest.mark.slow)])
def test_hilbert_symbol_matches_norm_equation_search(p):
    for a, b in product(SQUAREFREE, repeat=2):
        assert hilbert_symbol(a, b, p) == _hilbert_by_search(a, b, p), (a, b)
