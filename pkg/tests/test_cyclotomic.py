from __future__ import annotations

import pytest

from arith_helper.cyclotomic import CyclotomicInt, cyclotomic_coefficients, degree


def test_cyclotomic_coefficients():
    assert cyclotomic_coefficients(3) == (1, 1, 1)
    assert cyclotomic_coefficients(4) == (1, 0, 1)
    assert degree(12) == 4


def test_roots_of_unity_multiply():
    z = CyclotomicInt.zeta_power(3, 1)
    assert z * CyclotomicInt.zeta_power(3, 2) == 1
    assert 1 + z + z * z == 0
    assert CyclotomicInt.zeta_power(6, 6) == 1


def test_conjugation_inverts_zeta():
    z = CyclotomicInt.zeta_power(4, 1)
    assert z.conj() == CyclotomicInt.zeta_power(4, 3)
    assert z.conj() == -z
    assert z.abs_squared() == 1


def test_abs_squared_of_one_minus_zeta3():
    x = 1 - CyclotomicInt.zeta_power(3, 1)
    assert x.abs_squared() == 3
    assert x.abs_squared().to_int() == 3


def test_from_powers_collects_weights():
    x = CyclotomicInt.from_powers(3, [(2, 0), (-1, 1), (-1, 2)])
    # 2 - z - z^2 = 3
    assert x == 3


def test_vanishing_modulo_primes_above_p():
    x = 1 - CyclotomicInt.zeta_power(3, 1)
    assert x.vanishes_mod_primes_above(3)
    assert not x.vanishes_mod_primes_above(7)
    assert CyclotomicInt.from_int(3, 25).vanishes_mod_primes_above(5)
    assert not CyclotomicInt.from_int(3, 1).vanishes_mod_primes_above(5)
    assert CyclotomicInt.from_int(5, 0).vanishes_mod_primes_above(2)


def test_divisible_by():
    assert CyclotomicInt(3, (10, 5)).divisible_by(5)
    assert not CyclotomicInt(3, (10, 4)).divisible_by(5)


def test_rational_checks():
    z = CyclotomicInt.zeta_power(3, 1)
    assert not z.is_rational()
    with pytest.raises(ValueError):
        z.to_int()
    with pytest.raises(ValueError):
        z + CyclotomicInt.zeta_power(4, 1)
