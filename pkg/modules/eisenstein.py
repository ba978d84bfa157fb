"""
Weight-two Eisenstein series E_{2,N}(z) = sum_{d | N} mu(d) d E_2(dz), their
stripped variants, and comparison of eigenform q-expansions against them.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional

from sympy import divisor_sigma, divisors, isprime, mobius, primerange

from arith_helper.exact import factorize, prime_divisors
from modules.errors import UnsupportedError

logger = logging.getLogger(__name__)


def eisenstein_eigenvalue(level: int, ell: int) -> int:
    return ell + 1 if level % ell else 1


def eisenstein_qexp(level: int, n_max: int) -> List[Fraction]:
    """
    Coefficients a_0..a_{n_max} of E_{2,N}.

    a_n = sum_{d | gcd(n, N)} mu(d) d sigma(n / d) and a_0 = -(1/24) sum_{d | N} mu(d) d.
    """
    coeffs = [Fraction(-sum(int(mobius(d)) * d for d in divisors(level)), 24)]
    for n in range(1, n_max + 1):
        coeffs.append(Fraction(sum(int(mobius(d)) * d * int(divisor_sigma(n // d)) for d in divisors(gcd(n, level)))))
    return coeffs


def eisenstein_qexp_stripped(level: int, p: int, n_max: int) -> List[Fraction]:
    """Coefficients of E_{2,M}(z) - E_{2,M}(pz); the constant term cancels."""
    base = eisenstein_qexp(level, n_max)
    coeffs = [Fraction(0)]
    for n in range(1, n_max + 1):
        coeffs.append(base[n] - (base[n // p] if n % p == 0 else 0))
    return coeffs


def radical(n: int) -> int:
    r = 1
    for p in prime_divisors(n):
        r *= p
    return r


def eigenform_qexp(
    level: int,
    n1: int,
    eigenvalues: Dict[int, int],
    involutions: Dict[int, int],
    n_max: int,
    modulus: Optional[int] = None,
) -> List[int]:
    """
    a_0..a_{n_max} of the normalized newform with the given Hecke data.

    a_l is the Hecke eigenvalue for l not dividing N, the involution eigenvalue for
    l exactly dividing N1 and 0 when l^2 divides N. Prime powers follow
    a_{l^{k+1}} = a_l a_{l^k} - l a_{l^{k-1}} at good primes and a_{l^k} = a_l^k at bad ones.

    Raises:
        UnsupportedError: If a needed eigenvalue is missing or l exactly divides N2
    """
    reduce = (lambda v: v % modulus) if modulus else (lambda v: v)
    prime_power: Dict[int, int] = {1: 1}
    for ell in primerange(2, n_max + 1):
        if level % ell:
            if ell not in eigenvalues:
                raise UnsupportedError(f"no eigenvalue known at {ell}; extend l_max to {n_max}")
            a_ell = eigenvalues[ell]
            previous, current = 1, a_ell
            power = ell
            while power <= n_max:
                prime_power[power] = reduce(current)
                previous, current = current, a_ell * current - ell * previous
                power *= ell
        elif level % (ell * ell) == 0:
            power = ell
            while power <= n_max:
                prime_power[power] = 0
                power *= ell
        elif n1 % ell == 0:
            if ell not in involutions:
                raise UnsupportedError(f"no involution eigenvalue known at {ell}")
            power, k = ell, 1
            while power <= n_max:
                prime_power[power] = reduce(involutions[ell] ** k)
                power *= ell
                k += 1
        else:
            raise UnsupportedError(f"{ell} exactly divides N2; no operator is implemented there")
    coeffs = [0, 1]
    for n in range(2, n_max + 1):
        value = 1
        for p, e in factorize(n):
            value *= prime_power[p ** e]
        coeffs.append(reduce(value))
    return coeffs[: n_max + 1]


def _p_integral_residue(value: Fraction, p: int) -> Optional[int]:
    if value.denominator % p == 0:
        return None
    return (value.numerator * pow(value.denominator, -1, p)) % p


@dataclass
class FourierCongruenceReport:
    level: int
    p: int
    n_max: int
    reference: str
    eigenvalue_congruence: bool
    coefficient_congruence: bool
    constant_term_congruence: bool
    depth: int
    constant_term: Fraction
    mismatches: List[int] = field(default_factory=list)

    @property
    def congruent(self) -> bool:
        return self.coefficient_congruence and self.constant_term_congruence

    def to_record(self):
        return {
            "level": self.level,
            "p": self.p,
            "n_max": self.n_max,
            "reference": self.reference,
            "eigenvalue_congruence": self.eigenvalue_congruence,
            "coefficient_congruence": self.coefficient_congruence,
            "constant_term_congruence": self.constant_term_congruence,
            "constant_term": self.constant_term,
            "depth": self.depth,
            "congruent": self.congruent,
            "mismatches": self.mismatches[:10],
        }


def verify_fourier_congruence(
    level: int,
    n1: int,
    eigenvalues: Dict[int, int],
    involutions: Dict[int, int],
    p: int,
    n_max: int,
) -> FourierCongruenceReport:
    """
    Compare the eigenform's q-expansion with the matching Eisenstein series mod p.

    The reference is E_{2,N}, or E_{2,M}(z) - E_{2,M}(pz) with M the radical of N
    when p^2 divides N. Eigenvalue, coefficient and constant-term congruences are
    reported separately, together with the depth (last n through which all
    coefficients agree).
    """
    if level % (p * p) == 0:
        m = radical(level)
        series = eisenstein_qexp_stripped(m, p, n_max)
        reference = f"E_{{2,{m}}}(z) - E_{{2,{m}}}({p}z)"
    else:
        series = eisenstein_qexp(level, n_max)
        reference = f"E_{{2,{level}}}"
    form = eigenform_qexp(level, n1, eigenvalues, involutions, n_max, modulus=p)
    mismatches = []
    for n in range(1, n_max + 1):
        target = _p_integral_residue(series[n], p)
        if target is None or form[n] % p != target:
            mismatches.append(n)
    depth = (mismatches[0] - 1) if mismatches else n_max
    eigen_ok = all(
        (eigenvalues[ell] - (ell + 1)) % p == 0
        for ell in primerange(2, n_max + 1)
        if level % ell and ell in eigenvalues and ell != p
    ) and all((value - 1) % p == 0 for value in involutions.values())
    constant = series[0]
    constant_residue = _p_integral_residue(constant, p)
    report = FourierCongruenceReport(
        level=level,
        p=p,
        n_max=n_max,
        reference=reference,
        eigenvalue_congruence=eigen_ok,
        coefficient_congruence=not mismatches,
        constant_term_congruence=constant_residue == 0,
        depth=depth,
        constant_term=constant,
        mismatches=mismatches,
    )
    logger.info("level %d mod %d: coefficients %s, constant term %s", level, p,
                "agree" if not mismatches else f"differ at {mismatches[:3]}", constant)
    return report


def eisenstein_prime_coefficients(level: int, ell_max: int) -> Dict[int, Fraction]:
    series = eisenstein_qexp(level, ell_max)
    return {ell: series[ell] for ell in range(2, ell_max + 1) if isprime(ell)}
