"""
Elements of Z[zeta_n] stored as integer coefficient vectors modulo the n-th
cyclotomic polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple

from sympy import Poly, Symbol, cyclotomic_poly, totient

_X = Symbol("x")


@lru_cache(maxsize=None)
def cyclotomic_coefficients(n: int) -> Tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, constant term first."""
    poly = Poly(cyclotomic_poly(n, _X), _X)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


def _reduce(coeffs: Sequence[int], n: int) -> Tuple[int, ...]:
    modulus = cyclotomic_coefficients(n)
    degree = len(modulus) - 1
    work = list(coeffs)
    # Monic long division from the top degree down.
    for top in range(len(work) - 1, degree - 1, -1):
        lead = work[top]
        if lead:
            shift = top - degree
            for k, m in enumerate(modulus):
                work[shift + k] -= lead * m
    work = work[:degree] + [0] * max(0, degree - len(work))
    return tuple(work)


@dataclass(frozen=True)
class CyclotomicInt:
    """
    An algebraic integer in Z[zeta_n].

    Attributes:
        conductor: n, the order of the root of unity zeta
        coeffs: Coefficients of 1, zeta, ..., zeta^(phi(n)-1)
    """

    conductor: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _reduce(tuple(int(c) for c in self.coeffs), self.conductor))

    @classmethod
    def from_int(cls, n: int, value: int) -> "CyclotomicInt":
        return cls(n, (value,))

    @classmethod
    def zeta_power(cls, n: int, k: int) -> "CyclotomicInt":
        coeffs = [0] * (k % n + 1)
        coeffs[k % n] = 1
        return cls(n, tuple(coeffs))

    @classmethod
    def from_powers(cls, n: int, weights: Sequence[Tuple[int, int]]) -> "CyclotomicInt":
        """Sum of c * zeta^k over (c, k) pairs."""
        coeffs = [0] * n
        for c, k in weights:
            coeffs[k % n] += c
        return cls(n, tuple(coeffs))

    def _check(self, other: "CyclotomicInt"):
        if other.conductor != self.conductor:
            raise ValueError(f"conductors differ: {self.conductor} vs {other.conductor}")

    def _lift(self, other) -> "CyclotomicInt":
        if isinstance(other, CyclotomicInt):
            self._check(other)
            return other
        return CyclotomicInt.from_int(self.conductor, int(other))

    def __add__(self, other):
        other = self._lift(other)
        size = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (size - len(self.coeffs))
        b = list(other.coeffs) + [0] * (size - len(other.coeffs))
        return CyclotomicInt(self.conductor, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt(self.conductor, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        product = [0] * (len(self.coeffs) + len(other.coeffs))
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    product[i + j] += x * y
        return CyclotomicInt(self.conductor, tuple(product))

    __rmul__ = __mul__

    def conj(self) -> "CyclotomicInt":
        """Complex conjugation zeta -> zeta^-1."""
        n = self.conductor
        return CyclotomicInt.from_powers(n, [(c, -k) for k, c in enumerate(self.coeffs) if c])

    def abs_squared(self) -> "CyclotomicInt":
        return self * self.conj()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0] if self.coeffs else 0

    def divisible_by(self, m: int) -> bool:
        return all(c % m == 0 for c in self.coeffs)

    def vanishes_mod_primes_above(self, p: int) -> bool:
        """
        True when the element lies in every prime of Z[zeta_n] above p.

        The primes above p correspond to the irreducible factors g of the
        cyclotomic polynomial mod p; membership in (p, g(zeta)) is g | x mod p.
        """
        if self.is_zero():
            return True
        element = Poly(list(reversed(self.coeffs)), _X, modulus=p)
        if element.is_zero:
            return True
        phi = Poly(cyclotomic_poly(self.conductor, _X), _X, modulus=p)
        _, factors = phi.factor_list()
        for factor, _multiplicity in factors:
            if not element.rem(factor).is_zero:
                return False
        return True

    def __eq__(self, other):
        if isinstance(other, int):
            other = CyclotomicInt.from_int(self.conductor, other)
        if not isinstance(other, CyclotomicInt):
            return NotImplemented
        return self.conductor == other.conductor and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.conductor, self.coeffs))

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if k == 0 else f"{c}*z^{k}")
        return f"({' + '.join(terms) or '0'})_{self.conductor}"

    def to_list(self) -> List[int]:
        return list(self.coeffs)


def degree(n: int) -> int:
    return int(totient(n))
