"""
Exact integer, rational and residue arithmetic shared by every other module.

Nothing in this package touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt
from typing import Iterable, Iterator, List, Sequence, Tuple, Union

from sympy import factorint, jacobi_symbol, nextprime
from sympy.ntheory.modular import crt as _sympy_crt

REAL_PLACE = "inf"
Place = Union[int, str]


def factorize(n: int) -> List[Tuple[int, int]]:
    """
    Factor a positive integer.

    Args:
        n: Integer >= 1

    Returns:
        Sorted list of (prime, exponent); empty for n = 1
    """
    if n < 1:
        raise ValueError(f"factorize expects a positive integer, got {n}")
    return sorted((int(p), int(e)) for p, e in factorint(n).items())


def prime_divisors(n: int) -> List[int]:
    return [p for p, _ in factorize(abs(n))] if n else []


def valuation(n: Union[int, Fraction], p: int) -> int:
    """p-adic valuation of a nonzero integer or rational."""
    if n == 0:
        raise ValueError("valuation of zero is undefined")
    q = Fraction(n)
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def fraction_sqrt(q: Fraction) -> Fraction:
    """Exact square root of a nonnegative rational square; raises ValueError otherwise."""
    q = Fraction(q)
    if q < 0 or not is_square(q.numerator) or not is_square(q.denominator):
        raise ValueError(f"{q} is not the square of a rational")
    return Fraction(isqrt(q.numerator), isqrt(q.denominator))


def lcm(*values: int) -> int:
    return reduce(lambda x, y: x * y // gcd(x, y) if x and y else 0, values, 1)


def content(values: Iterable[int]) -> int:
    return reduce(gcd, (int(v) for v in values), 0)


def fraction_gcd(values: Iterable[Fraction]) -> Fraction:
    """Positive generator of the Z-module spanned by the given rationals."""
    values = [Fraction(v) for v in values]
    den = lcm(*(v.denominator for v in values)) if values else 1
    g = content(v.numerator * (den // v.denominator) for v in values)
    return Fraction(g, den)


def primes_not_dividing(n: int, start: int = 2) -> Iterator[int]:
    """Primes p >= start with p not dividing n, in increasing order."""
    p = start if start == 2 else nextprime(start - 1)
    while True:
        if n % p:
            yield p
        p = nextprime(p)


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a/n); the Legendre symbol when n is an odd prime."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if a % 2 == 0:
            return 0
        if twos % 2 and a % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * int(jacobi_symbol(a % n, n))


def _split_valuation(x: int, p: int) -> Tuple[int, int]:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v, x


def hilbert_symbol(a: int, b: int, place: Place) -> int:
    """
    Hilbert symbol (a, b)_v for nonzero integers a, b.

    Args:
        a, b: Nonzero integers
        place: A prime, or REAL_PLACE for the archimedean place

    Returns:
        -1 if the quaternion algebra (a, b) is ramified at the place, else 1
    """
    if a == 0 or b == 0:
        raise ValueError("hilbert_symbol needs nonzero arguments")
    if place == REAL_PLACE:
        return -1 if a < 0 and b < 0 else 1
    p = int(place)
    alpha, u = _split_valuation(a, p)
    beta, v = _split_valuation(b, p)
    if p == 2:
        eps_u = ((u - 1) // 2) % 2
        eps_v = ((v - 1) // 2) % 2
        omega_u = ((u * u - 1) // 8) % 2
        omega_v = ((v * v - 1) // 8) % 2
        exponent = (eps_u * eps_v + alpha * omega_v + beta * omega_u) % 2
        return -1 if exponent else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        sign *= kronecker_symbol(u, p)
    if alpha % 2:
        sign *= kronecker_symbol(v, p)
    return sign


def ramified_primes(a: int, b: int) -> Tuple[int, ...]:
    """Finite primes at which (a, b) ramifies; only divisors of 2ab can occur."""
    return tuple(p for p in prime_divisors(2 * a * b) if hilbert_symbol(a, b, p) == -1)


def crt(residues: Sequence[int], moduli: Sequence[int]) -> Tuple[int, int]:
    """
    Chinese remaindering.

    Returns:
        (x, M) with x ≡ residues[i] mod moduli[i] and M the lcm of the moduli

    Raises:
        ValueError: If the congruences are incompatible
    """
    solution = _sympy_crt(list(moduli), list(residues), check=True)
    if solution is None:
        raise ValueError(f"incompatible congruences {list(residues)} mod {list(moduli)}")
    x, m = solution
    return int(x), int(m)


def inverse_mod(a: int, m: int) -> int:
    return pow(a, -1, m)


@dataclass(frozen=True)
class ResidueInt:
    """An element of Z/mZ stored as its representative in [0, m)."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus <= 1:
            raise ValueError(f"modulus must exceed 1, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, ResidueInt):
            if other.modulus != self.modulus:
                raise ValueError("residues with different moduli")
            return other.value
        if isinstance(other, Fraction):
            return other.numerator * inverse_mod(other.denominator, self.modulus)
        return int(other)

    def __add__(self, other):
        return ResidueInt(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return ResidueInt(self.value - self._coerce(other), self.modulus)

    def __rsub__(self, other):
        return ResidueInt(self._coerce(other) - self.value, self.modulus)

    def __mul__(self, other):
        return ResidueInt(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return ResidueInt(-self.value, self.modulus)

    def __pow__(self, exponent: int):
        return ResidueInt(pow(self.value, exponent, self.modulus), self.modulus)

    def inverse(self) -> "ResidueInt":
        return ResidueInt(inverse_mod(self.value, self.modulus), self.modulus)

    def is_unit(self) -> bool:
        return gcd(self.value, self.modulus) == 1

    def __eq__(self, other):
        if isinstance(other, ResidueInt):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self._coerce(other) % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} mod {self.modulus}"
