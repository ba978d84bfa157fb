"""
Definite quaternion algebras (a, b) over Q with basis 1, i, j, k where
i^2 = a, j^2 = b and k = ij = -ji.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count
from typing import Iterable, Sequence, Tuple

from arith_helper.exact import REAL_PLACE, hilbert_symbol, ramified_primes
from modules.errors import PreconditionError

logger = logging.getLogger(__name__)

Coords = Tuple[Fraction, Fraction, Fraction, Fraction]


def multiply_coords(a: int, b: int, x: Sequence, y: Sequence) -> Coords:
    """Product of two elements of (a, b) given by coordinates in 1, i, j, k."""
    x0, x1, x2, x3 = x
    y0, y1, y2, y3 = y
    ab = a * b
    return (
        x0 * y0 + a * x1 * y1 + b * x2 * y2 - ab * x3 * y3,
        x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
        x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
        x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
    )


def conj_coords(x: Sequence) -> Coords:
    return (x[0], -x[1], -x[2], -x[3])


@dataclass(frozen=True)
class QuaternionAlgebra:
    """
    The quaternion algebra (a, b) with a, b negative integers.

    The finite ramification set is computed once from Hilbert symbols.
    """

    a: int
    b: int
    ramification: Tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.a * self.b == 0 or not ramified_at_infinity(self):
            raise PreconditionError(f"({self.a}, {self.b}) is not totally definite")
        object.__setattr__(self, "ramification", ramified_primes(self.a, self.b))

    def mul(self, x: Sequence, y: Sequence) -> Coords:
        return multiply_coords(self.a, self.b, x, y)

    def nrd(self, x: Sequence) -> Fraction:
        x0, x1, x2, x3 = x
        return Fraction(x0 * x0 - self.a * x1 * x1 - self.b * x2 * x2 + self.a * self.b * x3 * x3)

    def trd(self, x: Sequence) -> Fraction:
        return Fraction(2 * x[0])

    def trace_pairing(self, x: Sequence, y: Sequence) -> Fraction:
        """trd(x * conj(y)); twice the bilinear form attached to nrd."""
        return Fraction(
            2 * (x[0] * y[0] - self.a * x[1] * y[1] - self.b * x[2] * y[2] + self.a * self.b * x[3] * y[3])
        )

    def inverse(self, x: Sequence) -> Coords:
        n = self.nrd(x)
        if n == 0:
            raise ZeroDivisionError("zero has no inverse")
        return tuple(Fraction(c) / n for c in conj_coords(x))

    def element(self, *coords) -> "QuatElement":
        if len(coords) == 1:
            coords = tuple(coords[0])
        return QuatElement(self, tuple(Fraction(c) for c in coords))

    def one(self) -> "QuatElement":
        return self.element(1, 0, 0, 0)

    def is_ramified(self, p) -> bool:
        return hilbert_symbol(self.a, self.b, p) == -1

    def discriminant(self) -> int:
        d = 1
        for p in self.ramification:
            d *= p
        return d

    def __repr__(self):
        return f"QuaternionAlgebra({self.a}, {self.b})"


@dataclass(frozen=True)
class QuatElement:
    algebra: QuaternionAlgebra
    coords: Coords

    def _wrap(self, coords) -> "QuatElement":
        return QuatElement(self.algebra, tuple(Fraction(c) for c in coords))

    def _coords_of(self, other) -> Sequence:
        if isinstance(other, QuatElement):
            return other.coords
        return (Fraction(other), 0, 0, 0)

    def __add__(self, other):
        return self._wrap(u + v for u, v in zip(self.coords, self._coords_of(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(u - v for u, v in zip(self.coords, self._coords_of(other)))

    def __rsub__(self, other):
        return self._wrap(v - u for u, v in zip(self.coords, self._coords_of(other)))

    def __neg__(self):
        return self._wrap(-u for u in self.coords)

    def __mul__(self, other):
        if isinstance(other, QuatElement):
            return self._wrap(self.algebra.mul(self.coords, other.coords))
        return self._wrap(u * Fraction(other) for u in self.coords)

    def __rmul__(self, other):
        return self._wrap(Fraction(other) * u for u in self.coords)

    def __truediv__(self, scalar):
        return self._wrap(u / Fraction(scalar) for u in self.coords)

    def conj(self) -> "QuatElement":
        return self._wrap(conj_coords(self.coords))

    def nrd(self) -> Fraction:
        return self.algebra.nrd(self.coords)

    def trd(self) -> Fraction:
        return self.algebra.trd(self.coords)

    def inverse(self) -> "QuatElement":
        return self._wrap(self.algebra.inverse(self.coords))

    def is_scalar(self) -> bool:
        return not any(self.coords[1:])

    def is_integral(self) -> bool:
        return self.nrd().denominator == 1 and self.trd().denominator == 1

    def __repr__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def construct_ramified(primes: Iterable[int]) -> QuaternionAlgebra:
    """
    Find a definite algebra (a, b) ramified exactly at the given primes and infinity.

    Args:
        primes: Set of distinct primes of odd size

    Returns:
        The first (a, b) in the search order |a| <= |b| that works

    Raises:
        PreconditionError: If the set has even size
    """
    target = tuple(sorted(set(primes)))
    if len(target) % 2 == 0:
        raise PreconditionError(
            f"a definite algebra over Q ramifies at an odd number of finite primes, got {list(target)}"
        )
    odd = [p for p in target if p != 2]
    for b_abs in count(1):
        for a_abs in range(1, b_abs + 1):
            product = a_abs * b_abs
            if any(product % p for p in odd):
                continue
            if ramified_primes(-a_abs, -b_abs) == target:
                logger.debug("Ramification set %s realised by (%d, %d)", list(target), -a_abs, -b_abs)
                return QuaternionAlgebra(-a_abs, -b_abs)
    raise AssertionError("unreachable")


def ramified_at_infinity(algebra: QuaternionAlgebra) -> bool:
    return hilbert_symbol(algebra.a, algebra.b, REAL_PLACE) == -1
