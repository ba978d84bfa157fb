"""
Brandt matrices and ramified involutions acting on functions on a class set.

Convention: (T_l phi)_i = sum_j B_ij phi_j, so constant functions have
eigenvalue l + 1 and every row sums to l + 1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import isprime

from arith_helper.exact import factorize
from arith_helper.lattice_enum import count_values
from modules.class_set import ClassSet
from modules.errors import ClassificationError, PreconditionError
from modules.ideals import ideal_times, neighbors
from modules.orders import two_sided_prime

logger = logging.getLogger(__name__)

Matrix = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class BrandtMatrix:
    ell: int
    matrix: Matrix
    n1: int
    n2: int
    ramified: bool = False

    @property
    def size(self) -> int:
        return len(self.matrix)

    def apply(self, phi: Sequence) -> List:
        return [sum((b * v for b, v in zip(row, phi)), 0) for row in self.matrix]

    def trace(self) -> int:
        return sum(self.matrix[i][i] for i in range(self.size))

    def to_record(self):
        return {
            "ell": self.ell,
            "N1": self.n1,
            "N2": self.n2,
            "ramified": self.ramified,
            "matrix": [list(row) for row in self.matrix],
        }


class ThetaTable:
    """
    Counts of nrd(alpha) / (n_i n_j) = m for alpha in I_i * conj(I_j), 1 <= m <= max_value.

    One enumeration per unordered pair serves both B_ij and B_ji.
    """

    def __init__(self, class_set: ClassSet, max_value: int):
        self.class_set = class_set
        self.max_value = max_value
        self._counts: Dict[Tuple[int, int], Dict[Fraction, int]] = {}

    def counts(self, i: int, j: int) -> Dict[Fraction, int]:
        key = (min(i, j), max(i, j))
        if key not in self._counts:
            first = self.class_set.ideals[key[0]]
            second = self.class_set.ideals[key[1]]
            lattice = first.product(second.conj())
            gram = lattice.norm_gram(first.norm * second.norm)
            self._counts[key] = count_values(gram, self.max_value)
        return self._counts[key]

    def count(self, i: int, j: int, value: int) -> int:
        if value > self.max_value:
            raise ValueError(f"theta table only reaches {self.max_value}")
        return self.counts(i, j).get(Fraction(value), 0)


def _check_good_prime(class_set: ClassSet, ell: int) -> None:
    if not isprime(ell):
        raise PreconditionError(f"{ell} is not prime")
    if class_set.level % ell == 0:
        raise PreconditionError(
            f"{ell} divides the level {class_set.level}; use the ramified involution for primes exactly dividing N1"
        )


def brandt_matrix(class_set: ClassSet, ell: int, table: Optional[ThetaTable] = None) -> BrandtMatrix:
    """
    B(l) from theta counts: B_ij = #{alpha in I_i conj(I_j) of normalized norm l} / (2 w_j).

    Raises:
        PreconditionError: If l divides the level
    """
    _check_good_prime(class_set, ell)
    if table is None or table.max_value < ell:
        table = ThetaTable(class_set, ell)
    h = class_set.h
    weights = class_set.weights
    rows = []
    for i in range(h):
        row = []
        for j in range(h):
            total = table.count(i, j, ell)
            if total % (2 * weights[j]):
                raise ClassificationError(
                    f"theta count {total} at ({i}, {j}) is not divisible by 2 * w_j = {2 * weights[j]}"
                )
            row.append(total // (2 * weights[j]))
        rows.append(tuple(row))
    logger.debug("B(%d) at level %d computed from theta counts", ell, class_set.level)
    return BrandtMatrix(ell, tuple(rows), class_set.n1, class_set.n2)


def brandt_matrix_by_neighbors(class_set: ClassSet, ell: int) -> BrandtMatrix:
    """B(l) by classifying the l + 1 neighbors of each representative."""
    _check_good_prime(class_set, ell)
    h = class_set.h
    rows = []
    for i, ideal in enumerate(class_set.ideals):
        row = [0] * h
        for sub in neighbors(ideal, ell):
            row[class_set.classify(sub)] += 1
        rows.append(tuple(row))
    return BrandtMatrix(ell, tuple(rows), class_set.n1, class_set.n2)


def ramified_hecke(class_set: ClassSet, ell: int) -> BrandtMatrix:
    """
    The involution [I] -> [I * P] for the two-sided prime P above l, l exactly dividing N1.

    Raises:
        PreconditionError: If l^2 divides N1 or l does not divide N1
    """
    n1 = class_set.n1
    if n1 % ell or (n1 // ell) % ell == 0:
        raise PreconditionError(f"{ell} must divide N1={n1} exactly")
    order = class_set.order
    prime_ideal = two_sided_prime(order, ell)
    h = class_set.h
    rows = []
    for ideal in class_set.ideals:
        image = class_set.classify(ideal_times(ideal, prime_ideal, order))
        rows.append(tuple(int(j == image) for j in range(h)))
    matrix = tuple(rows)
    images = [row.index(1) for row in matrix]
    if any(images[images[i]] != i for i in range(h)):
        raise ClassificationError(f"[I] -> [I P] at {ell} is not an involution")
    return BrandtMatrix(ell, matrix, class_set.n1, n2=class_set.n2, ramified=True)


def involution_primes(class_set: ClassSet) -> List[int]:
    """Primes exactly dividing N1, where the ramified involution is defined."""
    return [p for p, e in factorize(class_set.n1) if e == 1]


def hecke_operators(class_set: ClassSet, ell_max: int, include_involutions: bool = True) -> Dict[int, BrandtMatrix]:
    """B(l) for all primes l <= ell_max not dividing the level, plus the ramified involutions."""
    table = ThetaTable(class_set, max(ell_max, 2))
    operators: Dict[int, BrandtMatrix] = {}
    for ell in range(2, ell_max + 1):
        if isprime(ell) and class_set.level % ell:
            operators[ell] = brandt_matrix(class_set, ell, table)
    if include_involutions:
        for ell in involution_primes(class_set):
            operators[ell] = ramified_hecke(class_set, ell)
    return operators
