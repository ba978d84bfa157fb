"""
Right ideal class sets of orders of level N1 * N2, certified complete by the
mass formula.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from math import gcd
from typing import Dict, Iterable, List, Optional, Tuple

from sympy import divisors, totient

from arith_helper.exact import factorize, primes_not_dividing
from modules.errors import (
    ClassificationError,
    MassOvershootError,
    NeighborExhaustionError,
    PreconditionError,
)
from modules.ideals import (
    ALLOWED_WEIGHTS,
    InvariantKey,
    is_equivalent,
    left_order_theta,
    neighbors,
    reduce_representative,
    unit_ideal,
)
from modules.orders import IdealLattice, Order, algebra_for_level, order_of_level

logger = logging.getLogger(__name__)

MAX_NEIGHBOR_PRIMES = 6


def check_split(n1: int, n2: int) -> None:
    """
    Raises:
        PreconditionError: Unless N1 has an odd number of prime factors, each to an odd
            power, and N2 is coprime to N1
    """
    if n1 < 2 or n2 < 1:
        raise PreconditionError(f"invalid split N1={n1}, N2={n2}")
    factors = factorize(n1)
    if len(factors) % 2 == 0:
        raise PreconditionError(f"N1={n1} has an even number of prime factors; no definite algebra exists")
    even = [p for p, e in factors if e % 2 == 0]
    if even:
        raise PreconditionError(
            f"N1={n1} has even exponent at {even}; only odd exponents at ramified primes are supported"
        )
    if gcd(n1, n2) != 1:
        raise PreconditionError(f"N1={n1} and N2={n2} are not coprime")


def mass_formula(n1: int, n2: int) -> Fraction:
    """phi(N1) / 12 * N2 * prod_{p | N2} (1 + 1/p)."""
    check_split(n1, n2)
    mass = Fraction(int(totient(n1)), 12) * n2
    for p, _ in factorize(n2):
        mass *= Fraction(p + 1, p)
    return mass


def mass_numerator(n1: int, n2: int) -> int:
    return mass_formula(n1, n2).numerator


def admissible_splits(level: int) -> List[Tuple[int, int]]:
    """All (N1, N2) with N1 * N2 = level for which a class set is defined, by increasing N1."""
    splits = []
    for n1 in divisors(level):
        n2 = level // n1
        try:
            check_split(n1, n2)
        except PreconditionError:
            continue
        splits.append((n1, n2))
    return splits


def default_split(level: int) -> Tuple[int, int]:
    """The admissible split with the largest mass numerator (smallest N1 on ties)."""
    splits = admissible_splits(level)
    if not splits:
        raise PreconditionError(f"level {level} admits no split N1 * N2 with N1 of odd ramification")
    return max(splits, key=lambda s: (mass_numerator(*s), -s[0]))


@dataclass(frozen=True)
class ClassSet:
    """Representatives I_1 = O, ..., I_h with unit weights and the mass they certify."""

    order: Order
    ideals: Tuple[IdealLattice, ...]
    weights: Tuple[int, ...]
    mass: Fraction
    n1: int
    n2: int

    @property
    def h(self) -> int:
        return len(self.ideals)

    @property
    def level(self) -> int:
        return self.n1 * self.n2

    @property
    def algebra(self):
        return self.order.algebra

    def weight_mass(self) -> Fraction:
        return sum((Fraction(1, w) for w in self.weights), Fraction(0))

    def classify(self, ideal: IdealLattice) -> int:
        """Index of the class of a right ideal of the order."""
        key = left_order_theta(ideal)
        for idx, rep in enumerate(self.ideals):
            if self._keys[idx] == key and is_equivalent(ideal, rep) is not None:
                return idx
        raise ClassificationError(f"ideal of norm {ideal.norm} matches no class representative")

    @property
    def _keys(self) -> List[InvariantKey]:
        cached = self.__dict__.get("_key_cache")
        if cached is None:
            cached = [left_order_theta(ideal) for ideal in self.ideals]
            object.__setattr__(self, "_key_cache", cached)
        return cached


class _Accumulator:
    """Single-writer store of inequivalent representatives."""

    def __init__(self, mass: Fraction):
        self.mass = mass
        self.ideals: List[IdealLattice] = []
        self.weights: List[int] = []
        self.by_key: Dict[InvariantKey, List[int]] = {}
        self.total = Fraction(0)

    def complete(self) -> bool:
        return self.total == self.mass

    def add_if_new(self, ideal: IdealLattice) -> Optional[int]:
        key = left_order_theta(ideal)
        for idx in self.by_key.get(key, []):
            if is_equivalent(ideal, self.ideals[idx]) is not None:
                return None
        weight = key[0] // 2
        if key[0] % 2 or weight not in ALLOWED_WEIGHTS:
            raise ClassificationError(f"left order has {key[0]} norm one elements")
        self.ideals.append(ideal)
        self.weights.append(weight)
        self.by_key.setdefault(key, []).append(len(self.ideals) - 1)
        self.total += Fraction(1, weight)
        logger.info("class %d found: norm %s, weight %d, mass %s / %s",
                    len(self.ideals), ideal.norm, weight, self.total, self.mass)
        if self.total > self.mass:
            raise MassOvershootError(f"weights sum to {self.total}, exceeding the mass {self.mass}")
        return len(self.ideals) - 1


def enumerate_classes(
    order: Order, n1: int, n2: int, neighbor_primes: Optional[Iterable[int]] = None
) -> ClassSet:
    """
    Breadth-first search over p-neighbors until the weights account for the full mass.

    Args:
        order: Order of level N1 * N2
        n1, n2: Level split
        neighbor_primes: Primes to walk with; defaults to the smallest primes not dividing the level

    Raises:
        MassOvershootError: If inequivalent classes sum past the mass
        NeighborExhaustionError: If the search stalls before reaching the mass
    """
    mass = mass_formula(n1, n2)
    level = n1 * n2
    if neighbor_primes is None:
        neighbor_primes = islice(primes_not_dividing(level), MAX_NEIGHBOR_PRIMES)
    acc = _Accumulator(mass)
    acc.add_if_new(unit_ideal(order))
    for p in neighbor_primes:
        if acc.complete():
            break
        if level % p == 0:
            raise PreconditionError(f"neighbor prime {p} divides the level {level}")
        logger.debug("walking %d-neighbors", p)
        queue = deque(range(len(acc.ideals)))
        while queue and not acc.complete():
            idx = queue.popleft()
            for candidate in neighbors(acc.ideals[idx], p):
                new_idx = acc.add_if_new(reduce_representative(candidate))
                if new_idx is not None:
                    queue.append(new_idx)
                    if acc.complete():
                        break
    if not acc.complete():
        raise NeighborExhaustionError(
            f"neighbor search stopped at mass {acc.total} of {mass} with {len(acc.ideals)} classes"
        )
    return ClassSet(order, tuple(acc.ideals), tuple(acc.weights), mass, n1, n2)


def build_class_set(n1: int, n2: int, neighbor_primes: Optional[Iterable[int]] = None) -> ClassSet:
    check_split(n1, n2)
    algebra = algebra_for_level(n1)
    order = order_of_level(algebra, n1, n2)
    return enumerate_classes(order, n1, n2, neighbor_primes)


def class_set_for_level(n1: int, n2: int, use_cache: bool = False, cache_dir=None) -> ClassSet:
    """Class set of level N1 * N2, read from and written to the cache when enabled."""
    if not use_cache:
        return build_class_set(n1, n2)
    from modules.cache import ClassSetCache

    cache = ClassSetCache(cache_dir)
    algebra = algebra_for_level(n1)
    order = order_of_level(algebra, n1, n2)
    cached = cache.load(order, n1, n2)
    if cached is not None:
        return cached
    class_set = enumerate_classes(order, n1, n2)
    cache.store(class_set)
    return class_set
