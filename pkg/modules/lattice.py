"""
Full-rank Z-lattices inside a quaternion algebra.

A lattice is stored by its canonical basis: the rows of the Hermite normal
form of its generators written in the coordinates 1, i, j, k. Two lattices
are equal exactly when their canonical bases agree, which makes lattices
hashable and cheap to deduplicate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from arith_helper.exact import fraction_gcd, lcm
from arith_helper.linalg import (
    echelon_coordinates,
    hermite_normal_form,
    rational_determinant,
    rational_inverse,
)
from modules.quaternion import Coords, QuaternionAlgebra, conj_coords

Basis = Tuple[Coords, ...]


def _integerize(rows: Sequence[Sequence]) -> Tuple[List[List[int]], int]:
    den = lcm(*(Fraction(v).denominator for row in rows for v in row)) or 1
    return [[int(Fraction(v) * den) for v in row] for row in rows], den


def canonical_basis(generators: Iterable[Sequence]) -> Basis:
    """Hermite basis of the Z-span of the generators (rational coordinates allowed)."""
    rows = [tuple(Fraction(v) for v in g) for g in generators]
    int_rows, den = _integerize(rows)
    hnf = hermite_normal_form(int_rows)
    if len(hnf) != 4:
        raise ValueError(f"generators span a rank {len(hnf)} module, expected a full lattice")
    return tuple(tuple(Fraction(v, den) for v in row) for row in hnf)


@dataclass(frozen=True)
class QuatLattice:
    algebra: QuaternionAlgebra
    basis: Basis

    @classmethod
    def from_generators(cls, algebra: QuaternionAlgebra, generators: Iterable[Sequence]) -> "QuatLattice":
        return cls(algebra, canonical_basis(generators))

    @classmethod
    def standard(cls, algebra: QuaternionAlgebra) -> "QuatLattice":
        """Z<1, i, j, k>."""
        return cls.from_generators(algebra, [[int(i == j) for j in range(4)] for i in range(4)])

    def same_lattice(self, other: "QuatLattice") -> bool:
        return self.basis == other.basis

    def elements(self):
        return [self.algebra.element(b) for b in self.basis]

    def covolume(self) -> Fraction:
        """Index-style volume relative to Z<1, i, j, k>: the product of the Hermite pivots."""
        vol = Fraction(1)
        for idx, row in enumerate(self.basis):
            vol *= row[idx]
        return vol

    def coordinates(self, x: Sequence) -> Optional[List[Fraction]]:
        return echelon_coordinates(self.basis, x)

    def contains(self, x: Sequence) -> bool:
        coords = self.coordinates(x)
        return coords is not None and all(c.denominator == 1 for c in coords)

    def contains_lattice(self, other: "QuatLattice") -> bool:
        return all(self.contains(b) for b in other.basis)

    def __add__(self, other: "QuatLattice") -> "QuatLattice":
        return QuatLattice.from_generators(self.algebra, self.basis + other.basis)

    def scale(self, q) -> "QuatLattice":
        q = Fraction(q)
        return QuatLattice.from_generators(self.algebra, [[q * v for v in b] for b in self.basis])

    def left_multiply(self, x: Sequence) -> "QuatLattice":
        return QuatLattice.from_generators(self.algebra, [self.algebra.mul(x, b) for b in self.basis])

    def right_multiply(self, x: Sequence) -> "QuatLattice":
        return QuatLattice.from_generators(self.algebra, [self.algebra.mul(b, x) for b in self.basis])

    def product(self, other: "QuatLattice") -> "QuatLattice":
        """The lattice spanned by all products x * y with x in self and y in other."""
        mul = self.algebra.mul
        return QuatLattice.from_generators(self.algebra, [mul(x, y) for x in self.basis for y in other.basis])

    def conj(self) -> "QuatLattice":
        return QuatLattice.from_generators(self.algebra, [conj_coords(b) for b in self.basis])

    def dual(self) -> "QuatLattice":
        """Dual lattice for the coordinate dot product."""
        inverse = rational_inverse(self.basis)
        transposed = [[inverse[r][c] for r in range(4)] for c in range(4)]
        return QuatLattice.from_generators(self.algebra, transposed)

    def intersection(self, other: "QuatLattice") -> "QuatLattice":
        return (self.dual() + other.dual()).dual()

    def left_order_lattice(self) -> "QuatLattice":
        """{x : x * L ⊆ L}, the intersection of L * b^-1 over the basis."""
        result = None
        for b in self.basis:
            piece = self.right_multiply(self.algebra.inverse(b))
            result = piece if result is None else result.intersection(piece)
        return result

    def right_order_lattice(self) -> "QuatLattice":
        """{x : L * x ⊆ L}."""
        result = None
        for b in self.basis:
            piece = self.left_multiply(self.algebra.inverse(b))
            result = piece if result is None else result.intersection(piece)
        return result

    def trace_gram(self) -> List[List[Fraction]]:
        """Matrix of trd(b_i * conj(b_j))."""
        tp = self.algebra.trace_pairing
        return [[tp(x, y) for y in self.basis] for x in self.basis]

    def norm_gram(self, scale=1) -> List[List[Fraction]]:
        """Gram matrix of x -> nrd(x) / scale in this basis."""
        half = Fraction(1, 2) / Fraction(scale)
        return [[v * half for v in row] for row in self.trace_gram()]

    def reduced_norm(self) -> Fraction:
        """Positive generator of the Z-module spanned by nrd over the lattice."""
        values = [self.algebra.nrd(b) for b in self.basis]
        tp = self.algebra.trace_pairing
        values += [tp(self.basis[i], self.basis[j]) for i in range(4) for j in range(i + 1, 4)]
        return fraction_gcd(values)

    def discriminant_squared(self) -> Fraction:
        return abs(rational_determinant(self.trace_gram()))

    def is_integral_lattice(self) -> bool:
        """Every element has integral reduced trace and norm."""
        trd = self.algebra.trd
        nrd = self.algebra.nrd
        tp = self.algebra.trace_pairing
        if any(trd(b).denominator != 1 or nrd(b).denominator != 1 for b in self.basis):
            return False
        return all(tp(self.basis[i], self.basis[j]).denominator == 1 for i in range(4) for j in range(i + 1, 4))

    def closed_under_multiplication(self) -> bool:
        mul = self.algebra.mul
        return all(self.contains(mul(x, y)) for x in self.basis for y in self.basis)

    def combination(self, coords: Sequence[int]) -> Coords:
        """The element with the given coordinates in the canonical basis."""
        return tuple(sum((Fraction(c) * b[k] for c, b in zip(coords, self.basis)), Fraction(0)) for k in range(4))

    def to_record(self) -> List[List[str]]:
        return [[str(v) for v in row] for row in self.basis]
