"""
Normalized pairing, the Eisenstein/cuspidal split and simultaneous
decomposition of the cuspidal lattice under a commuting family of Hecke
operators.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Matrix, Symbol, factor_list, Poly

from arith_helper.exact import content, lcm
from arith_helper.linalg import echelon_coordinates, integer_kernel, saturate
from modules.brandt import BrandtMatrix, hecke_operators
from modules.class_set import ClassSet

logger = logging.getLogger(__name__)

_X = Symbol("x")

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class HeckeEigenform:
    """A saturated integral eigenvector of every operator in the family."""

    form: Vector
    eigenvalues: Dict[int, int] = field(default_factory=dict)
    involutions: Dict[int, int] = field(default_factory=dict)

    def to_record(self):
        return {
            "form": list(self.form),
            "eigenvalues": dict(sorted(self.eigenvalues.items())),
            "involutions": dict(sorted(self.involutions.items())),
        }


@dataclass(frozen=True)
class HeckeBlock:
    """
    A Hecke-stable saturated sublattice with no further rational splitting.

    charpolys maps each operator to its factored characteristic polynomial on the
    block as a list of (coefficients highest first, multiplicity).
    """

    basis: Tuple[Vector, ...]
    charpolys: Dict[int, List[Tuple[Tuple[int, ...], int]]] = field(default_factory=dict)
    scalars: Optional[Dict[int, int]] = None

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def is_rational(self) -> bool:
        return self.scalars is not None

    def to_record(self):
        return {
            "basis": [list(v) for v in self.basis],
            "charpolys": {
                ell: [{"coefficients": list(c), "multiplicity": m} for c, m in polys]
                for ell, polys in sorted(self.charpolys.items())
            },
            "scalars": dict(sorted(self.scalars.items())) if self.scalars is not None else None,
        }


@dataclass(frozen=True)
class HeckeDecomposition:
    eisenstein: Vector
    cusp_basis: Tuple[Vector, ...]
    eigenforms: Tuple[HeckeEigenform, ...]
    blocks: Tuple[HeckeBlock, ...]
    operators: Dict[int, BrandtMatrix] = field(default_factory=dict, compare=False, repr=False)


def pairing(class_set: ClassSet, phi: Sequence, psi: Sequence) -> Fraction:
    """[phi, psi] = sum_i phi_i * psi_i / w_i for rational-valued forms."""
    return sum((Fraction(a) * Fraction(b) / w for a, b, w in zip(phi, psi, class_set.weights)), Fraction(0))


def eisenstein_form(class_set: ClassSet) -> Vector:
    return (1,) * class_set.h


def cuspidal_lattice(class_set: ClassSet) -> List[List[int]]:
    """Saturated basis of {phi in Z^h : [phi, phi_0] = 0}."""
    common = lcm(*class_set.weights)
    row = [common // w for w in class_set.weights]
    return integer_kernel([row], class_set.h)


def normalize_form(class_set: ClassSet, vector: Sequence[int]) -> Vector:
    """
    Divide by the content and fix the sign: positive at the class of largest weight
    (lowest index on ties), falling back to the next classes by that order when zero.
    """
    g = content(vector)
    if g == 0:
        return tuple(vector)
    scaled = [v // g for v in vector]
    ranking = sorted(range(class_set.h), key=lambda i: (-class_set.weights[i], i))
    for idx in ranking:
        if scaled[idx]:
            if scaled[idx] < 0:
                scaled = [-v for v in scaled]
            break
    return tuple(scaled)


def restrict(matrix: Sequence[Sequence[int]], basis: Sequence[Sequence[int]]) -> List[List[int]]:
    """
    Matrix of the operator on a stable lattice with Hermite basis ``basis``.

    Column m holds the coordinates of M * v_m.
    """
    dim = len(basis)
    columns = []
    for v in basis:
        image = [sum(a * b for a, b in zip(row, v)) for row in matrix]
        coords = echelon_coordinates(basis, image)
        if coords is None or any(c.denominator != 1 for c in coords):
            raise ValueError("lattice is not stable under the operator")
        columns.append([int(c) for c in coords])
    return [[columns[m][r] for m in range(dim)] for r in range(dim)]


def factored_charpoly(matrix: Sequence[Sequence[int]]) -> List[Tuple[Poly, int]]:
    poly = Matrix(matrix).charpoly(_X)
    _, factors = factor_list(poly.as_expr(), _X)
    result = [(Poly(f, _X), m) for f, m in factors]
    result.sort(key=lambda item: [int(c) for c in item[0].all_coeffs()])
    return result


def _poly_at(poly: Poly, matrix: Matrix) -> Matrix:
    result = Matrix.zeros(matrix.rows, matrix.cols)
    for c in poly.all_coeffs():
        result = result * matrix + int(c) * Matrix.eye(matrix.rows)
    return result


def _split_block(basis: List[List[int]], operator: Sequence[Sequence[int]], h: int) -> List[List[List[int]]]:
    restricted = restrict(operator, basis)
    factors = factored_charpoly(restricted)
    if len(factors) <= 1:
        return [basis]
    m = Matrix(restricted)
    pieces = []
    for poly, multiplicity in factors:
        kernel = (_poly_at(poly, m) ** multiplicity).nullspace()
        vectors = []
        for column in kernel:
            den = lcm(*(Fraction(str(c)).denominator for c in column))
            coords = [int(Fraction(str(c)) * den) for c in column]
            vectors.append([sum(coords[k] * basis[k][i] for k in range(len(basis))) for i in range(h)])
        pieces.append(saturate(vectors, h))
    return pieces


def _scalar_on(basis: Sequence[Sequence[int]], operator: BrandtMatrix) -> Optional[int]:
    restricted = restrict(operator.matrix, basis)
    value = restricted[0][0]
    for r, row in enumerate(restricted):
        for c, entry in enumerate(row):
            if entry != (value if r == c else 0):
                return None
    return value


def decompose(class_set: ClassSet, operators: Dict[int, BrandtMatrix]) -> HeckeDecomposition:
    """
    Split the cuspidal lattice into saturated pieces on which every operator has a
    single irreducible characteristic polynomial.
    """
    h = class_set.h
    cusp = cuspidal_lattice(class_set)
    blocks: List[List[List[int]]] = [cusp] if cusp else []
    for ell in sorted(operators):
        refined = []
        for basis in blocks:
            refined.extend(_split_block(basis, operators[ell].matrix, h))
        blocks = refined
    eigenforms: List[HeckeEigenform] = []
    others: List[HeckeBlock] = []
    for basis in sorted(blocks, key=lambda b: (len(b), b)):
        scalars = {ell: _scalar_on(basis, op) for ell, op in operators.items()}
        rational = all(v is not None for v in scalars.values())
        if len(basis) == 1 and rational:
            form = normalize_form(class_set, basis[0])
            eigenvalues = {ell: v for ell, v in scalars.items() if not operators[ell].ramified}
            involutions = {ell: v for ell, v in scalars.items() if operators[ell].ramified}
            eigenforms.append(HeckeEigenform(form, eigenvalues, involutions))
            continue
        charpolys = {}
        for ell, op in operators.items():
            charpolys[ell] = [
                (tuple(int(c) for c in poly.all_coeffs()), mult)
                for poly, mult in factored_charpoly(restrict(op.matrix, basis))
            ]
        others.append(HeckeBlock(tuple(tuple(v) for v in basis), charpolys, scalars if rational else None))
    eigenforms.sort(key=lambda f: f.form)
    logger.info("level %d: %d rational eigenforms, %d other blocks", class_set.level, len(eigenforms), len(others))
    return HeckeDecomposition(
        eisenstein_form(class_set),
        tuple(tuple(v) for v in cusp),
        tuple(eigenforms),
        tuple(others),
        operators,
    )


def eigenforms(class_set: ClassSet, ell_max: int, include_involutions: bool = True) -> HeckeDecomposition:
    """Hecke decomposition under B(l) for primes l <= ell_max (and the ramified involutions)."""
    return decompose(class_set, hecke_operators(class_set, ell_max, include_involutions))
