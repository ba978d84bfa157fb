"""
Right ideal operations: equivalence testing, unit weights, p-neighbors and
short representatives.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from arith_helper.lattice_enum import count_values, minimum, short_vectors
from arith_helper.linalg import projective_points
from modules.errors import ClassificationError
from modules.lattice import QuatLattice
from modules.orders import IdealLattice, Order
from modules.quaternion import Coords, conj_coords

logger = logging.getLogger(__name__)

ALLOWED_WEIGHTS = (1, 2, 3, 4, 6, 12)
INVARIANT_DEPTH = 3

InvariantKey = Tuple[int, ...]


def unit_ideal(order: Order) -> IdealLattice:
    return IdealLattice.of(order, order)


def is_equivalent(first: IdealLattice, second: IdealLattice) -> Optional[Coords]:
    """
    Witness b with first = b * second, or None when the classes differ.

    An element of first * conj(second) with nrd equal to nrd(first) * nrd(second)
    divided by nrd(second) is such a b.
    """
    product = first.product(second.conj())
    scale = first.norm * second.norm
    for value, coords in short_vectors(product.norm_gram(scale), 1):
        if value != 1:
            continue
        alpha = product.combination(coords)
        witness = tuple(c / second.norm for c in alpha)
        if second.left_multiply(witness).same_lattice(first):
            return witness
    return None


def left_order_theta(ideal: IdealLattice, depth: int = INVARIANT_DEPTH) -> InvariantKey:
    """Counts of nrd values 1..depth on the left order of the ideal."""
    lattice = ideal.product(ideal.conj())
    counts = count_values(lattice.norm_gram(ideal.norm * ideal.norm), depth)
    return tuple(counts.get(Fraction(v), 0) for v in range(1, depth + 1))


def unit_weight(ideal: IdealLattice) -> int:
    """Half the number of norm one elements of the left order."""
    units = left_order_theta(ideal, 1)[0]
    weight = units // 2
    if units % 2 or weight not in ALLOWED_WEIGHTS:
        raise ClassificationError(f"left order has {units} units, not a finite subgroup of B^x of the expected shape")
    return weight


def neighbors(ideal: IdealLattice, p: int) -> List[IdealLattice]:
    """
    The p + 1 right subideals J of index p^2 with nrd(J) = p * nrd(I), for p not dividing the level.

    J = x * O + p * I for x in I with nrd(x) / nrd(I) ≡ 0 mod p and x not in p * I.
    """
    order = ideal.right_order
    gram = ideal.norm_gram(ideal.norm)
    form = [[int(2 * gram[i][j]) if i != j else int(gram[i][i]) for j in range(4)] for i in range(4)]
    p_ideal = ideal.scale(p)
    target_norm = ideal.norm * p
    found: Dict[Tuple, IdealLattice] = {}
    for c in projective_points(p, 4):
        value = sum(form[i][i] * c[i] * c[i] for i in range(4))
        value += sum(form[i][j] * c[i] * c[j] for i in range(4) for j in range(i + 1, 4))
        if value % p:
            continue
        x = ideal.combination(c)
        lattice = order.left_multiply(x) + p_ideal
        if lattice.basis in found:
            continue
        candidate = IdealLattice.of(lattice, order)
        if candidate.norm != target_norm:
            continue
        found[lattice.basis] = candidate
    result = list(found.values())
    if len(result) != p + 1:
        logger.debug("found %d neighbors at %d instead of %d", len(result), p, p + 1)
    return result


def reduce_representative(ideal: IdealLattice) -> IdealLattice:
    """
    An equivalent integral ideal of small norm.

    For the shortest x in I (nrd(x) / nrd(I) minimal) the ideal conj(x) * I / nrd(I)
    is integral with norm nrd(x) / nrd(I).
    """
    _, coords = minimum(ideal.norm_gram(ideal.norm))
    x = ideal.combination(coords)
    multiplier = tuple(c / ideal.norm for c in conj_coords(x))
    lattice = ideal.left_multiply(multiplier)
    return IdealLattice.of(lattice, ideal.right_order)


def ideal_times(left: IdealLattice, right: QuatLattice, order: Order) -> IdealLattice:
    """Product lattice left * right viewed as a right ideal of ``order``."""
    return IdealLattice.of(left.product(right), order)
