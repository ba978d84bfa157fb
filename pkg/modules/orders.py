"""
Orders in definite quaternion algebras: maximal orders, Eichler level at split
primes and the level p^e structure at ramified primes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import gcd, isqrt
from typing import List, Optional, Sequence

from arith_helper.exact import factorize, inverse_mod, kronecker_symbol, prime_divisors, valuation
from arith_helper.linalg import integer_kernel, kernel_mod_p, projective_points, rank_mod_p
from arith_helper.lattice_enum import short_vectors
from modules.errors import MalformedOrderError, PreconditionError
from modules.lattice import QuatLattice
from modules.quaternion import QuaternionAlgebra, construct_ramified

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Order(QuatLattice):
    """A lattice that is a unital ring of integral elements."""

    @classmethod
    def of(cls, lattice: QuatLattice) -> "Order":
        return cls(lattice.algebra, lattice.basis)

    @cached_property
    def discriminant(self) -> int:
        return reduced_discriminant(self)

    def validate(self) -> None:
        """Raise MalformedOrderError unless this lattice is an order."""
        one = (1, 0, 0, 0)
        if not self.contains(one):
            raise MalformedOrderError("lattice does not contain 1")
        if not self.is_integral_lattice():
            raise MalformedOrderError("lattice has non-integral elements")
        if not self.closed_under_multiplication():
            raise MalformedOrderError("lattice is not closed under multiplication")

    def element_coords(self, x: Sequence) -> List[int]:
        """Integer coordinates of an element of the order."""
        coords = self.coordinates(x)
        if coords is None or any(c.denominator != 1 for c in coords):
            raise MalformedOrderError(f"{x} does not lie in the order")
        return [int(c) for c in coords]


@dataclass(frozen=True)
class IdealLattice(QuatLattice):
    """A right ideal of ``right_order``; ``norm`` is the gcd-normalized reduced norm."""

    right_order: Optional[Order] = field(default=None, compare=False, repr=False)
    norm: Fraction = field(default=Fraction(0), compare=False)

    @classmethod
    def of(cls, lattice: QuatLattice, right_order: Order) -> "IdealLattice":
        return cls(lattice.algebra, lattice.basis, right_order, lattice.reduced_norm())

    def is_right_ideal(self) -> bool:
        mul = self.algebra.mul
        return all(self.contains(mul(x, o)) for x in self.basis for o in self.right_order.basis)

    def left_order(self) -> Order:
        return Order.of(self.left_order_lattice())


def reduced_discriminant(order: QuatLattice) -> int:
    """Square root of |det(trd(b_i conj b_j))|."""
    d2 = order.discriminant_squared()
    if d2.denominator != 1 or isqrt(d2.numerator) ** 2 != d2.numerator:
        raise MalformedOrderError(f"Gram determinant {d2} is not the square of an integer")
    return isqrt(d2.numerator)


def radical(order: Order, p: int) -> QuatLattice:
    """
    The lattice J with pO ⊆ J ⊆ O and J/pO the Jacobson radical of O/pO.

    The radical is the kernel of the pairing trd(xy) mod p; at p = 2 the
    additional F_2-linear condition nrd(x) ≡ 0 cuts it down further.
    """
    algebra = order.algebra
    basis = order.basis
    pairing = [[int(algebra.trd(algebra.mul(x, y))) for y in basis] for x in basis]
    kernel = kernel_mod_p(pairing, p)
    if p == 2 and kernel:
        values = [int(algebra.nrd(order.combination(v))) % 2 for v in kernel]
        sub = kernel_mod_p([values], 2, len(kernel))
        kernel = [[sum(c * v[k] for c, v in zip(combo, kernel)) % 2 for k in range(4)] for combo in sub]
    generators = [order.combination(v) for v in kernel]
    generators += [tuple(p * c for c in b) for b in basis]
    return QuatLattice.from_generators(algebra, generators)


def _quotient_complement(order: Order, sub: QuatLattice, p: int) -> List[List[int]]:
    """Order coordinates of standard vectors spanning a complement of sub/pO in O/pO."""
    rows = [[int(c) % p for c in order.element_coords(b)] for b in sub.basis]
    chosen: List[List[int]] = []
    for idx in range(4):
        unit = [int(idx == k) for k in range(4)]
        if rank_mod_p(rows + chosen + [unit], p) > rank_mod_p(rows + chosen, p):
            chosen.append(unit)
    return chosen


def _enlarge_at(order: Order, p: int) -> Optional[Order]:
    """A strictly larger order differing from ``order`` only at p, or None."""
    j = radical(order, p)
    bigger = Order.of(j.left_order_lattice())
    if bigger.covolume() < order.covolume():
        return bigger
    # Hereditary but not maximal: walk the right ideals between J and O.
    complement = _quotient_complement(order, j, p)
    for point in projective_points(p, len(complement)):
        coords = [sum(c * v[k] for c, v in zip(point, complement)) for k in range(4)]
        x = order.combination(coords)
        ideal = j + order.left_multiply(x)
        if ideal.same_lattice(order):
            continue
        candidate = Order.of(ideal.left_order_lattice())
        if candidate.covolume() < order.covolume() and candidate.contains_lattice(order):
            return candidate
    return None


def maximal_order(algebra: QuaternionAlgebra) -> Order:
    """
    A maximal order of the algebra, obtained by enlarging Z<1, i, j, k> one prime at a time.

    Raises:
        MalformedOrderError: If an enlargement step stalls before the discriminant is minimal
    """
    order = Order.of(QuatLattice.standard(algebra))
    for p in prime_divisors(2 * algebra.a * algebra.b):
        target = 1 if p in algebra.ramification else 0
        while valuation(order.discriminant, p) > target:
            bigger = _enlarge_at(order, p)
            if bigger is None:
                raise MalformedOrderError(
                    f"cannot enlarge order at {p}: discriminant {order.discriminant}"
                )
            order = bigger
    logger.debug("Maximal order of %s has discriminant %d", algebra, order.discriminant)
    return order


def _nrd_form(order: Order) -> List[List[int]]:
    """Integer matrix M with nrd(x) = sum_i M_ii x_i^2 + sum_{i<j} M_ij x_i x_j."""
    algebra = order.algebra
    basis = order.basis
    form = [[0] * 4 for _ in range(4)]
    for i in range(4):
        form[i][i] = int(algebra.nrd(basis[i]))
        for j in range(i + 1, 4):
            form[i][j] = int(algebra.trace_pairing(basis[i], basis[j]))
    return form


def _form_value(form, x) -> int:
    return sum(form[i][j] * x[i] * x[j] for i in range(4) for j in range(i, 4))


def _mul_mod(order: Order, x: Sequence[int], y: Sequence[int], modulus: int) -> List[int]:
    product_coords = order.element_coords(order.algebra.mul(order.combination(x), order.combination(y)))
    return [c % modulus for c in product_coords]


def split_idempotent(order: Order, q: int, f: int) -> List[int]:
    """
    Order coordinates of e with e^2 ≡ e mod q^f O and e of rank one mod q.

    A zero divisor x with nonzero trace mod q gives the idempotent x / trd(x)
    mod q, which Newton iteration e -> 3e^2 - 2e^3 lifts to q^f.
    """
    modulus = q ** f
    form = _nrd_form(order)
    trace = [int(order.algebra.trd(b)) for b in order.basis]
    small = [v for v in product(range(-1, 2), repeat=4) if any(v)]
    for u in small:
        for v in small:
            for s in range(q):
                x = [u_k + s * v_k for u_k, v_k in zip(u, v)]
                t = sum(c * tr for c, tr in zip(x, trace)) % q
                if t == 0 or _form_value(form, x) % q:
                    continue
                scale = inverse_mod(t, modulus)
                e = [(c * scale) % modulus for c in x]
                for _ in range(max(1, f.bit_length() + 1)):
                    e2 = _mul_mod(order, e, e, modulus)
                    e3 = _mul_mod(order, e2, e, modulus)
                    e = [(3 * a - 2 * b) % modulus for a, b in zip(e2, e3)]
                if _mul_mod(order, e, e, modulus) != e:
                    continue
                return e
    raise MalformedOrderError(f"no zero divisor found modulo {q}; is {q} ramified?")


def eichler_local_order(order: Order, q: int, f: int) -> QuatLattice:
    """{x in O : (1 - e) x e ≡ 0 mod q^f O}, the level q^f Eichler order at q (unchanged elsewhere)."""
    modulus = q ** f
    e = split_idempotent(order, q, f)
    one = order.element_coords((1, 0, 0, 0))
    one_minus_e = [(o - c) % modulus for o, c in zip(one, e)]
    rows = []
    for m in range(4):
        unit = [int(m == k) for k in range(4)]
        left = _mul_mod(order, one_minus_e, unit, modulus)
        rows.append(_mul_mod(order, left, e, modulus))
    # Solve c * rows ≡ 0 mod q^f through the integer kernel of [rows^t | q^f I].
    system = [[rows[m][k] for m in range(4)] + [modulus * int(k == r) for r in range(4)] for k in range(4)]
    kernel = integer_kernel(system, 8)
    generators = [order.combination(vec[:4]) for vec in kernel]
    return QuatLattice.from_generators(order.algebra, generators)


def ramified_local_order(order: Order, p: int, e: int) -> QuatLattice:
    """
    Z + Zx + p^k O with k = (e - 1) / 2 and Z_p[x] the unramified quadratic order.

    Reduced discriminant p^e; unit index p^(e - 1) in the maximal order.
    """
    k = (e - 1) // 2
    algebra = order.algebra
    gram = order.norm_gram()
    bound = 4
    while True:
        for _, coords in short_vectors(gram, bound):
            x = order.combination(coords)
            t = int(algebra.trd(x))
            n = int(algebra.nrd(x))
            if kronecker_symbol(t * t - 4 * n, p) == -1:
                generators = [(1, 0, 0, 0), x] + [tuple(p ** k * c for c in b) for b in order.basis]
                return QuatLattice.from_generators(algebra, generators)
        bound *= 2


def validate_level(algebra: QuaternionAlgebra, n1: int, n2: int) -> None:
    """
    Raises:
        PreconditionError: Unless N1 is supported exactly on the ramified primes with odd
            exponents and N2 is coprime to N1
    """
    if n1 < 1 or n2 < 1:
        raise PreconditionError(f"levels must be positive, got N1={n1}, N2={n2}")
    factors = factorize(n1)
    if tuple(p for p, _ in factors) != tuple(algebra.ramification):
        raise PreconditionError(
            f"N1={n1} must be supported exactly on the ramified primes {list(algebra.ramification)}"
        )
    even = [p for p, e in factors if e % 2 == 0]
    if even:
        raise PreconditionError(f"N1={n1} has even exponent at {even}")
    if gcd(n1, n2) != 1:
        raise PreconditionError(f"N1={n1} and N2={n2} are not coprime")


def order_of_level(algebra: QuaternionAlgebra, n1: int, n2: int) -> Order:
    """
    An order of level N1 * N2: level p^e at each ramified p^e || N1 and Eichler level q^f at q^f || N2.

    Raises:
        PreconditionError: For parity or coprimality violations
    """
    validate_level(algebra, n1, n2)
    base = maximal_order(algebra)
    lattice: QuatLattice = base
    for p, e in factorize(n1):
        if e > 1:
            lattice = lattice.intersection(ramified_local_order(base, p, e))
    for q, f in factorize(n2):
        lattice = lattice.intersection(eichler_local_order(base, q, f))
    order = Order.of(lattice)
    if order.discriminant != n1 * n2:
        raise MalformedOrderError(f"order has discriminant {order.discriminant}, expected {n1 * n2}")
    logger.info("Built order of level %d = %d * %d in %s", n1 * n2, n1, n2, algebra)
    return order


def algebra_for_level(n1: int) -> QuaternionAlgebra:
    return construct_ramified(prime_divisors(n1))


def two_sided_prime(order: Order, p: int) -> IdealLattice:
    """
    The two-sided ideal P of O above a ramified p at which O is maximal; P^2 = pO and nrd(P) = p.

    Raises:
        PreconditionError: If p is not ramified or O is not maximal at p
    """
    if not order.algebra.is_ramified(p):
        raise PreconditionError(f"{p} is not ramified in {order.algebra}")
    if valuation(order.discriminant, p) != 1:
        raise PreconditionError(f"order is not maximal at {p}")
    return IdealLattice.of(radical(order, p), order)
