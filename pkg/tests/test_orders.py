from __future__ import annotations

from math import prod

import pytest

from modules.errors import PreconditionError
from modules.lattice import QuatLattice
from modules.orders import (
    Order,
    algebra_for_level,
    maximal_order,
    order_of_level,
    reduced_discriminant,
    split_idempotent,
    two_sided_prime,
    validate_level,
)
from modules.quaternion import QuaternionAlgebra


def test_lipschitz_order_is_not_maximal():
    algebra = QuaternionAlgebra(-1, -1)
    assert reduced_discriminant(QuatLattice.standard(algebra)) == 4
    assert maximal_order(algebra).discriminant == 2


@pytest.mark.parametrize("primes", [[2], [3], [11], [2, 3, 5]])
def test_maximal_order_discriminant(primes):
    algebra = algebra_for_level(prod(primes))
    order = maximal_order(algebra)
    order.validate()
    assert order.discriminant == prod(primes)


@pytest.mark.parametrize(
    "n1, n2",
    [(11, 1), (11, 13), (13, 11), (2, 25), (27, 1), (32, 1), (3, 4)],
)
def test_order_of_level_has_discriminant_n(n1, n2):
    order = order_of_level(algebra_for_level(n1), n1, n2)
    order.validate()
    assert order.discriminant == n1 * n2


def test_validate_level_rejects_bad_splits():
    algebra = algebra_for_level(11)
    with pytest.raises(PreconditionError):
        validate_level(algebra, 11, 11)
    with pytest.raises(PreconditionError):
        validate_level(algebra, 13, 1)
    with pytest.raises(PreconditionError):
        validate_level(algebra_for_level(3), 9, 1)


def test_split_idempotent():
    order = maximal_order(algebra_for_level(11))
    e = split_idempotent(order, 13, 2)
    square = order.element_coords(order.algebra.mul(order.combination(e), order.combination(e)))
    assert all((s - c) % 169 == 0 for s, c in zip(square, e))


def test_two_sided_prime_squares_to_p():
    order = maximal_order(algebra_for_level(11))
    prime = two_sided_prime(order, 11)
    assert prime.norm == 11
    assert prime.product(prime).same_lattice(order.scale(11))
    with pytest.raises(PreconditionError):
        two_sided_prime(order, 13)


def test_order_of_is_a_view():
    order = maximal_order(algebra_for_level(2))
    assert Order.of(order) == order
    assert order.contains((1, 0, 0, 0))
