from __future__ import annotations

from fractions import Fraction
from math import prod

import pytest

from modules.errors import PreconditionError
from modules.lattice import QuatLattice
from modules.quaternion import QuaternionAlgebra, construct_ramified, ramified_at_infinity

I = (0, 1, 0, 0)
J = (0, 0, 1, 0)
K = (0, 0, 0, 1)


def test_hamilton_relations():
    algebra = QuaternionAlgebra(-1, -1)
    assert algebra.mul(I, J) == K
    assert algebra.mul(J, I) == (0, 0, 0, -1)
    assert algebra.mul(I, I) == (-1, 0, 0, 0)
    assert algebra.ramification == (2,)
    assert ramified_at_infinity(algebra)


def test_general_relations():
    algebra = QuaternionAlgebra(-2, -5)
    assert algebra.mul(I, I) == (-2, 0, 0, 0)
    assert algebra.mul(J, J) == (-5, 0, 0, 0)
    assert algebra.mul(K, K) == (-10, 0, 0, 0)


def test_norm_trace_and_conjugate():
    algebra = QuaternionAlgebra(-1, -3)
    x = algebra.element(1, 2, 3, 4)
    assert x.nrd() == 1 + 4 + 27 + 48
    assert x.trd() == 2
    assert (x * x.conj()).coords == (x.nrd(), 0, 0, 0)
    assert (x * x.inverse()).coords == (1, 0, 0, 0)
    assert algebra.trace_pairing(x.coords, x.coords) == 2 * x.nrd()


def test_nrd_is_multiplicative():
    algebra = QuaternionAlgebra(-3, -7)
    x = algebra.element(1, -1, 2, 0)
    y = algebra.element(Fraction(1, 2), 0, 1, Fraction(-3, 2))
    assert (x * y).nrd() == x.nrd() * y.nrd()


def test_indefinite_algebras_are_rejected():
    with pytest.raises(PreconditionError):
        QuaternionAlgebra(1, -1)
    with pytest.raises(PreconditionError):
        QuaternionAlgebra(-3, 5)
    with pytest.raises(PreconditionError):
        QuaternionAlgebra(0, -1)


@pytest.mark.parametrize("primes", [[2], [3], [11], [17], [2, 3, 5]])
def test_construct_ramified(primes):
    algebra = construct_ramified(primes)
    assert algebra.ramification == tuple(primes)
    assert algebra.discriminant() == prod(primes)


def test_construct_ramified_needs_odd_count():
    with pytest.raises(PreconditionError):
        construct_ramified([2, 3])


def test_lattice_canonical_basis_and_containment():
    algebra = QuaternionAlgebra(-1, -1)
    standard = QuatLattice.standard(algebra)
    shuffled = QuatLattice.from_generators(algebra, [K, J, (1, 1, 0, 0), I])
    assert standard.same_lattice(shuffled)
    assert standard == shuffled
    assert standard.covolume() == 1
    assert standard.scale(2).covolume() == 16
    assert standard.contains_lattice(standard.scale(2))
    assert not standard.scale(2).contains((1, 0, 0, 0))
    assert standard.closed_under_multiplication()
    assert standard.is_integral_lattice()


def test_lattice_rank_check():
    algebra = QuaternionAlgebra(-1, -1)
    with pytest.raises(ValueError):
        QuatLattice.from_generators(algebra, [I, J, K])


def test_intersection_and_sum():
    algebra = QuaternionAlgebra(-1, -1)
    standard = QuatLattice.standard(algebra)
    two = standard.scale(2)
    three = standard.scale(3)
    assert two.intersection(three).same_lattice(standard.scale(6))
    assert (two + three).same_lattice(standard)
