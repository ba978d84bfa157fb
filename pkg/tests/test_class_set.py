from __future__ import annotations

from fractions import Fraction
from math import isqrt

import pytest

from modules.class_set import (
    admissible_splits,
    build_class_set,
    check_split,
    default_split,
    mass_formula,
    mass_numerator,
)
from modules.errors import PreconditionError
from modules.ideals import ALLOWED_WEIGHTS, is_equivalent, unit_weight


@pytest.mark.parametrize(
    "n1, n2, expected",
    [
        (11, 13, Fraction(35, 3)),
        (13, 11, Fraction(12)),
        (27, 1, Fraction(3, 2)),
        (17, 1, Fraction(4, 3)),
        (11, 1, Fraction(5, 6)),
        (2, 25, Fraction(5, 2)),
    ],
)
def test_mass_formula(n1, n2, expected):
    assert mass_formula(n1, n2) == expected


def test_mass_numerator():
    assert mass_numerator(11, 13) == 35
    assert mass_numerator(13, 11) == 12
    assert mass_numerator(11, 1) == 5


@pytest.mark.parametrize("n1, n2", [(25, 1), (6, 1), (11, 11), (1, 7)])
def test_check_split_rejects(n1, n2):
    with pytest.raises(PreconditionError):
        check_split(n1, n2)


def test_admissible_and_default_splits():
    assert admissible_splits(143) == [(11, 13), (13, 11)]
    assert admissible_splits(50) == [(2, 25)]
    assert admissible_splits(25) == []
    assert default_split(143) == (11, 13)
    with pytest.raises(PreconditionError):
        default_split(25)


def test_level_11_class_set(cs11):
    assert cs11.h == 2
    assert sorted(cs11.weights) == [2, 3]
    assert cs11.weight_mass() == cs11.mass == Fraction(5, 6)
    assert cs11.ideals[0].same_lattice(cs11.order)


@pytest.mark.parametrize("fixture", ["cs17", "cs27", "cs32", "cs50", "cs143_11", "cs143_13"])
def test_mass_certifies_completeness(fixture, request):
    class_set = request.getfixturevalue(fixture)
    assert class_set.weight_mass() == class_set.mass
    assert all(w in ALLOWED_WEIGHTS for w in class_set.weights)
    assert class_set.order.discriminant == class_set.level


def test_representatives_are_inequivalent(cs143_11):
    ideals = cs143_11.ideals
    for i in range(len(ideals)):
        for j in range(i + 1, len(ideals)):
            assert is_equivalent(ideals[i], ideals[j]) is None


def test_classify_finds_each_representative(cs27):
    for idx, ideal in enumerate(cs27.ideals):
        assert cs27.classify(ideal) == idx
        assert unit_weight(ideal) == cs27.weights[idx]


@pytest.mark.parametrize("level, primes", [(11, ([2], [3])), (17, ([2], [5])), (23, ([3], [5]))])
def test_classes_do_not_depend_on_the_neighbor_prime(level, primes):
    first, second = (build_class_set(level, 1, p) for p in primes)
    assert sorted(first.weights) == sorted(second.weights)
    matched = [second.classify(ideal) for ideal in first.ideals]
    assert sorted(matched) == list(range(second.h))
    assert [second.weights[j] for j in matched] == list(first.weights)


@pytest.mark.slow
def test_mass_sweep_up_to_150():
    for level in range(2, 151):
        if isqrt(level) ** 2 == level:
            continue
        for n1, n2 in admissible_splits(level):
            class_set = build_class_set(n1, n2)
            assert class_set.weight_mass() == mass_formula(n1, n2), (n1, n2)
