from __future__ import annotations

from fractions import Fraction

import pytest

from arith_helper.linalg import (
    InconsistentSystemError,
    echelon_coordinates,
    hermite_normal_form,
    integer_kernel,
    kernel_mod_p,
    mat_vec,
    projective_points,
    rank_mod_p,
    rref_mod_p,
    rational_determinant,
    rational_inverse,
    saturate,
    solve_integer_system,
    xgcd,
)


def test_xgcd():
    for a, b in [(240, 46), (-7, 3), (0, 5), (12, 0), (-4, -6)]:
        g, x, y = xgcd(a, b)
        assert g >= 0
        assert x * a + y * b == g


def test_hnf_is_canonical():
    first = hermite_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    second = hermite_normal_form([[10, -4, -16], [2, 4, 4], [-4, 10, 16], [0, 0, 0]])
    assert first == second
    for row in first:
        pivot = next(v for v in row if v)
        assert pivot > 0


def test_hnf_reduces_above_pivots():
    hnf = hermite_normal_form([[3, 5], [0, 2]])
    assert hnf == [[3, 1], [0, 2]]


def test_integer_kernel_is_saturated():
    kernel = integer_kernel([[2, 3]])
    assert len(kernel) == 1
    assert 2 * kernel[0][0] + 3 * kernel[0][1] == 0
    assert abs(kernel[0][0]) == 3


def test_solve_integer_system():
    x, kernel = solve_integer_system([[2, 3]], [7])
    assert 2 * x[0] + 3 * x[1] == 7
    assert len(kernel) == 1
    with pytest.raises(InconsistentSystemError):
        solve_integer_system([[2, 4]], [3])


def test_saturate():
    assert saturate([[2, 4]], 2) == [[1, 2]]
    assert saturate([], 3) == []


def test_echelon_coordinates():
    echelon = hermite_normal_form([[1, 1, 0], [0, 2, 2]])
    coords = echelon_coordinates(echelon, [2, 4, 2])
    assert coords is not None
    combined = [sum(c * row[k] for c, row in zip(coords, echelon)) for k in range(3)]
    assert combined == [2, 4, 2]
    assert echelon_coordinates(echelon, [0, 0, 1]) is None


def test_kernel_mod_p():
    matrix = [[1, 2, 3], [2, 4, 6]]
    kernel = kernel_mod_p(matrix, 5)
    assert len(kernel) == 2
    for vec in kernel:
        assert all(v % 5 == 0 for v in mat_vec(matrix, vec))
    assert rank_mod_p(matrix, 5) == 1
    assert rank_mod_p([[2, 0], [0, 3]], 3) == 1


def test_rref_and_kernel_mod_p_are_normalized():
    assert rref_mod_p([[2, 4, 1], [1, 2, 3]], 5, 3) == ([[1, 2, 3]], [0])
    assert kernel_mod_p([[2, 4, 1], [1, 2, 3]], 5) == [[3, 1, 0], [2, 0, 1]]
    assert kernel_mod_p([], 3, 2) == [[1, 0], [0, 1]]
    assert kernel_mod_p([[1, 0], [0, 1]], 7) == []


def test_projective_points_count():
    for p, d in [(2, 2), (3, 3), (5, 2)]:
        points = list(projective_points(p, d))
        assert len(points) == (p ** d - 1) // (p - 1)
        assert len(set(points)) == len(points)


def test_rational_inverse_and_determinant():
    m = [[2, 1], [7, 4]]
    inv = rational_inverse(m)
    assert inv == [[4, -1], [-7, 2]]
    assert rational_determinant(m) == 1
    assert rational_determinant([[1, 2], [2, 4]]) == 0
    assert rational_determinant([[0, 1], [Fraction(1, 2), 0]]) == Fraction(-1, 2)
    with pytest.raises(ZeroDivisionError):
        rational_inverse([[1, 2], [2, 4]])
