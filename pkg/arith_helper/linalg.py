"""
Integer and modular linear algebra on lists of Python ints.

Lattices are spanned by row vectors. Hermite forms are row-style: pivots
move strictly right, pivots are positive, and entries above a pivot are
reduced into [0, pivot).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import List, Optional, Sequence, Tuple

from sympy import GF, Matrix, Rational
from sympy.polys.matrices import DomainMatrix

IntMatrix = List[List[int]]


class InconsistentSystemError(ValueError):
    """The linear system has no integral solution."""


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b == g == gcd(a, b) >= 0."""
    # Invariants:
    #          x * a +      y * b ==      g
    #     next_x * a + next_y * b == next_g
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> IntMatrix:
    """
    Canonical basis of the Z-span of the given integer rows.

    Args:
        rows: Integer vectors of a common length

    Returns:
        Rows of the Hermite normal form, zero rows removed
    """
    work = [list(map(int, r)) for r in rows if any(r)]
    if not work:
        return []
    ncols = len(work[0])
    m = len(work)
    pivot_row = 0
    for col in range(ncols):
        for r in range(pivot_row + 1, m):
            b = work[r][col]
            if b == 0:
                continue
            a = work[pivot_row][col]
            g, s, t = xgcd(a, b)
            top, other = work[pivot_row], work[r]
            ag, bg = a // g, b // g
            work[pivot_row] = [s * u + t * v for u, v in zip(top, other)]
            work[r] = [ag * v - bg * u for u, v in zip(top, other)]
        piv = work[pivot_row][col]
        if piv == 0:
            continue
        if piv < 0:
            work[pivot_row] = [-u for u in work[pivot_row]]
            piv = -piv
        for r in range(pivot_row):
            q = work[r][col] // piv
            if q:
                work[r] = [u - q * v for u, v in zip(work[r], work[pivot_row])]
        pivot_row += 1
        if pivot_row == m:
            break
    return work[:pivot_row]


def pivot_columns(echelon: Sequence[Sequence[int]]) -> List[int]:
    return [next(c for c, v in enumerate(row) if v) for row in echelon]


def integer_kernel(matrix: Sequence[Sequence[int]], ncols: Optional[int] = None) -> IntMatrix:
    """
    Saturated basis of {x in Z^n : A x = 0}, in Hermite form.

    Args:
        matrix: m x n integer matrix as rows (may have no rows if ncols is given)
        ncols: Number of columns, required when the matrix has no rows

    Returns:
        Kernel basis as rows; empty when the kernel is {0}
    """
    m = len(matrix)
    n = ncols if ncols is not None else len(matrix[0])
    augmented = [
        [int(matrix[r][j]) for r in range(m)] + [1 if k == j else 0 for k in range(n)]
        for j in range(n)
    ]
    hnf = hermite_normal_form(augmented)
    return [row[m:] for row in hnf if not any(row[:m])]


def reduce_modulo_lattice(vector: Sequence[int], echelon: Sequence[Sequence[int]]) -> List[int]:
    """Representative of vector modulo the lattice of a Hermite basis, pivot coordinates in [0, pivot)."""
    result = list(vector)
    for row, col in zip(echelon, pivot_columns(echelon)):
        q = result[col] // row[col]
        if q:
            result = [u - q * v for u, v in zip(result, row)]
    return result


def solve_integer_system(
    matrix: Sequence[Sequence[int]], target: Sequence[int]
) -> Tuple[List[int], IntMatrix]:
    """
    Solve A x = b over the integers.

    Returns:
        (particular, kernel) where every solution is particular plus a Z-combination
        of kernel rows; particular is reduced modulo the kernel's Hermite basis

    Raises:
        InconsistentSystemError: If there is no integral solution
    """
    n = len(matrix[0])
    augmented = [list(row) + [-int(b)] for row, b in zip(matrix, target)]
    extended_kernel = integer_kernel(augmented, n + 1)
    combo = [0] * (n + 1)
    g = 0
    for vec in extended_kernel:
        g_new, s, t = xgcd(g, vec[-1])
        combo = [s * u + t * v for u, v in zip(combo, vec)]
        g = g_new
    if g != 1:
        reason = "no rational solution" if g == 0 else f"solutions need denominator {g}"
        raise InconsistentSystemError(f"A x = b is not solvable over Z ({reason})")
    kernel = integer_kernel(matrix, n)
    return reduce_modulo_lattice(combo[:n], kernel), kernel


def saturate(vectors: Sequence[Sequence[int]], dimension: int) -> IntMatrix:
    """Hermite basis of (Q-span of vectors) ∩ Z^dimension."""
    vectors = [list(v) for v in vectors if any(v)]
    if not vectors:
        return []
    orthogonal = integer_kernel(vectors, dimension)
    if not orthogonal:
        return [[1 if i == j else 0 for j in range(dimension)] for i in range(dimension)]
    return integer_kernel(orthogonal, dimension)


def echelon_coordinates(echelon: Sequence[Sequence[int]], vector: Sequence) -> Optional[List[Fraction]]:
    """
    Coordinates c with sum c_k * echelon[k] == vector, or None if vector is outside the Q-span.
    """
    residual = [Fraction(v) for v in vector]
    coords = []
    for row, col in zip(echelon, pivot_columns(echelon)):
        c = residual[col] / row[col]
        coords.append(c)
        if c:
            residual = [u - c * v for u, v in zip(residual, row)]
    if any(residual):
        return None
    return coords


def _to_fraction(value) -> Fraction:
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


def _rational_matrix(matrix: Sequence[Sequence]) -> Matrix:
    return Matrix([[Rational(Fraction(v).numerator, Fraction(v).denominator) for v in row] for row in matrix])


def rref_mod_p(matrix: Sequence[Sequence[int]], p: int, ncols: int) -> Tuple[IntMatrix, List[int]]:
    """Reduced row echelon form over GF(p) with entries in [0, p), and its pivot columns."""
    field = GF(p)
    rows = [[field(int(v) % p) for v in row] for row in matrix]
    reduced, pivots = DomainMatrix(rows, (len(rows), ncols), field).rref()
    echelon = [[int(field.to_sympy(v)) % p for v in row] for row in reduced.to_list()]
    return echelon[:len(pivots)], list(pivots)


def kernel_mod_p(matrix: Sequence[Sequence[int]], p: int, ncols: Optional[int] = None) -> IntMatrix:
    """Basis of {x in F_p^n : A x = 0} with entries in [0, p), one vector per free column."""
    n = ncols if ncols is not None else len(matrix[0])
    echelon, pivots = rref_mod_p(matrix, p, n) if matrix else ([], [])
    basis = []
    for f in (c for c in range(n) if c not in pivots):
        vec = [0] * n
        vec[f] = 1
        for row_index, col in enumerate(pivots):
            vec[col] = (-echelon[row_index][f]) % p
        basis.append(vec)
    return basis


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    if not rows:
        return 0
    return len(rref_mod_p(rows, p, len(rows[0]))[1])


def projective_points(p: int, dimension: int):
    """Normalized representatives (first nonzero entry 1) of the lines of F_p^dimension."""
    for lead in range(dimension):
        for tail in product(range(p), repeat=dimension - lead - 1):
            yield (0,) * lead + (1,) + tail


def rational_inverse(matrix: Sequence[Sequence]) -> List[List[Fraction]]:
    try:
        inverse = _rational_matrix(matrix).inv()
    except ValueError:
        raise ZeroDivisionError("singular matrix")
    return [[_to_fraction(inverse[i, j]) for j in range(inverse.cols)] for i in range(inverse.rows)]


def rational_determinant(matrix: Sequence[Sequence]) -> Fraction:
    return _to_fraction(_rational_matrix(matrix).det())


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> List[List]:
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def mat_vec(a: Sequence[Sequence], v: Sequence) -> List:
    return [sum(x * y for x, y in zip(row, v)) for row in a]
