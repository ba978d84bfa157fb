"""
Exact lattice reduction and short-vector enumeration for positive definite
Gram matrices with rational entries.

Used for every minimal-vector and theta-count question on rank 4 quaternion
lattices, so the code favours clarity over asymptotics.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import ceil, floor, isqrt
from typing import Dict, List, Sequence, Tuple

Gram = List[List[Fraction]]

LLL_DELTA = Fraction(3, 4)


def _as_gram(gram: Sequence[Sequence]) -> Gram:
    return [[Fraction(v) for v in row] for row in gram]


def gram_schmidt(gram: Gram) -> Tuple[List[List[Fraction]], List[Fraction]]:
    """
    Gram-Schmidt data of a Gram matrix.

    Returns:
        (mu, bstar) with mu[i][j] for j < i and bstar[i] = |b_i*|^2
    """
    n = len(gram)
    mu = [[Fraction(0)] * n for _ in range(n)]
    r = [[Fraction(0)] * n for _ in range(n)]
    bstar = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            r[i][j] = gram[i][j] - sum((mu[j][k] * r[i][k] for k in range(j)), Fraction(0))
            mu[i][j] = r[i][j] / bstar[j]
        bstar[i] = gram[i][i] - sum((mu[i][k] * r[i][k] for k in range(i)), Fraction(0))
        if bstar[i] <= 0:
            raise ValueError("Gram matrix is not positive definite")
    return mu, bstar


def lll_reduce(gram: Sequence[Sequence]) -> Tuple[Gram, List[List[int]]]:
    """
    LLL-reduce a positive definite Gram matrix exactly.

    Args:
        gram: Symmetric positive definite rational matrix

    Returns:
        (reduced, T) with T unimodular and reduced == T * gram * T^t
    """
    g = _as_gram(gram)
    n = len(g)
    t = [[int(i == j) for j in range(n)] for i in range(n)]
    if n <= 1:
        return g, t
    mu, bstar = gram_schmidt(g)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = floor(mu[k][j] + Fraction(1, 2))
            if q:
                g[k] = [a - q * b for a, b in zip(g[k], g[j])]
                for row in g:
                    row[k] -= q * row[j]
                t[k] = [a - q * b for a, b in zip(t[k], t[j])]
                mu, bstar = gram_schmidt(g)
        if bstar[k] < (LLL_DELTA - mu[k][k - 1] ** 2) * bstar[k - 1]:
            g[k], g[k - 1] = g[k - 1], g[k]
            for row in g:
                row[k], row[k - 1] = row[k - 1], row[k]
            t[k], t[k - 1] = t[k - 1], t[k]
            mu, bstar = gram_schmidt(g)
            k = max(k - 1, 1)
        else:
            k += 1
    return g, t


def quadratic_value(gram: Sequence[Sequence], x: Sequence[int]) -> Fraction:
    n = len(x)
    return sum((Fraction(gram[i][j]) * x[i] * x[j] for i in range(n) for j in range(n)), Fraction(0))


def short_vectors(gram: Sequence[Sequence], bound) -> List[Tuple[Fraction, Tuple[int, ...]]]:
    """
    All nonzero x with x G x^t <= bound, both signs included.

    Args:
        gram: Positive definite Gram matrix of the lattice basis
        bound: Inclusive upper bound on the quadratic value

    Returns:
        (value, coordinates) pairs sorted by value then coordinates; coordinates
        refer to the basis the Gram matrix was given in
    """
    bound = Fraction(bound)
    if bound <= 0:
        return []
    reduced, t = lll_reduce(gram)
    mu, bstar = gram_schmidt(reduced)
    n = len(reduced)
    found: List[Tuple[Fraction, Tuple[int, ...]]] = []
    x = [0] * n

    def descend(level: int, remaining: Fraction):
        center = -sum((mu[i][level] * x[i] for i in range(level + 1, n)), Fraction(0))
        radius = isqrt(floor(remaining / bstar[level])) + 1
        for value in range(floor(center) - radius, ceil(center) + radius + 1):
            used = bstar[level] * (value - center) ** 2
            if used > remaining:
                continue
            x[level] = value
            if level == 0:
                if any(x):
                    original = tuple(sum(x[i] * t[i][k] for i in range(n)) for k in range(n))
                    found.append((bound - (remaining - used), original))
            else:
                descend(level - 1, remaining - used)
        x[level] = 0

    descend(n - 1, bound)
    found.sort()
    return found


def count_values(gram: Sequence[Sequence], max_value: int) -> Dict[Fraction, int]:
    """Number of lattice vectors attaining each value up to max_value (zero vector excluded)."""
    return dict(Counter(value for value, _ in short_vectors(gram, max_value)))


def minimum(gram: Sequence[Sequence]) -> Tuple[Fraction, Tuple[int, ...]]:
    """Smallest nonzero value and a lexicographically first vector attaining it."""
    reduced, t = lll_reduce(gram)
    # The first reduced basis vector bounds the minimum from above.
    candidates = short_vectors(gram, reduced[0][0])
    return candidates[0]
