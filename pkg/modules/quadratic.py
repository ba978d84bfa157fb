"""
Imaginary quadratic fields through reduced binary quadratic forms: class
groups, their structure and their characters.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Dict, List, Tuple

from sympy import factorint

from arith_helper.cyclotomic import CyclotomicInt
from arith_helper.exact import kronecker_symbol, lcm
from arith_helper.linalg import xgcd
from modules.errors import PreconditionError

logger = logging.getLogger(__name__)


def is_fundamental(d: int) -> bool:
    """Fundamental discriminants: d = 1 mod 4 squarefree, or d = 4m with m = 2, 3 mod 4 squarefree."""
    if d in (0, 1):
        return False

    def squarefree(n: int) -> bool:
        return all(e == 1 for e in factorint(abs(n)).values())

    if d % 4 == 1:
        return squarefree(d)
    if d % 4 == 0:
        return (d // 4) % 4 in (2, 3) and squarefree(d // 4)
    return False


def inert_at(discriminant: int, p: int) -> bool:
    return kronecker_symbol(discriminant, p) == -1


@dataclass(frozen=True, order=True)
class BinaryQF:
    a: int
    b: int
    c: int

    def __iter__(self):
        yield self.a
        yield self.b
        yield self.c

    def __repr__(self):
        return f"({self.a},{self.b},{self.c})"

    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __mul__(self, other: "BinaryQF") -> "BinaryQF":
        """Composition of two forms of the same discriminant, not reduced."""
        first, second = (self, other) if self.a <= other.a else (other, self)
        a1, b1, _ = first
        a2, b2, c2 = second
        s = (b1 + b2) // 2
        n = b2 - s
        if a2 % a1 == 0:
            y1, d = 0, a1
        else:
            d, y1, _ = xgcd(a2, a1)
        if s % d == 0:
            x2, y2, d1 = 0, -1, d
        else:
            d1, x2, v = xgcd(s, d)
            y2 = -v
        v1, v2 = a1 // d1, a2 // d1
        r = (y1 * y2 * n - x2 * c2) % v1
        b3 = b2 + 2 * v2 * r
        a3 = v1 * v2
        c3 = (b3 * b3 - self.discriminant()) // (4 * a3)
        return BinaryQF(a3, b3, c3)

    def square(self) -> "BinaryQF":
        return self * self

    def inverse(self) -> "BinaryQF":
        return BinaryQF(self.a, -self.b, self.c).reduced_form()

    def normalize(self) -> "BinaryQF":
        a, b, c = self
        r = (a - b) // (2 * a)
        return BinaryQF(a, b + 2 * r * a, a * r * r + b * r + c)

    def reduced_form(self) -> "BinaryQF":
        a, b, c = self.normalize()
        while not (a < c or (a == c and b >= 0)):
            s = (c + b) // (2 * c)
            a, b, c = c, -b + 2 * s * c, c * s * s - b * s + a
        return BinaryQF(a, b, c)

    def is_reduced(self) -> bool:
        a, b, c = self
        if not (abs(b) <= a <= c):
            return False
        return b >= 0 if (abs(b) == a or a == c) else True

    def ideal_basis(self) -> Tuple[int, int, int]:
        """
        The O_K-ideal <a, (-b + sqrt(D)) / 2> as (a, u, 1) meaning the Z-basis a, u + omega,
        with omega = (d + sqrt(D)) / 2 and d = D mod 2.
        """
        delta = self.discriminant() % 2
        return self.a, (-self.b - delta) // 2, 1


def principal_form(discriminant: int) -> BinaryQF:
    k = discriminant % 2
    return BinaryQF(1, k, (k * k - discriminant) // 4)


@dataclass(frozen=True)
class ImagQuadField:
    """Q(sqrt(D)) for a negative fundamental discriminant D."""

    discriminant: int

    def __post_init__(self):
        if self.discriminant >= 0 or not is_fundamental(self.discriminant):
            raise PreconditionError(f"{self.discriminant} is not a negative fundamental discriminant")

    @property
    def units(self) -> int:
        return {-3: 6, -4: 4}.get(self.discriminant, 2)

    @property
    def omega_trace(self) -> int:
        return self.discriminant % 2

    @property
    def omega_norm(self) -> int:
        """omega = (d + sqrt(D)) / 2 has minimal polynomial x^2 - d x + (d^2 - D) / 4."""
        d = self.omega_trace
        return (d * d - self.discriminant) // 4

    def inert_at(self, p: int) -> bool:
        return inert_at(self.discriminant, p)

    def splits_at(self, p: int) -> bool:
        return kronecker_symbol(self.discriminant, p) == 1

    @cached_property
    def class_group(self) -> "FormClassGroup":
        return FormClassGroup.of(self.discriminant)


def reduced_forms(discriminant: int) -> List[BinaryQF]:
    """All reduced primitive forms of the discriminant, sorted."""
    if discriminant >= 0 or discriminant % 4 not in (0, 1):
        raise PreconditionError(f"{discriminant} is not a negative discriminant")
    forms = []
    a = 1
    while 3 * a * a <= -discriminant:
        for b in range(-a + 1, a + 1):
            if (b * b - discriminant) % (4 * a):
                continue
            c = (b * b - discriminant) // (4 * a)
            if c < a or gcd(gcd(a, b), c) != 1:
                continue
            form = BinaryQF(a, b, c)
            if form.is_reduced():
                forms.append(form)
        a += 1
    return sorted(forms)


def _prime_power_counts(orders: List[int], p: int) -> List[int]:
    """Invariant factor exponents at p from the number of elements of order dividing p^k."""
    counts = [1]
    k = 1
    while True:
        n = sum(1 for o in orders if (p ** k) % o == 0)
        if n == counts[-1]:
            break
        counts.append(n)
        k += 1
    # ranks[k - 1] is the number of cyclic factors of order at least p^k
    ranks = []
    for k in range(1, len(counts)):
        ratio, r = counts[k] // counts[k - 1], 0
        while ratio > 1:
            ratio //= p
            r += 1
        ranks.append(r)
    exponents = []
    for k, r in enumerate(ranks, start=1):
        following = ranks[k] if k < len(ranks) else 0
        exponents.extend([k] * (r - following))
    return exponents


@dataclass(frozen=True)
class ClassCharacter:
    """A character t -> zeta_e^{exponents[t]} of the class group."""

    index: int
    conductor: int
    exponents: Tuple[int, ...]

    def value(self, t: int) -> CyclotomicInt:
        return CyclotomicInt.zeta_power(self.conductor, self.exponents[t])

    def is_trivial(self) -> bool:
        return not any(self.exponents)

    @property
    def order(self) -> int:
        g = self.conductor
        for v in self.exponents:
            g = gcd(g, v)
        return self.conductor // g

    def to_record(self):
        return {"index": self.index, "conductor": self.conductor, "exponents": list(self.exponents)}


@dataclass(frozen=True)
class FormClassGroup:
    """
    The class group of discriminant D as reduced forms with their composition table.

    forms[0] is the principal form.
    """

    discriminant: int
    forms: Tuple[BinaryQF, ...]
    table: Tuple[Tuple[int, ...], ...] = field(repr=False)

    @classmethod
    def of(cls, discriminant: int) -> "FormClassGroup":
        if not is_fundamental(discriminant):
            raise PreconditionError(f"{discriminant} is not fundamental")
        identity = principal_form(discriminant)
        forms = [identity] + [f for f in reduced_forms(discriminant) if f != identity]
        index = {f: i for i, f in enumerate(forms)}
        table = tuple(tuple(index[(f * g).reduced_form()] for g in forms) for f in forms)
        logger.debug("class group of %d: h = %d", discriminant, len(forms))
        return cls(discriminant, tuple(forms), table)

    @property
    def h(self) -> int:
        return len(self.forms)

    def compose(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inverse(self, i: int) -> int:
        return self.table[i].index(0)

    def power(self, i: int, n: int) -> int:
        result = 0
        for _ in range(n):
            result = self.table[result][i]
        return result

    @cached_property
    def element_orders(self) -> List[int]:
        orders = []
        for i in range(self.h):
            n, current = 1, i
            while current != 0:
                current = self.table[current][i]
                n += 1
            orders.append(n)
        return orders

    @property
    def exponent(self) -> int:
        return lcm(*self.element_orders) if self.h > 1 else 1

    def structure(self) -> List[int]:
        """Invariant factors d_1 | d_2 | ... with product h; empty for the trivial group."""
        orders = self.element_orders
        per_prime: Dict[int, List[int]] = {}
        for p in factorint(self.h):
            per_prime[p] = sorted(_prime_power_counts(orders, p), reverse=True)
        length = max((len(v) for v in per_prime.values()), default=0)
        factors = [1] * length
        for p, exponents in per_prime.items():
            for idx, e in enumerate(exponents):
                factors[idx] *= p ** e
        return sorted(factors)

    def characters(self) -> List[ClassCharacter]:
        """
        The full dual group, built by extending characters one element at a time.

        Values are powers of zeta_e with e the group exponent; index 0 is trivial.
        """
        e = self.exponent
        subgroup = [0]
        chars: List[Dict[int, int]] = [{0: 0}]
        while len(subgroup) < self.h:
            members = set(subgroup)
            g = next(i for i in range(self.h) if i not in members)
            k, power = 1, g
            while power not in members:
                power = self.table[power][g]
                k += 1
            cosets = [subgroup]
            current = subgroup
            for _ in range(1, k):
                current = [self.table[x][g] for x in current]
                cosets.append(current)
            extended = []
            for chi in chars:
                base = chi[power]
                for j in range(k):
                    v = (base // k + j * e // k) % e
                    new = {}
                    for i, coset in enumerate(cosets):
                        for x, y in zip(subgroup, coset):
                            new[y] = (chi[x] + i * v) % e
                    extended.append(new)
            chars = extended
            subgroup = [y for coset in cosets for y in coset]
        result = [tuple(chi[t] for t in range(self.h)) for chi in chars]
        result.sort(key=lambda ex: (any(ex), ex))
        return [ClassCharacter(i, e, ex) for i, ex in enumerate(result)]


def class_number(discriminant: int) -> int:
    return len(reduced_forms(discriminant))


def fundamental_discriminants(bound: int) -> List[int]:
    """Negative fundamental discriminants with |D| <= bound, in decreasing order."""
    return [d for d in range(-3, -bound - 1, -1) if is_fundamental(d)]

