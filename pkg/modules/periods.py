"""
Toric periods of quaternionic forms and the algebraic central L-values
they define.

An optimal embedding O_K -> O sends each ideal class of K to a right ideal
class of O; summing a form over that map twisted by a class character gives
the period, and its squared absolute value is the algebraic L-value.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from sympy import isprime

from arith_helper.cyclotomic import CyclotomicInt
from arith_helper.exact import content, prime_divisors
from arith_helper.lattice_enum import short_vectors
from modules.class_set import ClassSet
from modules.errors import PreconditionError, UnsupportedError
from modules.message_manager import VerificationLog
from modules.orders import IdealLattice, Order
from modules.quadratic import ClassCharacter, FormClassGroup, ImagQuadField
from modules.quaternion import Coords

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Embedding:
    """
    omega with trd(omega) = t and nrd(omega) = n, the image of (t + sqrt(D)) / 2,
    lying in the left order of the class representative I_base.
    """

    quad_field: ImagQuadField
    omega: Coords
    base: int = 0

    def to_record(self):
        return {
            "discriminant": self.quad_field.discriminant,
            "omega": [str(c) for c in self.omega],
            "base_class": self.base,
        }


def _check_embeddable(quad_field: ImagQuadField, level: int) -> None:
    split = [p for p in prime_divisors(level) if quad_field.splits_at(p)]
    if split:
        raise PreconditionError(
            f"{quad_field.discriminant} splits at {split}; K does not embed in the algebra ramified there"
        )


def optimal_embeddings(order: Order, quad_field: ImagQuadField, base: int = 0) -> Iterator[Embedding]:
    """Every omega in the order with the trace and norm of the standard generator of O_K."""
    t, n = quad_field.omega_trace, quad_field.omega_norm
    algebra = order.algebra
    for value, coords in short_vectors(order.norm_gram(1), n):
        if value != n:
            continue
        omega = order.combination(coords)
        if algebra.trd(omega) == t:
            yield Embedding(quad_field, omega, base)


def optimal_embedding(class_set: ClassSet, quad_field: ImagQuadField) -> Embedding:
    """
    The first optimal embedding of O_K into O, or failing that into the left order
    of the next class representative.

    Raises:
        PreconditionError: If some prime dividing the level splits in K
        UnsupportedError: If no left order receives O_K
    """
    _check_embeddable(quad_field, class_set.level)
    for base, ideal in enumerate(class_set.ideals):
        order = class_set.order if base == 0 else ideal.left_order()
        embedding = next(optimal_embeddings(order, quad_field, base), None)
        if embedding is not None:
            logger.debug("embedding of %d into class %d: omega = %s", quad_field.discriminant, base, embedding.omega)
            return embedding
    raise UnsupportedError(f"no optimal embedding of discriminant {quad_field.discriminant}; is the order maximal?")


@dataclass(frozen=True)
class ClassMap:
    """images[t] is the class-set index of x(t) for the form class t."""

    discriminant: int
    images: Tuple[int, ...]
    h: int

    @property
    def fibers(self) -> Tuple[int, ...]:
        counts = Counter(self.images)
        return tuple(counts.get(i, 0) for i in range(self.h))

    def to_record(self):
        return {"discriminant": self.discriminant, "images": list(self.images), "fibers": list(self.fibers)}


def class_map(embedding: Embedding, group: FormClassGroup, class_set: ClassSet) -> ClassMap:
    """
    Push each form ideal <a, u + omega> to the right ideal a I + (u + omega) I, with I the
    base representative whose left order holds omega, and classify it.
    """
    base = class_set.ideals[embedding.base]
    images = []
    for form in group.forms:
        a, u, _ = form.ideal_basis()
        generator = tuple(c + (u if k == 0 else 0) for k, c in enumerate(embedding.omega))
        lattice = base.left_multiply((a, 0, 0, 0)) + base.left_multiply(generator)
        images.append(class_set.classify(IdealLattice.of(lattice, class_set.order)))
    if images[0] != embedding.base:
        logger.warning("principal class of %d maps to class %d, not %d", group.discriminant, images[0], embedding.base)
    return ClassMap(group.discriminant, tuple(images), class_set.h)


def normalize_content(phi: Sequence[int]) -> Tuple[int, ...]:
    g = content(phi)
    return tuple(v // g for v in phi) if g else tuple(phi)


def period(phi: Sequence[int], character: ClassCharacter, cmap: ClassMap) -> CyclotomicInt:
    """sum_t phi(x(t)) * conj(chi(t))."""
    terms = [(phi[cmap.images[t]], -character.exponents[t]) for t in range(len(cmap.images))]
    return CyclotomicInt.from_powers(character.conductor, terms)


@dataclass(frozen=True)
class AlgLValue:
    discriminant: int
    character: int
    period: CyclotomicInt
    value: CyclotomicInt

    def to_record(self):
        return {
            "discriminant": self.discriminant,
            "character": self.character,
            "period": self.period,
            "value": self.value.to_int() if self.value.is_rational() else self.value,
        }


def alg_lvalue(phi: Sequence[int], character: ClassCharacter, cmap: ClassMap) -> AlgLValue:
    """|P_chi(phi)|^2 for the content-normalized phi."""
    p = period(normalize_content(phi), character, cmap)
    return AlgLValue(cmap.discriminant, character.index, p, p.abs_squared())


def c_phi(phi: Sequence[int], modulus: int) -> int:
    """
    The common nonzero residue of the content-normalized phi modulo p^r.

    Raises:
        PreconditionError: If the values disagree or vanish modulo p^r
    """
    residues = {v % modulus for v in normalize_content(phi)}
    if len(residues) != 1 or 0 in residues:
        raise PreconditionError(f"phi is not congruent to a nonzero constant mod {modulus}")
    return residues.pop()


def trivial_character_candidates(phi: Sequence[int], h_k: int) -> Set[int]:
    """{(sum_i n_i phi_i)^2 : n_i >= 0, sum n_i = h_K}."""
    return {sum(choice) ** 2 for choice in combinations_with_replacement(list(phi), h_k)}


def parseval_check(phi: Sequence[int], cmap: ClassMap, characters: Sequence[ClassCharacter]) -> bool:
    """sum_chi |P_chi(phi)|^2 == h_K * sum_t |phi(x(t))|^2."""
    if not characters:
        return True
    total = CyclotomicInt.from_int(characters[0].conductor, 0)
    for chi in characters:
        total = total + period(phi, chi, cmap).abs_squared()
    h_k = len(cmap.images)
    return total == h_k * sum(phi[i] ** 2 for i in cmap.images)


def _vanishes_mod(value: CyclotomicInt, p: int, r: int) -> bool:
    if r == 1:
        return value.vanishes_mod_primes_above(p)
    if value.conductor % p == 0:
        raise UnsupportedError(f"{p} ramifies in Q(zeta_{value.conductor}); mod p^{r} is not implemented there")
    return value.divisible_by(p ** r)


@dataclass
class Theorem2Entry:
    discriminant: int
    h_k: int
    character: int
    character_order: int
    period: CyclotomicInt
    lvalue: CyclotomicInt
    target: Optional[int]
    passed: bool
    in_candidates: Optional[bool] = None

    def to_record(self):
        return {
            "discriminant": self.discriminant,
            "h_K": self.h_k,
            "character": self.character,
            "character_order": self.character_order,
            "period": self.period,
            "L_alg": self.lvalue.to_int() if self.lvalue.is_rational() else self.lvalue,
            "target_residue": self.target,
            "passed": self.passed,
            "in_candidates": self.in_candidates,
        }


@dataclass
class Theorem2Report:
    level: int
    p: int
    r: int
    c_phi: int
    phi: Tuple[int, ...]
    entries: List[Theorem2Entry] = field(default_factory=list)
    skipped: List[Dict] = field(default_factory=list)
    log: VerificationLog = field(default_factory=VerificationLog)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def to_record(self):
        return {
            "N": self.level,
            "p": self.p,
            "r": self.r,
            "phi": list(self.phi),
            "c_phi": self.c_phi,
            "passed": self.passed,
            "entries": self.entries,
            "skipped": self.skipped,
            "log": self.log,
        }


def _require_maximal(class_set: ClassSet) -> None:
    if class_set.n2 != 1 or any(class_set.n1 % (p * p) == 0 for p in prime_divisors(class_set.n1)):
        raise UnsupportedError("periods are implemented for maximal orders (N = N1 squarefree, N2 = 1)")


def _out_of_scope_reason(quad_field: ImagQuadField, level: int) -> Optional[str]:
    for p in prime_divisors(level):
        if quad_field.splits_at(p):
            return f"splits at {p}"
        if not quad_field.inert_at(p):
            return f"ramified at {p}"
    return None


def lvalues_for_field(class_set: ClassSet, phi: Sequence[int], discriminant: int):
    """(field, group, class map, [AlgLValue per character]) for one inert discriminant."""
    _require_maximal(class_set)
    quad_field = ImagQuadField(discriminant)
    group = quad_field.class_group
    embedding = optimal_embedding(class_set, quad_field)
    cmap = class_map(embedding, group, class_set)
    values = [alg_lvalue(phi, chi, cmap) for chi in group.characters()]
    return quad_field, group, cmap, values


def verify_theorem2(
    class_set: ClassSet,
    phi: Sequence[int],
    p: int,
    r: int,
    discriminants: Iterable[int],
) -> Theorem2Report:
    """
    Check L_alg(chi) = delta_{chi,1} c_phi^2 h_K^2 modulo p^r for each inert discriminant.

    Discriminants not inert at every prime of the level are listed as skipped.
    """
    _require_maximal(class_set)
    phi = normalize_content(phi)
    modulus = p ** r
    c = c_phi(phi, modulus)
    report = Theorem2Report(class_set.level, p, r, c, tuple(phi))
    for d in discriminants:
        quad_field = ImagQuadField(d)
        reason = _out_of_scope_reason(quad_field, class_set.level)
        if reason:
            report.skipped.append({"discriminant": d, "reason": reason})
            continue
        _, group, cmap, values = lvalues_for_field(class_set, phi, d)
        characters = group.characters()
        for chi, lvalue in zip(characters, values):
            if chi.is_trivial():
                value = lvalue.value.to_int()
                target = (c * c * group.h * group.h) % modulus
                ok = (value - target) % modulus == 0
                candidates = trivial_character_candidates(phi, group.h)
                entry = Theorem2Entry(d, group.h, chi.index, 1, lvalue.period, lvalue.value, target, ok,
                                      value in candidates)
            else:
                ok = _vanishes_mod(lvalue.value, p, r)
                entry = Theorem2Entry(d, group.h, chi.index, chi.order, lvalue.period, lvalue.value, 0, ok)
            report.log.check(ok, f"D = {d}, chi_{chi.index}: L_alg = {lvalue.value}")
            report.entries.append(entry)
    logger.info("level %d mod %d^%d: %d checks, %d skipped", class_set.level, p, r,
                len(report.entries), len(report.skipped))
    return report


def is_prime_discriminant(discriminant: int) -> bool:
    return discriminant in (-4, -8) or (discriminant % 4 == 1 and isprime(-discriminant))


@dataclass(frozen=True)
class NonvanishingVerdict:
    discriminant: int
    verdict: str
    h_k: Optional[int] = None
    period: Optional[int] = None
    genus_check: Optional[bool] = None
    reason: str = ""

    def to_record(self):
        return {
            "discriminant": self.discriminant,
            "verdict": self.verdict,
            "h_K": self.h_k,
            "period": self.period,
            "genus_check": self.genus_check,
            "reason": self.reason,
        }


NONVANISHING = "nonvanishing"
INCONCLUSIVE = "inconclusive"
OUT_OF_SCOPE = "out_of_scope"


def nonvanishing_report(class_set: ClassSet, phi: Sequence[int], p: int, discriminant: int) -> NonvanishingVerdict:
    """
    When phi = c mod p and p does not divide h_K, P_1(phi) = c h_K mod p is nonzero,
    so L(1, f_K) does not vanish.
    """
    _require_maximal(class_set)
    quad_field = ImagQuadField(discriminant)
    reason = _out_of_scope_reason(quad_field, class_set.level)
    if reason:
        return NonvanishingVerdict(discriminant, OUT_OF_SCOPE, reason=f"{reason}; sign of the functional equation")
    phi = normalize_content(phi)
    c_phi(phi, p)
    _, group, cmap, values = lvalues_for_field(class_set, phi, discriminant)
    trivial = period(phi, group.characters()[0], cmap).to_int()
    genus = (group.h % 2 == 1) if is_prime_discriminant(discriminant) else None
    if group.h % p == 0:
        return NonvanishingVerdict(discriminant, INCONCLUSIVE, group.h, trivial, genus, f"{p} divides h_K")
    if trivial == 0:
        raise PreconditionError(f"P_1(phi) vanishes although {p} does not divide h_K = {group.h}")
    return NonvanishingVerdict(discriminant, NONVANISHING, group.h, trivial, genus, f"P_1(phi) = {trivial}")


def nonvanishing_survey(
    class_set: ClassSet, phi: Sequence[int], p: int, discriminants: Iterable[int]
) -> Tuple[Dict[str, int], List[NonvanishingVerdict]]:
    verdicts = [nonvanishing_report(class_set, phi, p, d) for d in discriminants]
    counts = {NONVANISHING: 0, INCONCLUSIVE: 0, OUT_OF_SCOPE: 0}
    for v in verdicts:
        counts[v.verdict] += 1
    return counts, verdicts
