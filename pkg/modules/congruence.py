"""
Eisenstein congruences on a class set.

The constructive solver builds an integral cusp form phi with phi = 1 mod p^r
from the mass identity; the search finds every Hecke block whose eigenvalues
agree with those of E_{2,N} modulo p.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Matrix

from arith_helper.exact import lcm, prime_divisors, valuation
from arith_helper.linalg import InconsistentSystemError, kernel_mod_p, solve_integer_system
from modules.class_set import ClassSet, mass_numerator
from modules.eisenstein import FourierCongruenceReport, verify_fourier_congruence
from modules.errors import InfeasibleError, PreconditionError, UnsupportedError
from modules.hecke import HeckeDecomposition, HeckeEigenform, eigenforms, pairing, restrict
from modules.message_manager import VerificationLog

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


def construct_congruent_cuspform(class_set: ClassSet, p: int, r: int = 1) -> Vector:
    """
    Integral phi with [phi, phi_0] = 0 and phi_i = 1 + p^r a_i.

    With w = lcm(w_i) and w_i* = w / w_i the conditions reduce to
    sum_i w_i* a_i = -sum_i w_i* / p^r, solved over the integers.

    Raises:
        PreconditionError: If p does not divide the mass numerator
        InfeasibleError: If the system has no integral solution for this r
    """
    if r < 1:
        raise PreconditionError(f"exponent r must be positive, got {r}")
    numerator = mass_numerator(class_set.n1, class_set.n2)
    if numerator % p:
        raise PreconditionError(f"{p} does not divide the mass numerator {numerator}")
    modulus = p ** r
    common = lcm(*class_set.weights)
    reduced_weights = [common // w for w in class_set.weights]
    total = sum(reduced_weights)
    if total % modulus:
        raise InfeasibleError(f"{modulus} does not divide sum w/w_i = {total}")
    try:
        a, _ = solve_integer_system([reduced_weights], [-(total // modulus)])
    except InconsistentSystemError as e:
        raise InfeasibleError(f"no integral phi = 1 mod {modulus}: {e}") from e
    phi = tuple(1 + modulus * ai for ai in a)
    if pairing(class_set, phi, (1,) * class_set.h) != 0:
        raise InfeasibleError("solver output is not cuspidal")
    logger.info("level %d: phi = %s is 1 mod %d", class_set.level, phi, modulus)
    return phi


def max_congruence_exponent(class_set: ClassSet, p: int) -> int:
    """Largest r with a cusp form phi = 1 mod p^r, 0 when p does not divide the mass numerator."""
    bound = valuation(mass_numerator(class_set.n1, class_set.n2), p)
    best = 0
    for r in range(1, bound + 1):
        try:
            construct_congruent_cuspform(class_set, p, r)
        except InfeasibleError:
            break
        best = r
    return best


@dataclass(frozen=True)
class CongruentBlock:
    """
    A Hecke block carrying the Eisenstein eigensystem mod p.

    kernel holds the simultaneous mod-p eigenvectors as vectors on the class set.
    """

    p: int
    index: int
    basis: Tuple[Vector, ...]
    kernel: Tuple[Vector, ...]
    residues: Dict[int, int]
    involution_residues: Dict[int, int]
    charpoly_consistent: bool
    eigenform: Optional[HeckeEigenform] = None

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def is_rational_line(self) -> bool:
        return self.eigenform is not None

    def fourier_data(self) -> Tuple[Dict[int, int], Dict[int, int]]:
        """Eigenvalues and involution eigenvalues, exact for eigen-lines and mod p otherwise."""
        if self.eigenform is not None:
            return dict(self.eigenform.eigenvalues), dict(self.eigenform.involutions)
        return dict(self.residues), dict(self.involution_residues)

    def to_record(self):
        return {
            "p": self.p,
            "index": self.index,
            "dimension": self.dimension,
            "basis": [list(v) for v in self.basis],
            "kernel": [list(v) for v in self.kernel],
            "residues": dict(sorted(self.residues.items())),
            "involution_residues": dict(sorted(self.involution_residues.items())),
            "charpoly_consistent": self.charpoly_consistent,
            "eigenform": self.eigenform,
        }


def _candidate_blocks(decomposition: HeckeDecomposition):
    for form in decomposition.eigenforms:
        yield [list(form.form)], form
    for block in decomposition.blocks:
        yield [list(v) for v in block.basis], None


def _eigenvalue_mod_p(matrix: Sequence[Sequence[int]], vector: Sequence[int], p: int) -> Optional[int]:
    """lambda with M v = lambda v mod p, or None when v is not an eigenvector mod p."""
    image = [sum(a * b for a, b in zip(row, vector)) % p for row in matrix]
    i = next(k for k, v in enumerate(vector) if v % p)
    value = image[i] * pow(vector[i], -1, p) % p
    if any((y - value * v) % p for y, v in zip(image, vector)):
        return None
    return value


def eigen_congruence_search(
    class_set: ClassSet,
    p: int,
    ell_max: int,
    decomposition: Optional[HeckeDecomposition] = None,
) -> List[CongruentBlock]:
    """
    Blocks on which every B(l) - (l + 1), l <= ell_max, and every ramified
    involution minus 1 have a common kernel mod p.
    """
    if decomposition is None:
        decomposition = eigenforms(class_set, ell_max)
    operators = {ell: op for ell, op in decomposition.operators.items() if ell <= ell_max or op.ramified}
    h = class_set.h
    found = []
    for index, (basis, form) in enumerate(_candidate_blocks(decomposition)):
        dim = len(basis)
        stacked = []
        restricted_ops = {}
        consistent = True
        for ell, op in sorted(operators.items()):
            target = 1 if op.ramified else ell + 1
            restricted = restrict(op.matrix, basis)
            restricted_ops[ell] = restricted
            shifted = [[restricted[i][j] - (target if i == j else 0) for j in range(dim)] for i in range(dim)]
            stacked.extend(shifted)
            if int(Matrix(shifted).det()) % p:
                consistent = False
        kernel = kernel_mod_p(stacked, p, dim) if stacked else [[int(i == j) for j in range(dim)] for i in range(dim)]
        if not kernel:
            continue
        vectors = tuple(
            tuple(sum(c * basis[k][i] for k, c in enumerate(coeffs)) % p for i in range(h)) for coeffs in kernel
        )
        # the kernel vector spans a degree one prime of the block's Hecke algebra above p;
        # operators past ell_max are reduced there too and are not forced by the kernel
        reduced = {}
        for ell, op in decomposition.operators.items():
            matrix = restricted_ops[ell] if ell in restricted_ops else restrict(op.matrix, basis)
            value = _eigenvalue_mod_p(matrix, kernel[0], p)
            if value is not None:
                reduced[ell] = value
        residues = {ell: v for ell, v in reduced.items() if not decomposition.operators[ell].ramified}
        involution_residues = {ell: v for ell, v in reduced.items() if decomposition.operators[ell].ramified}
        found.append(
            CongruentBlock(
                p, index, tuple(tuple(v) for v in basis), vectors, residues, involution_residues, consistent, form
            )
        )
    logger.info("level %d mod %d: %d congruent blocks", class_set.level, p, len(found))
    return found


@dataclass(frozen=True)
class ConverseResult:
    scalar: Optional[int]
    reason: str
    form: Optional[Vector] = None


def _scalar_to_constant(form: Sequence[int], p: int) -> Optional[int]:
    residues = {v % p for v in form}
    if len(residues) != 1:
        return None
    u = residues.pop()
    return pow(u, -1, p) if u else None


def converse_uniqueness_check(
    class_set: ClassSet,
    p: int,
    ell_max: int = 50,
    blocks: Optional[List[CongruentBlock]] = None,
) -> ConverseResult:
    """
    c with c * phi = phi_0 mod p for the unique congruent eigen-line, or None with the reason.
    """
    if blocks is None:
        blocks = eigen_congruence_search(class_set, p, ell_max)
    if not blocks:
        return ConverseResult(None, "no congruent block")
    if len(blocks) > 1:
        return ConverseResult(None, f"{len(blocks)} congruent blocks; needs manual analysis")
    block = blocks[0]
    if block.eigenform is None:
        return ConverseResult(None, f"congruent block has dimension {block.dimension} or is not rational")
    form = block.eigenform.form
    scalar = _scalar_to_constant(form, p)
    if scalar is None:
        return ConverseResult(None, "eigenform is not constant mod p", form)
    return ConverseResult(scalar, "unique congruent eigen-line", form)


@dataclass
class HypothesisReport:
    p: int
    lines: int = 0
    holds: int = 0
    details: List[Dict] = field(default_factory=list)

    def to_record(self):
        return {"p": self.p, "lines": self.lines, "holds": self.holds, "details": self.details}


def hypothesis_check(
    class_set: ClassSet,
    p: int,
    ell_max: int = 50,
    blocks: Optional[List[CongruentBlock]] = None,
) -> HypothesisReport:
    """For each congruent eigen-line, whether some c gives c * phi = phi_0 mod p."""
    if blocks is None:
        blocks = eigen_congruence_search(class_set, p, ell_max)
    report = HypothesisReport(p)
    for block in blocks:
        if block.eigenform is None:
            continue
        scalar = _scalar_to_constant(block.eigenform.form, p)
        report.lines += 1
        report.holds += scalar is not None
        report.details.append({"form": list(block.eigenform.form), "scalar": scalar})
    return report


@dataclass
class CongruenceCertificate:
    level: int
    n1: int
    n2: int
    p: int
    r: int
    witness: Vector
    log: VerificationLog
    matched_block: Optional[int] = None
    fourier: Optional[FourierCongruenceReport] = None
    blocks: List[CongruentBlock] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.log.passed and self.matched_block is not None

    def to_record(self):
        return {
            "N": self.level,
            "N1": self.n1,
            "N2": self.n2,
            "p": self.p,
            "r": self.r,
            "witness": list(self.witness),
            "valid": self.valid,
            "matched_block": self.matched_block,
            "congruence_depth": self.fourier.depth if self.fourier else None,
            "fourier": self.fourier,
            "blocks": self.blocks,
            "log": self.log,
        }


def congruence_certificate(
    class_set: ClassSet,
    p: int,
    r: int = 1,
    ell_max: int = 50,
    n_max: Optional[int] = None,
    decomposition: Optional[HeckeDecomposition] = None,
) -> CongruenceCertificate:
    """
    Build phi = 1 mod p^r, find the congruent blocks and record every check.

    The q-expansion comparison runs on the first congruent block and is capped at
    ell_max, the range where eigenvalues are known.
    """
    log = VerificationLog()
    witness = construct_congruent_cuspform(class_set, p, r)
    modulus = p ** r
    log.check(all((v - 1) % modulus == 0 for v in witness), f"phi = {list(witness)} is 1 mod {modulus}")
    log.check(pairing(class_set, witness, (1,) * class_set.h) == 0, "[phi, phi_0] = 0")
    if decomposition is None:
        decomposition = eigenforms(class_set, ell_max)
    blocks = eigen_congruence_search(class_set, p, ell_max, decomposition)
    certificate = CongruenceCertificate(class_set.level, class_set.n1, class_set.n2, p, r, witness, log, blocks=blocks)
    if not blocks:
        log.add_fail(f"no Hecke block is congruent to E_{{2,{class_set.level}}} mod {p}")
        return certificate
    matched = blocks[0]
    certificate.matched_block = matched.index
    eigenvalues, involutions = matched.fourier_data()
    for ell in sorted(eigenvalues):
        log.check((eigenvalues[ell] - ell - 1) % p == 0, f"lambda_{ell} = {eigenvalues[ell]} is {ell} + 1 mod {p}")
    for ell in sorted(involutions):
        log.check((involutions[ell] - 1) % p == 0, f"involution at {ell} = {involutions[ell]} is 1 mod {p}")
    if n_max:
        depth_bound = min(n_max, ell_max)
        try:
            certificate.fourier = verify_fourier_congruence(
                class_set.level, class_set.n1, eigenvalues, involutions, p, depth_bound
            )
            log.add_message(f"q-expansions agree mod {p} through n = {certificate.fourier.depth}")
        except UnsupportedError as e:
            log.add_skip(f"q-expansion comparison: {e}")
    return certificate


def congruence_primes(class_set: ClassSet) -> List[int]:
    return prime_divisors(mass_numerator(class_set.n1, class_set.n2))
