"""
Reproduction of the worked examples: mass values, the level 11 fixture, the
Q(sqrt(-23)) periods, eigenvalues at levels 27, 32 and 50, the 143 splits and
the level 73 constant-term caveat.

Each case records PASS/FAIL lines in a shared VerificationLog; a domain error
inside a case is recorded as a failure of that case only.
"""

import logging
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from modules.class_set import build_class_set, check_split, mass_formula, mass_numerator
from modules.congruence import (
    construct_congruent_cuspform,
    converse_uniqueness_check,
    eigen_congruence_search,
)
from modules.eisenstein import eisenstein_prime_coefficients, eisenstein_qexp, verify_fourier_congruence
from modules.errors import PreconditionError, QmfError
from modules.hecke import HeckeDecomposition, cuspidal_lattice, eigenforms, pairing
from modules.message_manager import VerificationLog
from modules.periods import (
    alg_lvalue,
    c_phi,
    class_map,
    is_prime_discriminant,
    nonvanishing_report,
    optimal_embedding,
    period,
)
from modules.quadratic import ImagQuadField

logger = logging.getLogger(__name__)

_class_sets: Dict[Tuple[int, int], object] = {}
_decompositions: Dict[Tuple[int, int, int], HeckeDecomposition] = {}


def _class_set(n1: int, n2: int):
    if (n1, n2) not in _class_sets:
        _class_sets[(n1, n2)] = build_class_set(n1, n2)
    return _class_sets[(n1, n2)]


def _decomposition(n1: int, n2: int, ell_max: int) -> HeckeDecomposition:
    key = (n1, n2, ell_max)
    if key not in _decompositions:
        _decompositions[key] = eigenforms(_class_set(n1, n2), ell_max)
    return _decompositions[key]


def _find_eigenform(decomposition: HeckeDecomposition, expected: Dict[int, int]):
    for form in decomposition.eigenforms:
        if all(form.eigenvalues.get(ell) == value for ell, value in expected.items()):
            return form
    return None


def check_masses(log: VerificationLog) -> None:
    for (n1, n2), expected in {(11, 13): Fraction(35, 3), (13, 11): Fraction(12),
                               (27, 1): Fraction(3, 2), (17, 1): Fraction(4, 3)}.items():
        value = mass_formula(n1, n2)
        log.check(value == expected, f"mass({n1}, {n2}) = {value}")
    log.check(mass_numerator(11, 13) == 35, "numerator for 11 * 13 with N1 = 11 is 5 * 7")
    try:
        check_split(25, 1)
        log.add_fail("level 25 accepted")
    except PreconditionError as e:
        log.add_pass(f"level 25 rejected: {e}")


def check_eisenstein(log: VerificationLog) -> None:
    log.check(eisenstein_qexp(73, 0)[0] == 3, "E_{2,73} has constant term 3")
    series = eisenstein_qexp(11, 11)
    log.check(series[0] == Fraction(5, 12), "E_{2,11} has constant term 5/12")
    log.check(series[2] == 3 and series[11] == 1, "E_{2,11}: a_2 = 3, a_11 = 1")
    coefficients = eisenstein_prime_coefficients(11, 13)
    log.check(all(v == (1 if ell == 11 else ell + 1) for ell, v in coefficients.items()),
              "E_{2,11}: a_l = l + 1 off the level, a_11 = 1")


def check_level_11(log: VerificationLog) -> None:
    cs = _class_set(11, 1)
    log.check(cs.h == 2 and sorted(cs.weights) == [2, 3], f"level 11: h = {cs.h}, weights {list(cs.weights)}")
    cusp = cuspidal_lattice(cs)
    phi = tuple(3 if w == 3 else -2 for w in cs.weights)
    log.check(len(cusp) == 1 and tuple(abs(v) for v in cusp[0]) == tuple(abs(v) for v in phi),
              f"cuspidal lattice spanned by {cusp}")
    log.check(pairing(cs, phi, phi) == 5, "[phi, phi] = 5")
    log.check(c_phi(phi, 5) == 3, "c_phi = 3 mod 5")
    decomposition = _decomposition(11, 1, 20)
    form = decomposition.eigenforms[0] if decomposition.eigenforms else None
    if not log.check(form is not None and form.form == phi, f"eigenform {form.form if form else None}"):
        return
    log.check(form.eigenvalues.get(2) == -2, "lambda_2 = -2")
    log.check(form.involutions.get(11) == 1, "involution at 11 acts by +1")
    witness = construct_congruent_cuspform(cs, 5)
    log.check(all((v - 1) % 5 == 0 for v in witness) and pairing(cs, witness, (1, 1)) == 0,
              f"phi = {list(witness)} is 1 mod 5 and cuspidal")
    converse = converse_uniqueness_check(cs, 5, 20)
    log.check(converse.scalar == 2, f"c * (3, -2) = 1 mod 5 with c = {converse.scalar}")
    log.check(not eigen_congruence_search(cs, 7, 20, decomposition), "no congruence mod 7")
    report = verify_fourier_congruence(11, 11, form.eigenvalues, form.involutions, 5, 20)
    log.check(report.congruent, "f = E_{2,11} mod 5 as q-expansions through n = 20")


def check_periods_23(log: VerificationLog) -> None:
    cs = _class_set(11, 1)
    phi = tuple(3 if w == 3 else -2 for w in cs.weights)
    field = ImagQuadField(-23)
    group = field.class_group
    log.check(group.h == 3 and group.structure() == [3], "Q(sqrt(-23)) has cyclic class group of order 3")
    cmap = class_map(optimal_embedding(cs, field), group, cs)
    by_weight = {cs.weights[i]: cmap.fibers[i] for i in range(cs.h)}
    log.check(by_weight == {3: 1, 2: 2}, f"fibers {by_weight} over the classes of weight 3 and 2")
    characters = group.characters()
    log.check(period(phi, characters[0], cmap).to_int() == -1, "P_1(phi) = -1")
    log.check(alg_lvalue(phi, characters[0], cmap).value == 1, "L_alg(chi = 1) = 1")
    for chi in characters[1:]:
        value = alg_lvalue(phi, chi, cmap).value
        log.check(value == 25 and value.vanishes_mod_primes_above(5), f"L_alg(chi_{chi.index}) = 25, 0 mod 5")


def _check_eigenvalues(log: VerificationLog, n1: int, n2: int, p: int, expected: Dict[int, int]) -> None:
    level = n1 * n2
    ell_max = max(expected)
    decomposition = _decomposition(n1, n2, ell_max)
    form = _find_eigenform(decomposition, expected)
    log.check(form is not None, f"level {level}: eigen-line with {expected}")
    if form is None:
        return
    log.check(
        all((value - ell - 1) % p == 0 for ell, value in form.eigenvalues.items() if ell != p),
        f"level {level}: lambda_l = l + 1 mod {p} for l <= {ell_max}",
    )
    report = verify_fourier_congruence(level, n1, form.eigenvalues, form.involutions, p, ell_max)
    log.check(report.congruent, f"level {level}: q-expansion matches {report.reference} mod {p}")


def check_level_27(log: VerificationLog) -> None:
    _check_eigenvalues(log, 27, 1, 3, {7: -1, 13: 5, 19: -7, 31: -4, 37: 11, 43: 8})


def check_level_32(log: VerificationLog) -> None:
    _check_eigenvalues(log, 32, 1, 2, {5: -2, 13: 6, 17: 2, 29: -10, 37: -2, 41: 10})


def check_level_50(log: VerificationLog) -> None:
    _check_eigenvalues(log, 2, 25, 5, {3: -1, 7: -2, 11: -3, 13: 4, 17: 3})


def check_level_143(log: VerificationLog) -> None:
    for (n1, n2), primes in {(11, 13): (5, 7), (13, 11): (2, 3)}.items():
        cs = _class_set(n1, n2)
        decomposition = _decomposition(n1, n2, 20)
        for p in primes:
            witness = construct_congruent_cuspform(cs, p)
            log.check(all((v - 1) % p == 0 for v in witness), f"143 = {n1} * {n2}: phi = 1 mod {p}")
            log.check(bool(eigen_congruence_search(cs, p, 20, decomposition)),
                      f"143 = {n1} * {n2}: congruent block mod {p}")


def check_level_73(log: VerificationLog) -> None:
    cs = _class_set(73, 1)
    blocks = eigen_congruence_search(cs, 2, 20, _decomposition(73, 1, 20))
    log.check(bool(blocks), "level 73: eigenvalues congruent to E_{2,73} mod 2")
    if blocks:
        eigenvalues, involutions = blocks[0].fourier_data()
        report = verify_fourier_congruence(73, 73, eigenvalues, involutions, 2, 20)
        log.check(report.eigenvalue_congruence and not report.constant_term_congruence,
                  f"level 73: constant term {report.constant_term} is 1 mod 2, so no q-expansion congruence")


def check_nonvanishing_17(log: VerificationLog, bound: int = 60) -> None:
    cs = _class_set(17, 1)
    phi = construct_congruent_cuspform(cs, 2)
    for d in range(3, bound + 1):
        if not is_prime_discriminant(-d):
            continue
        verdict = nonvanishing_report(cs, phi, 2, -d)
        if verdict.verdict == "out_of_scope":
            log.add_skip(f"D = {-d}: {verdict.reason}")
            continue
        log.check(verdict.verdict == "nonvanishing" and verdict.genus_check is not False,
                  f"D = {-d}: h_K = {verdict.h_k}, P_1 = {verdict.period}, {verdict.verdict}")


CASES: List[Tuple[str, Callable[[VerificationLog], None]]] = [
    ("masses", check_masses),
    ("eisenstein", check_eisenstein),
    ("level 11", check_level_11),
    ("periods for D = -23", check_periods_23),
    ("level 27", check_level_27),
    ("level 32", check_level_32),
    ("level 50", check_level_50),
    ("level 143", check_level_143),
    ("level 73", check_level_73),
    ("nonvanishing at level 17", check_nonvanishing_17),
]


def run_reference_suite(names: Optional[List[str]] = None, log: Optional[VerificationLog] = None) -> VerificationLog:
    log = log or VerificationLog()
    for name, case in CASES:
        if names and name not in names:
            continue
        log.add_message(f"case: {name}")
        try:
            case(log)
        except QmfError as e:
            logger.error(f"case {name} raised {type(e).__name__}: {e}")
            log.add_fail(f"{name}: {type(e).__name__}: {e}")
    return log
