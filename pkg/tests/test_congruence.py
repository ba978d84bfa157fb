from __future__ import annotations

from math import isqrt

import pytest

from modules.congruence import (
    congruence_certificate,
    congruence_primes,
    construct_congruent_cuspform,
    converse_uniqueness_check,
    eigen_congruence_search,
    hypothesis_check,
    max_congruence_exponent,
)
from arith_helper.linalg import mat_vec
from modules.class_set import admissible_splits, build_class_set
from modules.errors import InfeasibleError, PreconditionError
from modules.hecke import HeckeDecomposition, eigenforms, pairing
from modules.metadata_utils import to_json_value


def _is_congruent_cuspform(class_set, phi, modulus):
    return all((v - 1) % modulus == 0 for v in phi) and pairing(class_set, phi, (1,) * class_set.h) == 0


def test_level_11_witness(cs11, phi11):
    phi = construct_congruent_cuspform(cs11, 5)
    assert _is_congruent_cuspform(cs11, phi, 5)
    # the cusp space is a line
    assert phi[0] * phi11[1] == phi[1] * phi11[0]


def test_witness_needs_p_in_mass_numerator(cs11):
    with pytest.raises(PreconditionError):
        construct_congruent_cuspform(cs11, 7)
    with pytest.raises(PreconditionError):
        construct_congruent_cuspform(cs11, 5, 0)


def test_witness_beyond_the_valuation_is_infeasible(cs11):
    with pytest.raises(InfeasibleError):
        construct_congruent_cuspform(cs11, 5, 2)
    assert max_congruence_exponent(cs11, 5) == 1
    assert max_congruence_exponent(cs11, 7) == 0


@pytest.mark.parametrize("fixture, p", [("cs143_11", 5), ("cs143_11", 7), ("cs143_13", 2), ("cs143_13", 3)])
def test_level_143_witnesses(fixture, p, request):
    class_set = request.getfixturevalue(fixture)
    phi = construct_congruent_cuspform(class_set, p)
    assert _is_congruent_cuspform(class_set, phi, p)


def test_congruence_primes(cs11, cs143_11, cs143_13):
    assert congruence_primes(cs11) == [5]
    assert congruence_primes(cs143_11) == [5, 7]
    assert congruence_primes(cs143_13) == [2, 3]


def test_search_at_level_11(cs11, dec11, phi11):
    blocks = eigen_congruence_search(cs11, 5, 20, dec11)
    assert len(blocks) == 1
    block = blocks[0]
    assert block.is_rational_line
    assert block.eigenform.form == phi11
    assert block.charpoly_consistent
    assert eigen_congruence_search(cs11, 7, 20, dec11) == []


def test_converse_at_level_11(cs11, dec11, phi11):
    blocks = eigen_congruence_search(cs11, 5, 20, dec11)
    result = converse_uniqueness_check(cs11, 5, 20, blocks)
    assert result.scalar == 2
    assert result.form == phi11
    assert all((2 * v - 1) % 5 == 0 for v in phi11)
    assert converse_uniqueness_check(cs11, 7, 20, []).scalar is None


def test_hypothesis_at_level_11(cs11, dec11):
    blocks = eigen_congruence_search(cs11, 5, 20, dec11)
    report = hypothesis_check(cs11, 5, blocks=blocks)
    assert report.lines == 1 and report.holds == 1


def test_level_73_mod_2(cs73, dec73):
    blocks = eigen_congruence_search(cs73, 2, 20, dec73)
    assert blocks
    eigenvalues, _ = blocks[0].fourier_data()
    assert all((value - ell - 1) % 2 == 0 for ell, value in eigenvalues.items())


def test_block_residues_come_from_the_hecke_action(cs73, dec73):
    for block in eigen_congruence_search(cs73, 2, 20, dec73):
        vector = block.kernel[0]
        reduced = {**block.residues, **block.involution_residues}
        assert set(reduced) == set(dec73.operators)
        for ell, value in reduced.items():
            image = mat_vec(dec73.operators[ell].matrix, vector)
            assert all((y - value * v) % 2 == 0 for y, v in zip(image, vector)), ell


def test_certificate_at_level_11(cs11, dec11):
    certificate = congruence_certificate(cs11, 5, 1, 20, n_max=30, decomposition=dec11)
    assert certificate.valid
    assert certificate.fourier is not None
    assert certificate.fourier.n_max == 20
    assert certificate.fourier.congruent
    record = to_json_value(certificate)
    assert record["valid"] is True
    assert record["p"] == "5"


def test_certificate_without_block_is_invalid(cs11, dec11):
    empty = HeckeDecomposition(dec11.eisenstein, dec11.cusp_basis, (), (), dec11.operators)
    certificate = congruence_certificate(cs11, 5, 1, 20, decomposition=empty)
    assert certificate.witness
    assert certificate.matched_block is None
    assert not certificate.valid
    assert not certificate.log.passed


@pytest.mark.slow
def test_witness_and_eigenform_exist_for_every_congruence_prime():
    for level in range(2, 101):
        if isqrt(level) ** 2 == level:
            continue
        for n1, n2 in admissible_splits(level):
            class_set = build_class_set(n1, n2)
            primes = congruence_primes(class_set)
            if not primes:
                continue
            decomposition = eigenforms(class_set, 50)
            for p in primes:
                phi = construct_congruent_cuspform(class_set, p)
                assert _is_congruent_cuspform(class_set, phi, p), (n1, n2, p)
                assert eigen_congruence_search(class_set, p, 50, decomposition), (n1, n2, p)
