from __future__ import annotations

import pytest

from modules.congruence import construct_congruent_cuspform
from modules.errors import PreconditionError, UnsupportedError
from modules.metadata_utils import to_json_value
from modules.periods import (
    INCONCLUSIVE,
    NONVANISHING,
    OUT_OF_SCOPE,
    alg_lvalue,
    c_phi,
    class_map,
    is_prime_discriminant,
    lvalues_for_field,
    nonvanishing_report,
    nonvanishing_survey,
    normalize_content,
    optimal_embedding,
    optimal_embeddings,
    parseval_check,
    period,
    trivial_character_candidates,
    verify_theorem2,
)
from modules.quadratic import ImagQuadField, fundamental_discriminants


@pytest.fixture(scope="module")
def field23():
    return ImagQuadField(-23)


@pytest.fixture(scope="module")
def cmap23(cs11, field23):
    embedding = optimal_embedding(cs11, field23)
    return class_map(embedding, field23.class_group, cs11)


def test_embedding_has_the_right_trace_and_norm(cs11, field23):
    embedding = optimal_embedding(cs11, field23)
    algebra = cs11.algebra
    assert algebra.trd(embedding.omega) == 1
    assert algebra.nrd(embedding.omega) == 6
    base = cs11.ideals[embedding.base].left_order()
    assert base.contains(embedding.omega)
    assert len(list(optimal_embeddings(base, field23))) > 1


def test_split_field_is_refused(cs11):
    with pytest.raises(PreconditionError):
        optimal_embedding(cs11, ImagQuadField(-7))


def test_class_map_for_minus_23(cs11, cmap23):
    assert cmap23.images[0] == optimal_embedding(cs11, ImagQuadField(-23)).base
    assert sum(cmap23.fibers) == 3
    by_weight = {cs11.weights[i]: cmap23.fibers[i] for i in range(cs11.h)}
    assert by_weight == {3: 1, 2: 2}


def test_periods_and_lvalues_for_minus_23(cs11, phi11, cmap23, field23):
    characters = field23.class_group.characters()
    assert period(phi11, characters[0], cmap23) == -1
    assert alg_lvalue(phi11, characters[0], cmap23).value == 1
    for chi in characters[1:]:
        value = alg_lvalue(phi11, chi, cmap23).value
        assert value == 25
        assert value.vanishes_mod_primes_above(5)
    assert parseval_check(phi11, cmap23, characters)


def test_lvalue_ignores_content(phi11, cmap23, field23):
    chi = field23.class_group.characters()[0]
    scaled = tuple(3 * v for v in phi11)
    assert alg_lvalue(scaled, chi, cmap23).value == alg_lvalue(phi11, chi, cmap23).value
    assert normalize_content(scaled) == phi11


def test_class_number_one_field(cs11, phi11):
    _, group, cmap, values = lvalues_for_field(cs11, phi11, -4)
    assert group.h == 1
    assert len(cmap.images) == 1
    assert values[0].value == phi11[cmap.images[0]] ** 2


def test_c_phi(phi11):
    assert c_phi(phi11, 5) == 3
    assert c_phi(tuple(2 * v for v in phi11), 5) == 3
    with pytest.raises(PreconditionError):
        c_phi((1, 2), 5)
    with pytest.raises(PreconditionError):
        c_phi((5, 10), 25)


def test_trivial_character_candidates():
    assert trivial_character_candidates((3, -2), 3) == {81, 16, 1, 36}
    assert trivial_character_candidates((3, -2), 1) == {9, 4}


def test_lvalue_congruences_at_level_11(cs11, phi11):
    report = verify_theorem2(cs11, phi11, 5, 1, [-4, -7, -8, -11, -19, -23])
    assert report.passed
    assert report.c_phi == 3
    assert sorted(entry["discriminant"] for entry in report.skipped) == [-19, -11, -8, -7]
    assert {e.discriminant for e in report.entries} == {-4, -23}
    trivial = [e for e in report.entries if e.character_order == 1]
    assert all(e.in_candidates for e in trivial)
    record = to_json_value(report)
    assert record["passed"] is True


def test_periods_need_a_maximal_order(cs27, cs50):
    with pytest.raises(UnsupportedError):
        lvalues_for_field(cs27, (1, -1), -4)
    with pytest.raises(UnsupportedError):
        verify_theorem2(cs50, (1,) * cs50.h, 5, 1, [-3])


def test_is_prime_discriminant():
    assert [d for d in (-3, -4, -7, -8, -15, -20, -23, -24) if is_prime_discriminant(d)] == [-3, -4, -7, -8, -23]


def test_nonvanishing_at_level_17(cs17):
    phi = construct_congruent_cuspform(cs17, 2)
    verdict = nonvanishing_report(cs17, phi, 2, -3)
    assert verdict.verdict == NONVANISHING
    assert verdict.h_k == 1
    assert verdict.period % 2 == 1
    assert verdict.genus_check is True
    assert nonvanishing_report(cs17, phi, 2, -4).verdict == OUT_OF_SCOPE


def test_nonvanishing_survey_counts(cs17):
    phi = construct_congruent_cuspform(cs17, 2)
    counts, verdicts = nonvanishing_survey(cs17, phi, 2, [-3, -4, -7, -8, -11])
    assert sum(counts.values()) == 5
    assert set(counts) == {NONVANISHING, INCONCLUSIVE, OUT_OF_SCOPE}
    assert [v.discriminant for v in verdicts] == [-3, -4, -7, -8, -11]
    assert counts[INCONCLUSIVE] == 0


@pytest.mark.slow
def test_lvalue_congruences_up_to_300(cs11, phi11):
    report = verify_theorem2(cs11, phi11, 5, 1, fundamental_discriminants(300))
    assert report.passed, report.log.get_messages()
    trivial = [e for e in report.entries if e.character_order == 1]
    assert trivial
    assert all(e.in_candidates for e in trivial)


@pytest.mark.slow
def test_nonvanishing_for_prime_discriminants_up_to_200(cs17):
    phi = construct_congruent_cuspform(cs17, 2)
    for d in fundamental_discriminants(200):
        if not is_prime_discriminant(d):
            continue
        verdict = nonvanishing_report(cs17, phi, 2, d)
        if ImagQuadField(d).inert_at(17):
            assert verdict.verdict == NONVANISHING, d
            assert verdict.genus_check is True, d
        else:
            assert verdict.verdict == OUT_OF_SCOPE, d
