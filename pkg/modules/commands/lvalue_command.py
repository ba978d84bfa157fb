"""
L-value command: toric periods and algebraic L-values of a congruent eigenform.
"""

from modules.congruence import congruence_primes, converse_uniqueness_check, eigen_congruence_search
from modules.errors import PreconditionError
from modules.hecke import eigenforms, pairing
from modules.periods import (
    c_phi,
    lvalues_for_field,
    normalize_content,
    parseval_check,
    verify_theorem2,
)
from modules.quadratic import fundamental_discriminants
from .base_command import BaseCommand


def choose_form(class_set, decomposition, p, ell_max):
    """
    The eigen-line used for periods: the unique congruent one mod p, or the only
    rational eigenform when p is not given.
    """
    if p is not None:
        blocks = eigen_congruence_search(class_set, p, ell_max, decomposition)
        converse = converse_uniqueness_check(class_set, p, blocks=blocks)
        if converse.form is None:
            raise PreconditionError(f"no certified eigen-line mod {p}: {converse.reason}")
        return converse.form, p
    forms = decomposition.eigenforms
    if len(forms) != 1:
        raise PreconditionError(f"{len(forms)} rational eigenforms; choose one with --p")
    form = normalize_content(forms[0].form)
    for q in congruence_primes(class_set):
        try:
            c_phi(form, q)
            return form, q
        except PreconditionError:
            continue
    return form, None


class LValueCommand(BaseCommand):
    name = "lvalue"

    def validate_parameters(self, config):
        ok, message = self.require(config, ["level"])
        if not ok:
            return ok, message
        if config.discriminant is None and config.disc_bound is None:
            return False, "Missing required parameter: --disc or --disc-bound"
        return super().validate_parameters(config)

    def execute(self, config):
        class_set = self.class_set(config)
        decomposition = eigenforms(class_set, config.ell_max)
        phi, p = choose_form(class_set, decomposition, config.p, config.ell_max)
        result = {
            "N": class_set.level,
            "phi": list(phi),
            "phi_phi": pairing(class_set, phi, phi),
            "p": p,
            "c_phi": c_phi(phi, p) if p else None,
        }
        if config.discriminant is not None:
            _, group, cmap, values = lvalues_for_field(class_set, phi, config.discriminant)
            characters = group.characters()
            rows = []
            for chi, value in zip(characters, values):
                if config.character is not None and chi.index != config.character:
                    continue
                rows.append({
                    "character": chi,
                    "P": value.period,
                    "Lalg": value.value.to_int() if value.value.is_rational() else value.value,
                })
            result.update({
                "disc": config.discriminant,
                "h_K": group.h,
                "structure": group.structure(),
                "class_map": cmap,
                "values": rows,
                "parseval": parseval_check(phi, cmap, characters),
            })
            if len(rows) == 1:
                result["Lalg"] = rows[0]["Lalg"]
            ok = result["parseval"]
            if p:
                report = verify_theorem2(class_set, phi, p, config.r, [config.discriminant])
                result["theorem2"] = report
                ok = ok and report.passed
            result["ok"] = ok
        else:
            if p is None:
                raise PreconditionError("phi is not congruent to a constant modulo any prime; give --p")
            report = verify_theorem2(class_set, phi, p, config.r, fundamental_discriminants(config.disc_bound))
            result["theorem2"] = report
            result["ok"] = report.passed
        return result
