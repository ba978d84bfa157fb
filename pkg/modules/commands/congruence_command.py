"""
Congruence command: Eisenstein congruence certificates for one level.
"""

from modules.congruence import (
    congruence_certificate,
    congruence_primes,
    converse_uniqueness_check,
    hypothesis_check,
    max_congruence_exponent,
)
from modules.hecke import eigenforms
from .base_command import BaseCommand


class CongruenceCommand(BaseCommand):
    name = "congruence"

    def validate_parameters(self, config):
        ok, message = self.require(config, ["level"])
        if not ok:
            return ok, message
        if config.p is not None and config.p < 2:
            return False, "--p must be a prime"
        return super().validate_parameters(config)

    def execute(self, config):
        class_set = self.class_set(config)
        primes = [config.p] if config.p else congruence_primes(class_set)
        decomposition = eigenforms(class_set, config.ell_max)
        certificates = []
        for p in primes:
            certificate = congruence_certificate(
                class_set, p, config.r, config.ell_max, config.n_max, decomposition
            )
            converse = converse_uniqueness_check(class_set, p, blocks=certificate.blocks)
            certificates.append({
                "certificate": certificate,
                "max_r": max_congruence_exponent(class_set, p),
                "converse": {"scalar": converse.scalar, "reason": converse.reason, "form": converse.form},
                "hypothesis": hypothesis_check(class_set, p, blocks=certificate.blocks),
            })
        return {
            "N": class_set.level,
            "N1": class_set.n1,
            "N2": class_set.n2,
            "mass": class_set.mass,
            "eigenforms": list(decomposition.eigenforms),
            "blocks": list(decomposition.blocks),
            "certificates": certificates,
            "ok": all(entry["certificate"].valid for entry in certificates),
        }
