"""
Mass command: the Eichler mass of a level and its numerator.
"""

from modules.class_set import admissible_splits, mass_formula
from .base_command import BaseCommand


class MassCommand(BaseCommand):
    name = "mass"

    def validate_parameters(self, config):
        ok, message = self.require(config, ["level"])
        if not ok:
            return ok, message
        return super().validate_parameters(config)

    def execute(self, config):
        n1, n2 = config.split
        mass = mass_formula(n1, n2)
        return {
            "N": config.level,
            "N1": n1,
            "N2": n2,
            "mass": mass,
            "numerator": mass.numerator,
            "admissible_splits": [list(s) for s in admissible_splits(config.level)],
        }
