"""
Classes command: right ideal class representatives with unit weights.
"""

from .base_command import BaseCommand


class ClassesCommand(BaseCommand):
    name = "classes"

    def validate_parameters(self, config):
        ok, message = self.require(config, ["level"])
        if not ok:
            return ok, message
        return super().validate_parameters(config)

    def execute(self, config):
        class_set = self.class_set(config)
        algebra = class_set.algebra
        return {
            "N": class_set.level,
            "N1": class_set.n1,
            "N2": class_set.n2,
            "algebra": {"a": algebra.a, "b": algebra.b, "ramified": list(algebra.ramification)},
            "order": class_set.order,
            "discriminant": class_set.order.discriminant,
            "h": class_set.h,
            "weights": list(class_set.weights),
            "mass": class_set.mass,
            "weight_mass": class_set.weight_mass(),
            "ok": class_set.weight_mass() == class_set.mass,
            "ideals": [{"basis": ideal, "norm": ideal.norm} for ideal in class_set.ideals],
        }
