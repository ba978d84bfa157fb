"""
Brandt command: Brandt matrices up to l_max with their algebraic consistency checks.
"""

from arith_helper.linalg import mat_mul
from modules.brandt import brandt_matrix_by_neighbors, hecke_operators
from modules.message_manager import VerificationLog
from .base_command import BaseCommand


def brandt_checks(class_set, operators, log: VerificationLog, check_neighbors: bool = False) -> None:
    """Row sums, commutativity, weight symmetry and (optionally) the neighbor realization."""
    weights = class_set.weights
    h = class_set.h
    good = {ell: op for ell, op in operators.items() if not op.ramified}
    for ell, op in sorted(good.items()):
        log.check(all(sum(row) == ell + 1 for row in op.matrix), f"B({ell}) rows sum to {ell + 1}")
        log.check(
            all(weights[j] * op.matrix[i][j] == weights[i] * op.matrix[j][i] for i in range(h) for j in range(h)),
            f"w_j B({ell})_ij = w_i B({ell})_ji",
        )
        if check_neighbors:
            log.check(brandt_matrix_by_neighbors(class_set, ell).matrix == op.matrix,
                      f"B({ell}) agrees with the neighbor count")
    ells = sorted(operators)
    for idx, first in enumerate(ells):
        for second in ells[idx + 1:]:
            a, b = operators[first].matrix, operators[second].matrix
            log.check(mat_mul(a, b) == mat_mul(b, a), f"T_{first} and T_{second} commute")


class BrandtCommand(BaseCommand):
    name = "brandt"

    def validate_parameters(self, config):
        ok, message = self.require(config, ["level"])
        if not ok:
            return ok, message
        return super().validate_parameters(config)

    def execute(self, config):
        class_set = self.class_set(config)
        operators = hecke_operators(class_set, config.ell_max)
        log = VerificationLog()
        brandt_checks(class_set, operators, log, config.check_neighbors)
        return {
            "N": class_set.level,
            "N1": class_set.n1,
            "N2": class_set.n2,
            "weights": list(class_set.weights),
            "operators": [operators[ell] for ell in sorted(operators)],
            "ok": log.passed,
            "log": log,
        }
