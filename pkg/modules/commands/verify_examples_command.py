"""
Verify-examples command: reruns the built-in reference cases.
"""

from modules.reference_suite import CASES, run_reference_suite
from .base_command import BaseCommand


class VerifyExamplesCommand(BaseCommand):
    name = "verify-examples"

    def validate_parameters(self, config):
        names = config.extras.get("cases") or []
        known = {name for name, _ in CASES}
        unknown = [n for n in names if n not in known]
        if unknown:
            return False, f"Unknown cases: {unknown}; choose from {sorted(known)}"
        return True, None

    def execute(self, config):
        log = run_reference_suite(config.extras.get("cases") or None)
        return {
            "passed": log.count("PASS"),
            "failed": log.count("FAIL"),
            "skipped": log.count("SKIP"),
            "ok": log.passed,
            "log": log,
        }
