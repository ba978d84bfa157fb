from __future__ import annotations

import pytest

from modules import reference_suite
from modules.errors import InfeasibleError
from modules.message_manager import VerificationLog


def test_fast_cases_pass():
    log = reference_suite.run_reference_suite(["masses", "eisenstein"])
    assert log.passed
    assert log.count("PASS") > 0
    assert "[info] case: masses" in log.get_messages()


def test_a_raising_case_is_recorded_as_failure(monkeypatch):
    def broken(log):
        raise InfeasibleError("no witness")

    def fine(log):
        log.check(True, "ok")

    monkeypatch.setattr(reference_suite, "CASES", [("broken", broken), ("fine", fine)])
    log = reference_suite.run_reference_suite()
    assert not log.passed
    assert log.count("FAIL") == 1
    assert log.count("PASS") == 1
    assert "broken: InfeasibleError: no witness" in log.get_messages()


def test_shared_log_is_extended(monkeypatch):
    monkeypatch.setattr(reference_suite, "CASES", [("fine", lambda log: log.check(True, "ok"))])
    log = VerificationLog()
    log.add_skip("before")
    assert reference_suite.run_reference_suite(log=log) is log
    assert log.count("SKIP") == 1 and log.count("PASS") == 1


@pytest.mark.slow
def test_full_suite_passes():
    log = reference_suite.run_reference_suite()
    assert log.passed, log.get_messages()
