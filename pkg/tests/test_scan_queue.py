from __future__ import annotations

import pytest

from modules.errors import PreconditionError
from modules.scan_queue import JobStatus, ScanQueue, scan_level


def _fake_worker(level, scale=1):
    if level == 4:
        raise PreconditionError("no split")
    return [{"N": str(level), "value": str(level * scale)}]


def test_inline_queue_orders_levels_and_records_failures():
    queue = ScanQueue([5, 3, 4, 3], worker=_fake_worker, workers=1, progress=False, scale=2)
    jobs = list(queue.results())
    assert [job.level for job in jobs] == [3, 4, 5]
    assert jobs[0].records == [{"N": "3", "value": "6"}]
    assert jobs[1].status == JobStatus.FAILED
    assert jobs[1].records[0]["error"]["type"] == "PreconditionError"
    assert [job.level for job in queue.failed()] == [4]
    assert jobs[2].status == JobStatus.COMPLETED


def test_scan_level_without_split():
    assert scan_level(25, 7) == [{"N": "25", "skipped": "no admissible split"}]


def test_scan_level_11():
    [record] = scan_level(11, 13)
    assert record["p"] == "5"
    assert record["max_r"] == "1"
    assert record["valid"] is True
    assert record["hypothesis"]["holds"] == "1"


@pytest.mark.slow
def test_process_pool_matches_inline():
    inline = [job.records for job in ScanQueue([11, 17], workers=1, progress=False, ell_max=13).results()]
    pooled = [job.records for job in ScanQueue([11, 17], workers=2, progress=False, ell_max=13).results()]
    assert inline == pooled


def _crashing_worker(level):
    if level == 5:
        raise ZeroDivisionError("division by zero")
    return [{"N": str(level)}]


def test_unexpected_errors_are_recorded_per_level():
    queue = ScanQueue([4, 5, 6], worker=_crashing_worker, workers=1, progress=False)
    jobs = list(queue.results())
    assert [job.status for job in jobs] == [JobStatus.COMPLETED, JobStatus.FAILED, JobStatus.COMPLETED]
    assert jobs[1].records == [{"N": "5", "error": {"type": "ZeroDivisionError", "message": "division by zero"}}]
    assert jobs[2].records == [{"N": "6"}]
    assert [job.level for job in queue.failed()] == [5]
