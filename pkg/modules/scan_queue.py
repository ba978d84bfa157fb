import logging
import sys
from concurrent.futures import Future, ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterator, List, Optional

from tqdm import tqdm

from modules.class_set import admissible_splits, class_set_for_level
from modules.congruence import (
    congruence_certificate,
    congruence_primes,
    hypothesis_check,
    max_congruence_exponent,
)
from modules.errors import QmfError
from modules.metadata_utils import to_json_value

logger = logging.getLogger(__name__)


class JobStatus(Enum):
    PENDING = "pending"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"


@dataclass
class ScanJob:
    level: int
    status: JobStatus = JobStatus.PENDING
    records: List[Dict[str, Any]] = field(default_factory=list)
    error: Optional[str] = None


def scan_level(level: int, ell_max: int, use_cache: bool = False, cache_dir: Optional[str] = None) -> List[Dict]:
    """
    One JSON-ready record per (split, p) at this level, p running over the primes of the
    mass numerator. Levels without an admissible split give a single skip record.
    """
    splits = admissible_splits(level)
    if not splits:
        return [to_json_value({"N": level, "skipped": "no admissible split"})]
    records = []
    for n1, n2 in splits:
        class_set = class_set_for_level(n1, n2, use_cache=use_cache, cache_dir=cache_dir)
        for p in congruence_primes(class_set):
            certificate = congruence_certificate(class_set, p, 1, ell_max)
            hypothesis = hypothesis_check(class_set, p, blocks=certificate.blocks)
            records.append(to_json_value({
                "N": level,
                "N1": n1,
                "N2": n2,
                "h": class_set.h,
                "p": p,
                "max_r": max_congruence_exponent(class_set, p),
                "witness": certificate.witness,
                "valid": certificate.valid,
                "congruent_blocks": len(certificate.blocks),
                "hypothesis": hypothesis,
            }))
    return records


class ScanQueue:
    """
    Runs levels on a process pool and yields their records in ascending level order,
    so adding levels never reorders earlier output.
    """

    def __init__(
        self,
        levels: List[int],
        worker: Callable[..., List[Dict]] = scan_level,
        workers: int = 1,
        progress: bool = True,
        **worker_kwargs,
    ):
        self.jobs: Dict[int, ScanJob] = {level: ScanJob(level) for level in sorted(set(levels))}
        self._worker = worker
        self._workers = max(1, int(workers))
        self._progress = progress and sys.stderr.isatty()
        self._worker_kwargs = worker_kwargs

    def _finish(self, job: ScanJob, future: Future) -> None:
        try:
            job.records = future.result()
            job.status = JobStatus.COMPLETED
        except QmfError as e:
            self._record_failure(job, e)
            logger.error(f"level {job.level} failed: {e}")
        except Exception as e:
            self._record_failure(job, e)
            logger.exception(f"level {job.level} raised {type(e).__name__}")

    @staticmethod
    def _record_failure(job: ScanJob, error: Exception) -> None:
        job.status = JobStatus.FAILED
        job.error = f"{type(error).__name__}: {error}"
        job.records = [to_json_value({"N": job.level, "error": {"type": type(error).__name__, "message": str(error)}})]

    def results(self) -> Iterator[ScanJob]:
        bar = tqdm(total=len(self.jobs), desc="levels", unit="level", file=sys.stderr, disable=not self._progress)
        try:
            if self._workers == 1:
                for job in self.jobs.values():
                    job.status = JobStatus.RUNNING
                    future: Future = Future()
                    try:
                        future.set_result(self._worker(job.level, **self._worker_kwargs))
                    except Exception as e:
                        future.set_exception(e)
                    self._finish(job, future)
                    bar.update(1)
                    yield job
                return
            with ProcessPoolExecutor(max_workers=self._workers) as executor:
                futures = {}
                for job in self.jobs.values():
                    futures[job.level] = executor.submit(self._worker, job.level, **self._worker_kwargs)
                    job.status = JobStatus.RUNNING
                for level, future in futures.items():
                    job = self.jobs[level]
                    self._finish(job, future)
                    bar.update(1)
                    yield job
        finally:
            bar.close()

    def failed(self) -> List[ScanJob]:
        return [job for job in self.jobs.values() if job.status == JobStatus.FAILED]
