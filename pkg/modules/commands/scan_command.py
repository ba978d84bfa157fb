"""
Scan command: congruence records for a range of levels on a worker pool.

Records are written one per line as they complete, in ascending level order.
"""

import sys

from modules.metadata_utils import create_metadata, dumps_line
from modules.scan_queue import ScanQueue
from .base_command import BaseCommand


class ScanCommand(BaseCommand):
    name = "scan"

    def prepare_parameters(self, config):
        config = super().prepare_parameters(config)
        if config.min_level is None:
            config.min_level = 2
        return config

    def validate_parameters(self, config):
        ok, message = self.require(config, ["max_level"])
        if not ok:
            return ok, message
        if config.min_level < 2 or config.max_level < config.min_level:
            return False, "need 2 <= --min-level <= --max-level"
        if config.workers < 1:
            return False, "--workers must be positive"
        return super().validate_parameters(config)

    def execute(self, config):
        queue = ScanQueue(
            list(range(config.min_level, config.max_level + 1)),
            workers=config.workers,
            progress=config.progress,
            ell_max=config.ell_max,
            use_cache=config.use_cache,
            cache_dir=config.cache_dir,
        )
        stream = open(config.output, "w") if config.output else sys.stdout
        count = 0
        try:
            stream.write(dumps_line(create_metadata(self.name, config.parameters())) + "\n")
            for job in queue.results():
                for record in job.records:
                    stream.write(dumps_line(record) + "\n")
                    count += 1
                stream.flush()
        finally:
            if stream is not sys.stdout:
                stream.close()
        failed = [job.level for job in queue.failed()]
        invalid = any(r.get("valid") is False for job in queue.jobs.values() for r in job.records)
        return {"records": count, "failed_levels": failed, "ok": not failed and not invalid}

    def handle_results(self, config, result):
        # records were already streamed
        return None, result["ok"]
