"""
Base command class for quatforms.
All command implementations should inherit from this class.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from modules.class_set import ClassSet, check_split, class_set_for_level, default_split
from modules.metadata_utils import create_metadata


@dataclass
class RunConfig:
    """Validated parameters of one command invocation."""

    command: str
    level: Optional[int] = None
    split: Optional[Tuple[int, int]] = None
    p: Optional[int] = None
    r: Optional[int] = None
    discriminant: Optional[int] = None
    disc_bound: Optional[int] = None
    character: Optional[int] = None
    ell_max: Optional[int] = None
    n_max: Optional[int] = None
    min_level: Optional[int] = None
    max_level: Optional[int] = None
    cache_dir: Optional[str] = None
    output: Optional[str] = None
    workers: Optional[int] = None
    use_cache: Optional[bool] = None
    progress: Optional[bool] = None
    check_neighbors: bool = False
    extras: Dict[str, Any] = field(default_factory=dict)

    def parameters(self) -> Dict[str, Any]:
        """The parameters that determine the result; paths and parallelism are left out."""
        skip = {"cache_dir", "output", "workers", "use_cache", "progress", "extras", "command"}
        return {k: v for k, v in self.__dict__.items() if k not in skip and v is not None}


class BaseCommand:
    """Base class for all command implementations."""

    name = "base"

    def __init__(self, settings):
        """
        Initialize the command with settings.

        Args:
            settings: Settings instance supplying defaults
        """
        self.settings = settings

    def prepare_parameters(self, config: RunConfig) -> RunConfig:
        """
        Fill unset parameters from the settings.

        Args:
            config: Parsed run configuration

        Returns:
            The same configuration with defaults applied
        """
        if config.ell_max is None:
            config.ell_max = int(self.settings.get("l_max", 50))
        if config.n_max is None:
            config.n_max = int(self.settings.get("n_max", 200))
        if config.r is None:
            config.r = int(self.settings.get("r", 1))
        if config.cache_dir is None:
            config.cache_dir = self.settings.get("cache_dir")
        if config.use_cache is None:
            config.use_cache = bool(self.settings.get("use_cache", True))
        if config.workers is None:
            config.workers = int(self.settings.get("workers", 1))
        if config.progress is None:
            config.progress = bool(self.settings.get("progress", True))
        if config.level is not None and config.split is None:
            config.split = default_split(config.level)
        return config

    def validate_parameters(self, config: RunConfig) -> Tuple[bool, Optional[str]]:
        """
        Validate parameters for the command.

        Args:
            config: Prepared run configuration

        Returns:
            Tuple of (is_valid, error_message)
        """
        if config.ell_max is not None and config.ell_max < 2:
            return False, "--l-max must be at least 2"
        if config.r is not None and config.r < 1:
            return False, "--r must be positive"
        if config.split is not None:
            n1, n2 = config.split
            if config.level is not None and n1 * n2 != config.level:
                return False, f"split {n1},{n2} does not multiply to level {config.level}"
        return True, None

    def require(self, config: RunConfig, names: List[str]) -> Tuple[bool, Optional[str]]:
        for name in names:
            if getattr(config, name) is None:
                return False, f"Missing required parameter: --{name.replace('_', '-')}"
        return True, None

    def class_set(self, config: RunConfig) -> ClassSet:
        n1, n2 = config.split
        check_split(n1, n2)
        return class_set_for_level(n1, n2, use_cache=config.use_cache, cache_dir=config.cache_dir)

    def execute(self, config: RunConfig) -> Dict[str, Any]:
        """
        Run the computation.

        Returns:
            Result body of the JSON document
        """
        raise NotImplementedError

    def handle_results(self, config: RunConfig, result: Dict[str, Any]) -> Tuple[Optional[Dict[str, Any]], bool]:
        """
        Wrap the result in the document envelope.

        Returns:
            (document, ok) where ok is False when a verification failed
        """
        document = self.create_metadata(config)
        document["result"] = result
        return document, bool(result.get("ok", True))

    def create_metadata(self, config: RunConfig) -> Dict[str, Any]:
        return create_metadata(self.name, config.parameters())

    def run(self, config: RunConfig) -> Tuple[Optional[Dict[str, Any]], bool]:
        return self.handle_results(config, self.execute(config))
