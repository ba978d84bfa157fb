import json
import logging
import os
from pathlib import Path
from typing import Dict, Any, Optional

import psutil

logger = logging.getLogger(__name__)

CACHE_DIR_ENV = "QMF_CACHE_DIR"


def default_worker_count() -> int:
    """Physical core count, falling back to 1 when psutil cannot tell."""
    try:
        cores = psutil.cpu_count(logical=False)
    except Exception as e:
        logger.debug(f"psutil could not count cores: {e}")
        cores = None
    return cores or 1


class Settings:
    def __init__(self, settings_file: Optional[Path] = None):
        # Get the project root directory (where settings.py is located)
        project_root = Path(__file__).parent.parent

        self.settings_file = Path(settings_file) if settings_file else project_root / ".qmf" / "settings.json"

        # Set default paths relative to project root
        self.default_settings = {
            "cache_dir": str(project_root / ".qmf" / "cache"),
            "l_max": 50,
            "n_max": 200,
            "r": 1,
            "workers": default_worker_count(),
            "use_cache": True,
            "log_level": "WARNING",
            "progress": True,
            "auto_save_settings": False,
        }
        self.settings = self.load_settings()

    def load_settings(self) -> Dict[str, Any]:
        """Load settings from file or return defaults; QMF_CACHE_DIR overrides cache_dir."""
        settings = self.default_settings.copy()
        if self.settings_file.exists():
            try:
                with open(self.settings_file, 'r') as f:
                    loaded_settings = json.load(f)
                    # Merge with defaults to ensure all settings exist
                    settings.update(loaded_settings)
            except Exception as e:
                logger.warning(f"Error loading settings from {self.settings_file}: {e}")
                settings = self.default_settings.copy()
        env_cache = os.environ.get(CACHE_DIR_ENV)
        if env_cache:
            settings["cache_dir"] = env_cache
        return settings

    def save_settings(self, **kwargs):
        """Save settings to file. Accepts keyword arguments for any settings to update."""
        self.settings.update(kwargs)
        for k, v in self.default_settings.items():
            self.settings.setdefault(k, v)

        self.settings_file.parent.mkdir(parents=True, exist_ok=True)
        with open(self.settings_file, 'w') as f:
            json.dump(self.settings, f, indent=4, sort_keys=True)

    def get(self, key: str, default: Any = None) -> Any:
        """Get a setting value"""
        return self.settings.get(key, default)
