"""Settings management using environment variables"""

import logging
import os
from dataclasses import dataclass, replace
from typing import Dict, Mapping, Optional

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Settings:
    """Resolved runtime limits and defaults"""

    dense_cap: int = 2 ** 22
    orbit_budget: int = 10 ** 6
    max_automorphisms: int = 10 ** 6
    oracle_limit: int = 2 ** 24
    max_witnesses: int = 5
    seed: int = 20240611

    def override(self, **changes) -> "Settings":
        """Return a copy with the non-None entries of ``changes`` applied"""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


class SettingsManager:
    """Loads toolkit settings from the process environment"""

    ENV_KEYS: Dict[str, str] = {
        "dense_cap": "SUMSET_DENSE_CAP",
        "orbit_budget": "SUMSET_ORBIT_BUDGET",
        "max_automorphisms": "SUMSET_MAX_AUTOMORPHISMS",
        "oracle_limit": "SUMSET_ORACLE_LIMIT",
        "max_witnesses": "SUMSET_MAX_WITNESSES",
        "seed": "SUMSET_SEED",
    }

    def __init__(self, environ: Optional[Mapping[str, str]] = None):
        """
        Initialize settings manager

        Args:
            environ: Mapping to read variables from (default: os.environ)
        """
        self.environ = os.environ if environ is None else environ

    def load(self) -> Settings:
        """
        Load settings, falling back to defaults for unset variables

        Returns:
            Settings instance

        Raises:
            ValueError: If a variable is set but is not a positive integer
        """
        values = {}
        for field_name, key in self.ENV_KEYS.items():
            raw = self.environ.get(key)
            if raw is None or raw.strip() == "":
                continue
            try:
                value = int(raw.strip(), 0)
            except ValueError as e:
                raise ValueError(f"{key} must be an integer, got {raw!r}") from e
            if value <= 0 and field_name != "seed":
                raise ValueError(f"{key} must be positive, got {value}")
            logger.debug(f"Setting {field_name}={value} from {key}")
            values[field_name] = value
        return Settings(**values)


_default: Optional[Settings] = None


def get_settings() -> Settings:
    """Process-wide settings, loaded once from the environment"""
    global _default
    if _default is None:
        _default = SettingsManager().load()
    return _default
