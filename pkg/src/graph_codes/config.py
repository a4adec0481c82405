"""Runtime defaults for the graph-codes toolkit."""

import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import dotenv

from .exceptions import ConfigurationError

ENV_PREFIX = "GRAPH_CODES_"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class Settings:
    """Defaults used when the command line does not say otherwise."""

    seed: int = 0
    trials: int = 100
    sweep_codewords: int = 20
    audit_samples: int = 200
    log_level: str = "WARNING"

    @property
    def logging_level(self) -> int:
        return getattr(logging, self.log_level)


def _read_int(name: str, default: int) -> int:
    raw = os.getenv(ENV_PREFIX + name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw.strip())
    except ValueError as e:
        raise ConfigurationError(f"{ENV_PREFIX}{name} must be an integer, got {raw!r}") from e
    if value < 0:
        raise ConfigurationError(f"{ENV_PREFIX}{name} must not be negative, got {value}")
    return value


def load_settings(env_file: Optional[Union[str, Path]] = None) -> Settings:
    """Load settings from the environment, after reading a .env file if present.

    Values already set in the environment win over the .env file.

    Args:
        env_file: Explicit .env path; by default the nearest .env is searched

    Returns:
        Settings with every field resolved

    Raises:
        ConfigurationError: On malformed numbers or an unknown log level
    """
    if env_file is not None:
        dotenv.load_dotenv(env_file)
    else:
        dotenv.load_dotenv(dotenv.find_dotenv(usecwd=True))

    defaults = Settings()
    log_level = os.getenv(ENV_PREFIX + "LOG_LEVEL", defaults.log_level).strip().upper()
    if log_level not in LOG_LEVELS:
        raise ConfigurationError(f"{ENV_PREFIX}LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}")

    return Settings(
        seed=_read_int("SEED", defaults.seed),
        trials=_read_int("TRIALS", defaults.trials),
        sweep_codewords=_read_int("SWEEP_CODEWORDS", defaults.sweep_codewords),
        audit_samples=_read_int("AUDIT_SAMPLES", defaults.audit_samples),
        log_level=log_level,
    )
