import logging
from dataclasses import dataclass
from typing import Self

from bfseq._internal import env_bool, env_choice

_LEVELS = {
    "debug": logging.DEBUG,
    "info": logging.INFO,
    "warning": logging.WARNING,
    "error": logging.ERROR,
    "critical": logging.CRITICAL,
}


@dataclass
class LoggingConfig:
    """Configuration for structured logging.

    Attributes:
        level: Logging level as integer.
        as_json: Whether to output logs in JSON format.
        integrate_tracing: Whether to include OpenTelemetry span ids in logs.
        colors: Whether to enable colors in console output (ignored for JSON output).
        timestamps: Whether to add an ISO timestamp to each event.
    """

    level: int = logging.WARNING
    as_json: bool = False
    integrate_tracing: bool = False
    colors: bool = True
    timestamps: bool = True

    @classmethod
    def from_env(cls) -> Self:
        """Create configuration from environment variables.

        Environment variables:
            LOG_LEVEL: Log level (default: WARNING).
            LOG_AS_JSON: Output logs as JSON (default: false).
            LOG_TRACING: Include span ids (default: false).
            LOG_COLORS: Enable colors in console output (default: true).
            LOG_TIMESTAMPS: Add timestamps (default: true).

        Returns:
            LoggingConfig instance.

        Raises:
            ValueError: If any environment variable has an invalid value.
        """
        try:
            level = _LEVELS[env_choice("LOG_LEVEL", "warning", _LEVELS)]
        except ValueError as exc:
            msg = f"Invalid LOG_LEVEL: {exc}"
            raise ValueError(msg) from exc

        return cls(
            level=level,
            as_json=env_bool("LOG_AS_JSON", "false"),
            integrate_tracing=env_bool("LOG_TRACING", "false"),
            colors=env_bool("LOG_COLORS", "true"),
            timestamps=env_bool("LOG_TIMESTAMPS", "true"),
        )
