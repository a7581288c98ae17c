from dataclasses import dataclass
from typing import Self

from bfseq._internal import env_bool


@dataclass
class TracingConfig:
    """Configuration for OpenTelemetry spans around long computations.

    Attributes:
        enabled: Whether to install an SDK tracer provider (default: False).
        console: Whether finished spans are printed to stderr.
    """

    enabled: bool = False
    console: bool = True

    @classmethod
    def from_env(cls) -> Self:
        """Create configuration from environment variables.

        Environment variables:
            TRACING_ENABLED: Install an SDK tracer provider (default: false).
            TRACING_CONSOLE: Print finished spans to stderr (default: true).

        Returns:
            TracingConfig instance.

        Raises:
            ValueError: If any environment variable has an invalid value.
        """
        return cls(
            enabled=env_bool("TRACING_ENABLED", "false"),
            console=env_bool("TRACING_CONSOLE", "true"),
        )
