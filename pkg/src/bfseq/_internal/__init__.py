from .dependencies import (
    MissingDependencyError,
    check_opentelemetry_sdk,
    require_dependency,
)
from .env import env_bool, env_choice

__all__ = [
    "MissingDependencyError",
    "check_opentelemetry_sdk",
    "env_bool",
    "env_choice",
    "require_dependency",
]
