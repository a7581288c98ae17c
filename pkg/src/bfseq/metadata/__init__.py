from .run_info import RunInfo

__all__ = [
    "RunInfo",
]
