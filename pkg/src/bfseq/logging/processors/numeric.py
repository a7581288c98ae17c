import math

import numpy as np
import structlog
from structlog.typing import WrappedLogger

_MAX_ARRAY_ITEMS = 16


def _to_builtin(value: object) -> object:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        if value.size > _MAX_ARRAY_ITEMS:
            return {
                "shape": list(value.shape),
                "min": float(value.min()),
                "max": float(value.max()),
            }
        return value.tolist()
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


def numpy_to_builtin(
    logger: WrappedLogger,  # noqa: ARG001
    method_name: str,  # noqa: ARG001
    event_dict: structlog.types.EventDict,
) -> structlog.types.EventDict:
    """Convert numpy scalars and arrays in a log event to plain Python values.

    Large arrays are summarised by shape and range. Non-finite floats become strings
    so every renderer produces valid output.
    """
    for key, value in event_dict.items():
        event_dict[key] = _to_builtin(value)
    return event_dict
