from .numeric import numpy_to_builtin
from .opentelemetry import add_open_telemetry_spans
from .safety import make_processor_chain_safe, safe_processor

__all__ = [
    "add_open_telemetry_spans",
    "make_processor_chain_safe",
    "numpy_to_builtin",
    "safe_processor",
]
