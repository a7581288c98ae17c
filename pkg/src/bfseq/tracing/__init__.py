from .config import TracingConfig
from .tracer import configure_tracing, get_tracer

__all__ = ["TracingConfig", "configure_tracing", "get_tracer"]
