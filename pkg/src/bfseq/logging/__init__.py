from .collector import LoggingCollector, ProcessorChain, get_logger
from .config import LoggingConfig

__all__ = ["LoggingCollector", "LoggingConfig", "ProcessorChain", "get_logger"]
