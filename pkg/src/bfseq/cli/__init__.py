from .app import build_parser, main
from .config import DesignConfig, SearchConfig, SweepConfig

__all__ = ["DesignConfig", "SearchConfig", "SweepConfig", "build_parser", "main"]
