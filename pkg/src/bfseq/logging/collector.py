import logging
import sys
from collections.abc import Callable, Iterator
from typing import Any, Self

import orjson
import structlog
from structlog.typing import Processor

from .config import LoggingConfig
from .processors import add_open_telemetry_spans, make_processor_chain_safe, numpy_to_builtin


class ProcessorChain:
    """An ordered, editable list of structlog processors."""

    def __init__(self, processors: list[Processor] | None = None) -> None:
        self._processors: list[Processor] = processors or []

    def append(self, processor: Processor) -> Self:
        """Add a processor to the end of the chain.

        Returns:
            Self for method chaining.
        """
        self._processors.append(processor)
        return self

    def insert(self, index: int, processor: Processor) -> Self:
        """Insert a processor at a specific position.

        Returns:
            Self for method chaining.
        """
        self._processors.insert(index, processor)
        return self

    def to_list(self) -> list[Processor]:
        return self._processors.copy()

    def __len__(self) -> int:
        return len(self._processors)

    def __iter__(self) -> Iterator[Processor]:
        return iter(self._processors)

    def __repr__(self) -> str:
        return f"ProcessorChain({len(self._processors)} processors)"


class LoggingCollector:
    """Builds the structlog pipeline used by the library and the command line.

    Four chains run in order: early enrichment, user pre-processing, core processing
    and post-processing. Output goes to stderr so reports on stdout stay clean.
    """

    def __init__(self, config: LoggingConfig, safe_processors: bool = True) -> None:
        """Initialize the logging collector.

        Args:
            config: Configuration for the logging system.
            safe_processors: Whether to wrap processors with error handling.
        """
        self._config = config
        self._safe_processors = safe_processors

        early_processors: list[Processor] = [
            structlog.stdlib.add_log_level,
            structlog.stdlib.add_logger_name,
            structlog.contextvars.merge_contextvars,
            structlog.stdlib.ExtraAdder(),
        ]
        if config.timestamps:
            early_processors.append(structlog.processors.TimeStamper(fmt="iso", utc=True))
        self._early_processing = ProcessorChain(early_processors)

        self._preprocessing = ProcessorChain()

        core_processors: list[Processor] = [numpy_to_builtin]
        if config.integrate_tracing:
            core_processors.append(add_open_telemetry_spans)
        if config.as_json:
            core_processors.append(structlog.processors.dict_tracebacks)
        self._processing = ProcessorChain(core_processors)

        self._postprocessing = ProcessorChain()

    def early_processing(self) -> ProcessorChain:
        return self._early_processing

    def preprocessing(self) -> ProcessorChain:
        """Chain for user processors that run after enrichment and before core processing."""
        return self._preprocessing

    def processing(self) -> ProcessorChain:
        return self._processing

    def postprocessing(self) -> ProcessorChain:
        return self._postprocessing

    def build_processor_list(self) -> list[Processor]:
        """Build the complete processor list from all chains.

        Returns:
            Combined list of all processors from all chains.
        """
        processors: list[Processor] = []
        processors.extend(self._early_processing.to_list())
        processors.extend(self._preprocessing.to_list())
        processors.extend(self._processing.to_list())
        processors.extend(self._postprocessing.to_list())

        if self._safe_processors:
            processors = make_processor_chain_safe(processors)

        return processors

    def _json_serializer(  # type: ignore[explicit-any]
        self,
        data: Any,  # noqa: ANN401
        default: Callable[[Any], Any] | None,
    ) -> str:
        return orjson.dumps(data, default=default, option=orjson.OPT_SERIALIZE_NUMPY).decode()

    def configure(self) -> None:
        """Configure stdlib logging and structlog with the current processor chains."""
        common_processors = self.build_processor_list()

        final_processor: Processor
        if self._config.as_json:
            final_processor = structlog.processors.JSONRenderer(serializer=self._json_serializer)
        else:
            final_processor = structlog.dev.ConsoleRenderer(
                colors=self._config.colors,
                exception_formatter=structlog.dev.plain_traceback,
            )

        handler = logging.StreamHandler(sys.stderr)
        handler.set_name("bfseq")
        handler.setLevel(self._config.level)
        handler.setFormatter(
            structlog.stdlib.ProcessorFormatter(
                foreign_pre_chain=common_processors,
                processors=[
                    structlog.stdlib.ProcessorFormatter.remove_processors_meta,
                    final_processor,
                ],
            )
        )

        root = logging.getLogger()
        for existing in [h for h in root.handlers if h.get_name() == "bfseq"]:
            root.removeHandler(existing)
        root.addHandler(handler)
        root.setLevel(self._config.level)

        structlog.configure(
            processors=[
                *common_processors,
                structlog.processors.StackInfoRenderer(),
                structlog.stdlib.PositionalArgumentsFormatter(),
                structlog.processors.UnicodeDecoder(),
                structlog.stdlib.ProcessorFormatter.wrap_for_formatter,
            ],
            logger_factory=structlog.stdlib.LoggerFactory(),
            wrapper_class=structlog.make_filtering_bound_logger(self._config.level),
            cache_logger_on_first_use=False,
        )


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    return structlog.stdlib.get_logger(name)
