import functools

from structlog.typing import EventDict, Processor, ProcessorReturnValue, WrappedLogger


def safe_processor(processor: Processor, log_errors: bool = True) -> Processor:
    """Wrap a processor so an exception inside it never aborts the log call.

    Args:
        processor: The processor to wrap.
        log_errors: Whether to record the failure in the event under ``processor_errors``.

    Returns:
        A processor that returns the event unchanged when the wrapped one raises.
    """
    processor_name = getattr(processor, "__name__", processor.__class__.__name__)

    @functools.wraps(processor)
    def wrapper(
        logger: WrappedLogger,
        method_name: str,
        event_dict: EventDict,
    ) -> ProcessorReturnValue:
        try:
            return processor(logger, method_name, event_dict)
        except Exception as exc:  # noqa: BLE001
            if log_errors:
                event_dict.setdefault("processor_errors", []).append(
                    {"processor": processor_name, "error_type": exc.__class__.__name__}
                )
            return event_dict

    return wrapper


def make_processor_chain_safe(processors: list[Processor]) -> list[Processor]:
    return [safe_processor(proc) for proc in processors]
