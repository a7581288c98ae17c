import sys

from opentelemetry import trace
from opentelemetry.trace import NoOpTracerProvider
from opentelemetry.trace import TracerProvider as TracerProviderProtocol

from bfseq._internal import check_opentelemetry_sdk

from .config import TracingConfig


def configure_tracing(
    cfg: TracingConfig,
    service_name: str,
    service_version: str,
) -> TracerProviderProtocol:
    """Install a tracer provider according to ``cfg``.

    Args:
        cfg: Tracing configuration.
        service_name: Name reported in the span resource.
        service_version: Version reported in the span resource.

    Returns:
        The installed tracer provider.

    Raises:
        MissingDependencyError: If tracing is enabled without the ``tracing`` extra.
    """
    if not cfg.enabled:
        provider: TracerProviderProtocol = NoOpTracerProvider()
        trace.set_tracer_provider(provider)
        return provider

    check_opentelemetry_sdk()
    from opentelemetry.sdk.resources import (  # noqa: PLC0415
        SERVICE_NAME,
        SERVICE_VERSION,
        Resource,
    )
    from opentelemetry.sdk.trace import TracerProvider  # noqa: PLC0415
    from opentelemetry.sdk.trace.export import (  # noqa: PLC0415
        ConsoleSpanExporter,
        SimpleSpanProcessor,
    )

    resource = Resource.create(
        attributes={SERVICE_NAME: service_name, SERVICE_VERSION: service_version},
    )
    sdk_provider = TracerProvider(resource=resource)
    if cfg.console:
        sdk_provider.add_span_processor(SimpleSpanProcessor(ConsoleSpanExporter(out=sys.stderr)))

    trace.set_tracer_provider(sdk_provider)
    return sdk_provider


def get_tracer(name: str, version: str | None = None) -> trace.Tracer:
    """Get an OpenTelemetry tracer; a no-op one unless a provider was configured."""
    return trace.get_tracer(name, version)
