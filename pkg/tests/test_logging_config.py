import logging

import pytest

from bfseq.logging import LoggingConfig


class TestLoggingConfig:
    """Tests for LoggingConfig class."""

    def test_default_config(self):
        """Test default configuration values."""
        config = LoggingConfig()

        assert config.level == logging.WARNING
        assert config.as_json is False
        assert config.integrate_tracing is False
        assert config.colors is True
        assert config.timestamps is True

    def test_from_env_defaults(self, monkeypatch):
        """Test LoggingConfig.from_env with no variables set."""
        for var in ["LOG_LEVEL", "LOG_AS_JSON", "LOG_TRACING", "LOG_COLORS", "LOG_TIMESTAMPS"]:
            monkeypatch.delenv(var, raising=False)

        config = LoggingConfig.from_env()

        assert config == LoggingConfig()

    def test_from_env_custom(self, monkeypatch):
        """Test LoggingConfig.from_env with custom values."""
        monkeypatch.setenv("LOG_LEVEL", "debug")
        monkeypatch.setenv("LOG_AS_JSON", "true")
        monkeypatch.setenv("LOG_TRACING", "1")
        monkeypatch.setenv("LOG_COLORS", "off")
        monkeypatch.setenv("LOG_TIMESTAMPS", "no")

        config = LoggingConfig.from_env()

        assert config.level == logging.DEBUG
        assert config.as_json is True
        assert config.integrate_tracing is True
        assert config.colors is False
        assert config.timestamps is False

    def test_from_env_level_case_insensitive(self, monkeypatch):
        """Test log level names ignore case."""
        monkeypatch.setenv("LOG_LEVEL", "ERROR")

        assert LoggingConfig.from_env().level == logging.ERROR

    def test_from_env_invalid_level(self, monkeypatch):
        """Test an unknown log level raises ValueError."""
        monkeypatch.setenv("LOG_LEVEL", "verbose")

        with pytest.raises(ValueError, match="Invalid LOG_LEVEL"):
            LoggingConfig.from_env()

    def test_from_env_invalid_bool(self, monkeypatch):
        """Test an invalid boolean raises ValueError."""
        monkeypatch.delenv("LOG_LEVEL", raising=False)
        monkeypatch.setenv("LOG_AS_JSON", "sometimes")

        with pytest.raises(ValueError, match="Invalid boolean value for LOG_AS_JSON"):
            LoggingConfig.from_env()
