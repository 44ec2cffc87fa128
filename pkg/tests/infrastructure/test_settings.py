"""Tests for the environment configuration"""

import logging

from src.infrastructure import settings
from src.infrastructure.settings import configure_logging, effective_settings, logging_config


class TestSettings:
    """Test suite for configuration values"""

    def test_effective_settings_keys(self):
        """Test the values echoed into report headers"""
        assert list(effective_settings()) == ['threads', 'tolerance', 'log_level', 'bessel_step', 'quad_nodes']

    def test_defaults_are_sane(self):
        """Test that the configured values are usable"""
        assert settings.THREADS >= 1
        assert settings.TOLERANCE > 0
        assert 0 < settings.BESSEL_STEP <= 0.5


class TestLoggingConfig:
    """Test suite for the LOGGING dictionary"""

    def test_handlers_use_stderr(self):
        """Test that diagnostics never go to stdout"""
        config = logging_config('info')
        streams = {handler['stream'] for handler in config['handlers'].values()}
        assert streams == {'ext://sys.stderr'}

    def test_level_applied(self):
        """Test that the requested level reaches every logger"""
        config = logging_config('warning')
        assert {logger['level'] for logger in config['loggers'].values()} == {'WARNING'}

    def test_logger_names_follow_packages(self):
        """Test that the loggers match the module loggers of each layer"""
        assert set(logging_config()['loggers']) == {
            'src.domain', 'src.application', 'src.infrastructure', 'src.presentation',
        }

    def test_configure_logging(self):
        """Test that the configuration installs"""
        configure_logging('ERROR')
        assert logging.getLogger('src.domain').level == logging.ERROR
        configure_logging()
