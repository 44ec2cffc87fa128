"""
Configuration for eisenlab.

Values come from the environment, or from a .env file in the working
directory when one exists. Command-line flags override them.
"""

import logging.config
import os
from pathlib import Path
from typing import Any, Dict, Optional

from decouple import config
from dotenv import load_dotenv

BASE_DIR = Path(__file__).resolve().parent.parent.parent

load_dotenv(Path.cwd() / '.env')

DEBUG = config('DEBUG', default=False, cast=bool)

THREADS = config('EISENLAB_THREADS', default=min(os.cpu_count() or 1, 8), cast=int)
TOLERANCE = config('EISENLAB_TOL', default=1e-6, cast=float)
LOG_LEVEL = config('EISENLAB_LOG_LEVEL', default='DEBUG' if DEBUG else 'INFO')
BESSEL_STEP = config('EISENLAB_BESSEL_STEP', default=0.125, cast=float)
QUAD_NODES = config('EISENLAB_QUAD_NODES', default=48, cast=int)


def effective_settings() -> Dict[str, Any]:
    """The configuration values echoed into every report header."""
    return {
        'threads': THREADS,
        'tolerance': TOLERANCE,
        'log_level': LOG_LEVEL,
        'bessel_step': BESSEL_STEP,
        'quad_nodes': QUAD_NODES,
    }


def logging_config(level: Optional[str] = None) -> Dict[str, Any]:
    """
    The LOGGING dictionary for logging.config.dictConfig.

    Diagnostics go to stderr; stdout is reserved for reports.
    """
    level = (level or LOG_LEVEL).upper()
    return {
        'version': 1,
        'disable_existing_loggers': False,
        'formatters': {
            'verbose': {
                'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
                'style': '{',
            },
            'report': {
                'format': '{asctime} eisenlab {levelname} {message}',
                'style': '{',
            },
        },
        'handlers': {
            'console': {
                'level': level,
                'class': 'logging.StreamHandler',
                'formatter': 'verbose',
                'stream': 'ext://sys.stderr',
            },
            'cli_console': {
                'level': level,
                'class': 'logging.StreamHandler',
                'formatter': 'report',
                'stream': 'ext://sys.stderr',
            },
        },
        'loggers': {
            'src.domain': {
                'handlers': ['console'],
                'level': level,
                'propagate': False,
            },
            'src.application': {
                'handlers': ['console'],
                'level': level,
                'propagate': False,
            },
            'src.infrastructure': {
                'handlers': ['console'],
                'level': level,
                'propagate': False,
            },
            'src.presentation': {
                'handlers': ['cli_console'],
                'level': level,
                'propagate': False,
            },
        },
    }


LOGGING: Dict[str, Any] = logging_config()


def configure_logging(level: Optional[str] = None) -> None:
    """Install the logging configuration."""
    logging.config.dictConfig(logging_config(level))
