"""Commands package - the run configuration of the command line"""

from .run_config import COMMANDS, FORMATS, RunConfig

__all__ = [
    'COMMANDS',
    'FORMATS',
    'RunConfig',
]
