"""Handlers package - dispatch of command-line runs"""

from .command_handler_service import CommandHandlerService

__all__ = ['CommandHandlerService']
