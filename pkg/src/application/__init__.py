"""
Application Layer

This package orchestrates domain computations for the command line without
containing mathematics itself.

Components:
- commands: RunConfig, the validated description of one run
- dtos: Report objects with a fixed field order
- services: Application services, one per command family
- handlers: The dispatcher routing a run to its service
"""

from .commands import RunConfig
from .dtos import ErrorDto, ReportDto
from .handlers import CommandHandlerService
from .services import (
    AcceptanceApplicationService,
    CuspApplicationService,
    EvaluationApplicationService,
    ExperimentApplicationService,
    ScatteringApplicationService,
)

__all__ = [
    'RunConfig',
    'ErrorDto',
    'ReportDto',
    'CommandHandlerService',
    'AcceptanceApplicationService',
    'CuspApplicationService',
    'EvaluationApplicationService',
    'ExperimentApplicationService',
    'ScatteringApplicationService',
]
