"""DTOs package - report objects for command-line output"""

from .report_dto import SCHEMA, ErrorDto, ReportDto

__all__ = [
    'SCHEMA',
    'ErrorDto',
    'ReportDto',
]
