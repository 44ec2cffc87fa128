"""ReportDto - Data transfer objects for command-line reports"""

from dataclasses import dataclass, field
from typing import Any, Dict, List

SCHEMA = "eisenlab/1"


@dataclass(frozen=True)
class ReportDto:
    """
    Data Transfer Object for the result of one command.

    Attributes:
        command: The command that produced the report
        formula: The identity or formula the command exercised
        config: The effective run configuration
        rows: Tabular results, one dictionary per row
        summary: Scalar results and residuals
    """
    command: str
    formula: str
    config: Dict[str, Any]
    rows: List[Dict[str, Any]] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert the DTO to a dictionary for serialization.

        Returns:
            Dictionary with a fixed key order
        """
        return {
            'schema': SCHEMA,
            'command': self.command,
            'formula': self.formula,
            'config': dict(self.config),
            'summary': dict(self.summary),
            'rows': [dict(row) for row in self.rows],
        }


@dataclass(frozen=True)
class ErrorDto:
    """
    Data Transfer Object for a failed command.

    Attributes:
        error: Human-readable message
        type: Exception class name
        details: Structured attributes of the exception
    """
    error: str
    type: str
    details: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_exception(cls, exc: BaseException) -> "ErrorDto":
        """Build the error object from an exception, using its to_dict when it has one."""
        to_dict = getattr(exc, 'to_dict', None)
        if not callable(to_dict):
            return cls(error=str(exc), type=type(exc).__name__)
        data = to_dict()
        details = {'operation': data.get('operation')}
        details.update(data.get('details', {}))
        return cls(error=data.get('error') or str(exc), type=type(exc).__name__, details=details)

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert the DTO to a dictionary for serialization.

        Returns:
            Dictionary representation of the error
        """
        return {
            'schema': SCHEMA,
            'error': self.error,
            'type': self.type,
            'details': dict(self.details),
        }
