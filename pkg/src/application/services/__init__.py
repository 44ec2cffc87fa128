"""Services package - application services, one per command family"""

from .acceptance_application_service import AcceptanceApplicationService
from .cusp_application_service import CuspApplicationService
from .evaluation_application_service import EvaluationApplicationService
from .experiment_application_service import ExperimentApplicationService
from .scattering_application_service import ScatteringApplicationService

__all__ = [
    'AcceptanceApplicationService',
    'CuspApplicationService',
    'EvaluationApplicationService',
    'ExperimentApplicationService',
    'ScatteringApplicationService',
]
