"""
Command handler service for eisenlab.

This module routes a RunConfig to the application service that executes
it, implementing the Command pattern for the command line.
"""

import logging
from typing import Callable, Dict, Optional

from ..commands.run_config import RunConfig
from ..dtos.report_dto import ReportDto
from ..services.acceptance_application_service import AcceptanceApplicationService
from ..services.cusp_application_service import CuspApplicationService
from ..services.evaluation_application_service import EvaluationApplicationService
from ..services.experiment_application_service import ExperimentApplicationService
from ..services.scattering_application_service import ScatteringApplicationService

logger = logging.getLogger(__name__)


class CommandHandlerService:
    """
    Centralized service for executing runs through their services.

    This service acts as a command dispatcher, routing each command name to
    its handler and providing a clean API for the command line.
    """

    def __init__(
        self,
        cusp_service: Optional[CuspApplicationService] = None,
        scattering_service: Optional[ScatteringApplicationService] = None,
        evaluation_service: Optional[EvaluationApplicationService] = None,
        experiment_service: Optional[ExperimentApplicationService] = None,
        acceptance_service: Optional[AcceptanceApplicationService] = None,
    ) -> None:
        """
        Initialize the command handler service.

        Args:
            cusp_service: Service for cusp tables
            scattering_service: Service for scattering rows
            evaluation_service: Service for point evaluations
            experiment_service: Service for kernel, QUE, sweep and portion runs
            acceptance_service: Service for the acceptance suite
        """
        self._cusp_service = cusp_service or CuspApplicationService()
        self._scattering_service = scattering_service or ScatteringApplicationService()
        self._evaluation_service = evaluation_service or EvaluationApplicationService()
        self._experiment_service = experiment_service or ExperimentApplicationService()
        self._acceptance_service = acceptance_service or AcceptanceApplicationService()
        self._handlers: Dict[str, Callable[[RunConfig], ReportDto]] = {
            'cusps': self.handle_cusps,
            'scattering': self.handle_scattering,
            'eval': self.handle_eval,
            'kernel': self.handle_kernel,
            'que': self.handle_que,
            'portion': self.handle_portion,
            'suite': self.handle_suite,
            't-zero-sweep': self.handle_t_zero_sweep,
        }

    def handle(self, config: RunConfig) -> ReportDto:
        """
        Dispatch a run to its handler.

        Raises:
            ValueError: If the configuration is invalid
        """
        config.validate()
        logger.info(f"Running {config.command}")
        return self._handlers[config.command](config)

    def handle_cusps(self, config: RunConfig) -> ReportDto:
        """Handle the cusp table."""
        return self._cusp_service.cusp_table(config)

    def handle_scattering(self, config: RunConfig) -> ReportDto:
        """Handle the scattering row with its unitarity residual."""
        return self._scattering_service.scattering(config)

    def handle_eval(self, config: RunConfig) -> ReportDto:
        """Handle a point evaluation."""
        return self._evaluation_service.evaluate(config)

    def handle_kernel(self, config: RunConfig) -> ReportDto:
        """Handle the traced kernel report."""
        return self._experiment_service.kernel_report(config)

    def handle_que(self, config: RunConfig) -> ReportDto:
        """Handle the per-coset main-term comparison."""
        return self._experiment_service.que_report(config)

    def handle_portion(self, config: RunConfig) -> ReportDto:
        """Handle the portion construction."""
        return self._experiment_service.portion_report(config)

    def handle_suite(self, config: RunConfig) -> ReportDto:
        """Handle the acceptance suite."""
        return self._acceptance_service.run(config)

    def handle_t_zero_sweep(self, config: RunConfig) -> ReportDto:
        """Handle the T -> 0 sweep."""
        return self._experiment_service.t_zero_sweep_report(config)
