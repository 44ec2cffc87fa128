"""ScatteringApplicationService - Application service for scattering rows"""

import logging

from src.application.commands.run_config import RunConfig
from src.application.dtos.report_dto import ReportDto
from src.domain.characters.character_group import select_character
from src.domain.scatter.hard_sums import factorized_masses, hard_sums
from src.domain.scatter.scattering import phi_infinity_row

logger = logging.getLogger(__name__)

SCATTERING_FORMULA = ("phi_{oo a}(1/2 + iT, chi), unitarity sum_a |phi_{oo a}|^2 = 1, S1 + S3 = log(N/q) "
                      "and S_f = C_f prod_p S_f^p")


class ScatteringApplicationService:
    """
    Application service for the scattering row of the cusp at infinity.

    For each T the report lists phi_{oo a}(1/2 + iT, chi) at every singular
    cusp and records the unitarity and weighted-log residuals.
    """

    def scattering(self, config: RunConfig) -> ReportDto:
        """
        Tabulate phi_{oo a} on the critical line.

        Args:
            config: Run configuration with level, character and T values

        Returns:
            ReportDto with one row per (T, cusp)

        Raises:
            ValueError: If the configuration is invalid
            DomainError: If the character is odd or selects nothing
        """
        config.validate()
        level = config.level
        chi = select_character(level, config.character)
        rows = []
        unitarity = 0.0
        weighted_log = 0.0
        factorization = 0.0
        for t in config.ts:
            row = phi_infinity_row(level, chi, 0.5 + 1j * t)
            unitarity = max(unitarity, abs(row.unitarity_sum() - 1))
            sums = hard_sums(level, chi, t)
            weighted_log = max(weighted_log, abs(sums.identity_residual))
            factored = factorized_masses(level, chi, t)
            factorization = max([factorization] + [abs(mass - factored[f]) for f, mass in sums.masses.items()])
            for cusp, value in row.entries.items():
                rows.append({
                    'T': t,
                    'cusp': str(cusp),
                    'f': cusp.f,
                    're': value.real,
                    'im': value.imag,
                    'abs2': abs(value) ** 2,
                })
        summary = {
            'q': chi.conductor,
            'unitarity_residual': unitarity,
            'weighted_log_residual': weighted_log,
            'mass_factorization_residual': factorization,
        }
        logger.info(f"Scattering at N={level}: unitarity residual {unitarity:.3e}")
        return ReportDto('scattering', SCATTERING_FORMULA, config.to_dict(), rows, summary)
