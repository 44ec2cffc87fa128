"""CuspApplicationService - Application service for cusp tables"""

import logging
from math import gcd

from src.application.commands.run_config import RunConfig
from src.application.dtos.report_dto import ReportDto
from src.domain.arith.multiplicative import divisors, euler_phi, nu_index
from src.domain.characters.character_group import select_character
from src.domain.cusps.cusp_service import cusp_set, is_singular

logger = logging.getLogger(__name__)

CUSP_FORMULA = "cusps u/f with f | N, u mod (f, N/f); width N/(N, f^2); singular iff q | lcm(f, N/f)"


class CuspApplicationService:
    """
    Application service for the cusps of Gamma0(N).

    The report lists every canonical cusp with its width and whether it is
    singular for the selected character.
    """

    def cusp_table(self, config: RunConfig) -> ReportDto:
        """
        Tabulate the cusps of Gamma0(N).

        Args:
            config: Run configuration with the level and character selector

        Returns:
            ReportDto with one row per cusp

        Raises:
            ValueError: If the configuration is invalid
            DomainError: If the character selector selects nothing
        """
        config.validate()
        level = config.level
        chi = select_character(level, config.character)
        rows = []
        for cusp in cusp_set(level):
            rows.append({
                'cusp': str(cusp),
                'u': cusp.u,
                'f': cusp.f,
                'width': cusp.width,
                'singular': is_singular(cusp, chi),
                'atkin_lehner': cusp.is_atkin_lehner,
            })
        expected = sum(euler_phi(gcd(f, level // f)) for f in divisors(level))
        summary = {
            'count': len(rows),
            'expected_count': expected,
            'singular_count': sum(1 for row in rows if row['singular']),
            'width_sum': sum(row['width'] for row in rows),
            'index': nu_index(level),
        }
        logger.info(f"Cusp table at N={level}: {len(rows)} cusps")
        return ReportDto('cusps', CUSP_FORMULA, config.to_dict(), rows, summary)
