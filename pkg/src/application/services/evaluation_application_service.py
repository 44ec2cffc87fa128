"""EvaluationApplicationService - Application service for point evaluations"""

import logging
from typing import Tuple

from src.application.commands.run_config import RunConfig
from src.application.dtos.report_dto import ReportDto
from src.domain.characters.character_group import all_characters, select_character
from src.domain.characters.dirichlet_character import DirichletCharacter
from src.domain.cusps.cusp import Cusp
from src.domain.eisen.char_eisenstein import eval_char_eisenstein
from src.domain.eisen.cusp_eisenstein import eval_cusp_eisenstein_at
from src.domain.eisen.eisenstein_series import CharAttached
from src.domain.eisen.level1 import eval_level1, eval_level1_G

logger = logging.getLogger(__name__)

FORMULAS = {
    'level1': "E(z, s) = sum over Gamma_oo \\ SL2(Z) of Im(gamma z)^s",
    'G': "G(z), the constant term of E(z, s) at s = 1",
    'cusp': "E_a(z, s, chi) as a combination of E_{chi1,chi2}(K z, s)",
    'char': "E_{chi1,chi2}(z, s) for primitive chi1, chi2 of equal parity",
}


def _parse_character(text: str) -> DirichletCharacter:
    modulus, _, index = text.partition('.')
    if not modulus.isdigit() or not index.isdigit():
        raise ValueError(f"Character must be written modulus.index, got {text!r}")
    characters = all_characters(int(modulus))
    if int(index) >= len(characters):
        raise ValueError(f"Character index {index} out of range for modulus {modulus}")
    return characters[int(index)]


def parse_series(selector: str) -> Tuple[str, str]:
    """
    Split a series selector into its kind and argument.

    Accepted forms are 'level1', 'G', 'cusp:u/f' and 'char:q1.k1,q2.k2'.

    Raises:
        ValueError: If the selector is malformed
    """
    kind, _, argument = selector.partition(':')
    if kind not in FORMULAS:
        raise ValueError(f"Unknown series {selector!r}")
    if kind in ('cusp', 'char') and not argument:
        raise ValueError(f"Series {kind!r} needs an argument")
    return kind, argument


class EvaluationApplicationService:
    """
    Application service for evaluating one Eisenstein series at one point.
    """

    def evaluate(self, config: RunConfig) -> ReportDto:
        """
        Evaluate the selected series at (z, s).

        Args:
            config: Run configuration with series selector, z, s and level

        Returns:
            ReportDto whose summary holds the value

        Raises:
            ValueError: If the configuration or selector is invalid
            DomainError: If the series is not defined for its parameters
            PoleError: At a pole in s
        """
        config.validate()
        kind, argument = parse_series(config.series)
        z, s = config.z, config.s
        if kind == 'level1':
            value = complex(eval_level1(z, s))
        elif kind == 'G':
            value = complex(eval_level1_G(z))
        elif kind == 'cusp':
            u, _, f = argument.partition('/')
            if not u.isdigit() or not f.isdigit():
                raise ValueError(f"Cusp must be written u/f, got {argument!r}")
            chi = select_character(config.level, config.character)
            value = complex(eval_cusp_eisenstein_at(Cusp(int(u), int(f), config.level), z, s, chi))
        else:
            first, _, second = argument.partition(',')
            series = CharAttached(_parse_character(first), _parse_character(second))
            value = complex(eval_char_eisenstein(series, z, s))
        logger.info(f"{config.series} at z={z}, s={s}: {value}")
        summary = {'re': value.real, 'im': value.imag, 'abs': abs(value)}
        return ReportDto('eval', FORMULAS[kind], config.to_dict(), [], summary)
