"""ExperimentApplicationService - Application service for kernel, QUE and portion runs"""

import logging
from typing import List, Optional

from src.application.commands.run_config import RunConfig
from src.application.dtos.report_dto import ReportDto
from src.domain.characters.character_group import select_character
from src.domain.cusps.coset_reps import coset_reps
from src.domain.geom.bump import TestFunction
from src.domain.geom.ford import portion_set
from src.domain.geom.quadrature import Mapper, QuadratureSpec, bump_integral, pair_with_test_function
from src.domain.reg.kernel import build_kernel
from src.domain.reg.main_terms import alpha_phi, t_zero_sweep, traced_kernel, twisted_residuals, weighted_average

logger = logging.getLogger(__name__)

KERNEL_FORMULA = ("Tr^N_M K = c0 + sum_g c_g G(g z) + 2 Re sum_g c'_g E(g z, 1 + 2iT), "
                  "c0 ~ V_M (log(N^2/(M (M, N/q))) + 4 Re L'/L(1 + 2iT, conj psi))")
QUE_FORMULA = "<|E_oo(., 1/2 + iT, chi)|^2, phi_j>_N = c0 <1, phi_j> + alpha_phi + residual"
SWEEP_FORMULA = "<K, phi0>_N = c0 <1, phi0> + alpha_phi0 tends to 0 with T for M = q = 1"
PORTION_FORMULA = ("S = {(c, d) : (c, d) = 1, sqrt(M)/100 <= c <= sqrt(M)/20, 0 <= d <= c/4}, "
                   "gamma(D^c(100)) inside M^{-1} < y <= 20000 M^{-1}")


class ExperimentApplicationService:
    """
    Application service for the regularized quantum variance experiments.

    The quadrature settings come from each run; the optional mapper spreads
    quadrature cells over worker threads.
    """

    def __init__(self, mapper: Optional[Mapper] = None) -> None:
        self._mapper = mapper

    @staticmethod
    def quadrature_spec(config: RunConfig) -> QuadratureSpec:
        """The quadrature settings of a run."""
        return QuadratureSpec(resolution=config.resolution, target_rel_error=config.tolerance)

    def kernel_report(self, config: RunConfig) -> ReportDto:
        """
        Traced kernel coefficients for each T.

        Args:
            config: Run configuration with N, M (default 1), character and T values

        Returns:
            ReportDto with one row of scalar results per T; the full
            coefficient tables are in the summary

        Raises:
            ValueError: If the configuration is invalid
            DomainError: If T = 0, M does not divide N or the character is odd
        """
        config.validate()
        level = config.level
        sublevel = config.sublevel or 1
        chi = select_character(level, config.character)
        rows = []
        forms = []
        for t in config.ts:
            form = traced_kernel(level, chi, t, sublevel)
            average = weighted_average(level, chi, t)
            residuals = twisted_residuals(level, chi, t, sublevel)
            rows.append({
                'T': t,
                'c0_exact': form.c0_exact,
                'c0_asymptotic_form': form.c0_asymptotic,
                'discrepancy': form.discrepancy,
                'coefficient_mass': form.coefficient_mass(),
                'fitted_constant': form.fitted_constant(),
                'weighted_average': average.value.real,
                'weighted_average_paths': average.path_difference(),
                'twisted_residual': max((abs(value) for value in residuals.values()), default=0.0),
            })
            forms.append(form.to_dict())
        logger.info(f"Kernel report N={level}, M={sublevel}: {len(rows)} values of T")
        return ReportDto('kernel', KERNEL_FORMULA, config.to_dict(), rows, {'traced_forms': forms})

    def que_report(self, config: RunConfig) -> ReportDto:
        """
        Compare <|E|^2, phi_j> with its main term on each coset.

        Business rules:
        - phi_j is the standard bump on the j-th translate of D at level M
        - residual = lhs - main - alpha is reported without a pass/fail verdict

        Raises:
            ValueError: If the configuration or the coset index is invalid
            DomainError: If T = 0, M does not divide N or the character is odd
            AccuracyError: If a quadrature does not converge
        """
        config.validate()
        level = config.level
        sublevel = config.sublevel or 1
        chi = select_character(level, config.character)
        spec = self.quadrature_spec(config)
        cosets = self._cosets(sublevel, config.coset)
        rows = []
        for t in config.ts:
            form = traced_kernel(level, chi, t, sublevel)
            kernel = build_kernel(level, chi, t)
            for j in cosets:
                phi = TestFunction.standard(sublevel, j)
                lhs = pair_with_test_function(kernel.source_density, phi, level, spec, self._mapper).value.real
                main = form.c0_exact * bump_integral(phi)
                alpha = alpha_phi(form, phi, spec, self._mapper).value
                rows.append({'T': t, 'coset': j, 'lhs': lhs, 'main': main, 'alpha': alpha,
                             'residual': lhs - main - alpha})
                logger.debug(f"QUE at N={level}, M={sublevel}, T={t}, j={j}: residual {lhs - main - alpha:.6g}")
        summary = {'cosets': len(cosets), 'max_abs_residual': max(abs(row['residual']) for row in rows)}
        return ReportDto('que', QUE_FORMULA, config.to_dict(), rows, summary)

    def t_zero_sweep_report(self, config: RunConfig) -> ReportDto:
        """
        <K, phi0>_N along decreasing T with its extrapolation to T = 0.

        Raises:
            ValueError: If fewer than two T values are given
            DomainError: If some T is zero
        """
        config.validate()
        sweep = t_zero_sweep(config.level, config.ts, spec=self.quadrature_spec(config), mapper=self._mapper)
        rows = [{'T': t, 'value': value} for t, value in zip(sweep.ts, sweep.values)]
        return ReportDto('t-zero-sweep', SWEEP_FORMULA, config.to_dict(), rows,
                         {'extrapolated': sweep.extrapolated()})

    def portion_report(self, config: RunConfig) -> ReportDto:
        """
        Build the portion set S at level M and its checks.

        Returns:
            ReportDto with one row per (c, d)
        """
        config.validate()
        portion = portion_set(config.sublevel)
        summary = portion.to_dict()
        pairs = summary.pop('pairs')
        rows = [{'c': c, 'd': d} for c, d in pairs]
        return ReportDto('portion', PORTION_FORMULA, config.to_dict(), rows, summary)

    @staticmethod
    def _cosets(sublevel: int, coset: Optional[int]) -> List[int]:
        count = len(coset_reps(sublevel))
        if coset is None:
            return list(range(count))
        if coset >= count:
            raise ValueError(f"Coset index {coset} out of range for level {sublevel}")
        return [coset]
