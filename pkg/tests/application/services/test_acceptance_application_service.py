"""Tests for AcceptanceApplicationService"""

from unittest.mock import MagicMock

import pytest

from src.application.commands.run_config import RunConfig
from src.application.services.acceptance_application_service import (
    CRITERIA,
    AcceptanceApplicationService,
    Criterion,
    Outcome,
    check_constant_terms,
    check_direct_sums,
    check_functional_equation,
    check_hecke_on_G,
    check_log_derivative,
    check_nonsingular_decay,
    check_renormalization,
    check_unitarity,
    check_weighted_log,
)
from src.domain.geom.quadrature import QuadratureSpec


class TestAcceptanceApplicationService:
    """Test suite for the suite runner"""

    def test_slow_criteria_skipped(self):
        """Test that slow criteria only run when requested"""
        fast = MagicMock(return_value=Outcome(0.0, 1.0))
        slow = MagicMock(return_value=Outcome(0.0, 1.0))
        service = AcceptanceApplicationService(criteria=(
            Criterion(1, 'fast', False, fast),
            Criterion(2, 'slow', True, slow),
        ))
        report = service.run(RunConfig('suite', level_range=(1, 2)))
        fast.assert_called_once()
        slow.assert_not_called()
        assert report.summary == {'passed': 1, 'failed': 0, 'slow_included': False}

    def test_failures_counted(self):
        """Test that an outcome above its threshold or not finite fails"""
        service = AcceptanceApplicationService(criteria=(
            Criterion(1, 'above', False, lambda *args: Outcome(2.0, 1.0)),
            Criterion(2, 'infinite', False, lambda *args: Outcome(float('inf'), 1.0)),
            Criterion(3, 'below', True, lambda *args: Outcome(0.5, 1.0)),
        ))
        report = service.run(RunConfig('suite', include_slow=True))
        assert [row['passed'] for row in report.rows] == [False, False, True]
        assert report.summary['failed'] == 2

    def test_rows_carry_no_timings(self):
        """Test that repeated runs give identical reports"""
        service = AcceptanceApplicationService(criteria=(
            Criterion(1, 'constant', False, lambda *args: Outcome(0.25, 1.0)),
        ))
        config = RunConfig('suite')
        assert service.run(config).to_dict() == service.run(config).to_dict()

    def test_criteria_numbers_unique(self):
        """Test that the registered criteria have distinct numbers"""
        numbers = [criterion.number for criterion in CRITERIA]
        assert len(numbers) == len(set(numbers))

    def test_suite_reports_every_criterion(self):
        """Test that a full run reports criteria 1 to 16 in order"""
        criteria = tuple(criterion._replace(check=MagicMock(return_value=Outcome(0.0, 1.0)))
                         for criterion in CRITERIA)
        report = AcceptanceApplicationService(criteria=criteria).run(RunConfig('suite', include_slow=True))
        assert [row['criterion'] for row in report.rows] == list(range(1, 17))
        assert report.summary['passed'] == 16

    def test_fast_run_keeps_cheap_criteria(self):
        """Test that the cheap criteria run without --slow"""
        criteria = tuple(criterion._replace(check=MagicMock(return_value=Outcome(0.0, 1.0)))
                         for criterion in CRITERIA)
        report = AcceptanceApplicationService(criteria=criteria).run(RunConfig('suite'))
        assert [row['criterion'] for row in report.rows] == [1, 2, 5, 6, 7, 9, 10]


class TestFastChecks:
    """Test suite for the cheap acceptance checks"""

    spec = QuadratureSpec(resolution=32)

    @pytest.mark.parametrize("check", [check_unitarity, check_weighted_log])
    def test_scan_checks(self, check):
        """Test the scanning checks over a small level range"""
        outcome = check((1, 8), self.spec, None)
        assert outcome.measured <= outcome.threshold

    def test_hecke_on_G(self):
        """Test the Hecke relation for G"""
        outcome = check_hecke_on_G((1, 1), self.spec, None)
        assert outcome.measured <= outcome.threshold

    def test_log_derivative(self):
        """Test the assembled log derivative against a finite difference"""
        outcome = check_log_derivative((1, 1), self.spec, None)
        assert outcome.measured <= outcome.threshold

    def test_functional_equation(self):
        """Test the completed functional equation on the point and pair grid"""
        outcome = check_functional_equation((1, 1), self.spec, None)
        assert outcome.measured <= outcome.threshold

    def test_nonsingular_decay(self):
        """Test decay at non-singular cusps of levels 9, 12 and 25"""
        outcome = check_nonsingular_decay((1, 1), self.spec, None)
        assert outcome.measured <= outcome.threshold

    def test_direct_sums(self):
        """Test the Fourier evaluations against the defining sums up to level 5"""
        outcome = check_direct_sums((1, 5), self.spec, None)
        assert outcome.measured <= outcome.threshold


class TestHeavyChecks:
    """Test suite for the quadrature and extraction checks"""

    @pytest.mark.slow
    def test_constant_terms(self):
        """Test extracted constant terms up to level 6"""
        outcome = check_constant_terms((1, 6), QuadratureSpec(resolution=32), None)
        assert outcome.measured <= outcome.threshold

    @pytest.mark.slow
    def test_renormalization(self):
        """Test the level-one integral, the level-four pairings and R-independence"""
        outcome = check_renormalization((1, 1), QuadratureSpec(resolution=32), None)
        assert outcome.measured <= outcome.threshold
