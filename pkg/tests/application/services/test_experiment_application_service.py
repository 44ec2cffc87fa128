"""Tests for ExperimentApplicationService"""

import pytest

from src.application.commands.run_config import RunConfig
from src.application.services.experiment_application_service import ExperimentApplicationService


class TestExperimentApplicationService:
    """Test suite for kernel, QUE, sweep and portion reports"""

    def setup_method(self):
        """Set up test fixtures"""
        self.service = ExperimentApplicationService()

    def test_quadrature_spec(self):
        """Test that the quadrature settings follow the run"""
        spec = ExperimentApplicationService.quadrature_spec(RunConfig('que', level=5, resolution=32, tolerance=1e-5))
        assert spec.resolution == 32
        assert spec.target_rel_error == 1e-5

    def test_kernel_report_rows(self):
        """Test one kernel row per T at prime level"""
        report = self.service.kernel_report(RunConfig('kernel', level=5, ts=(1.0, 2.0)))
        assert [row['T'] for row in report.rows] == [1.0, 2.0]
        assert len(report.summary['traced_forms']) == 2
        for row in report.rows:
            assert row['fitted_constant'] > 0
            assert row['twisted_residual'] == 0.0

    def test_kernel_report_sublevel(self):
        """Test that M defaults to 1 and divides N when given"""
        report = self.service.kernel_report(RunConfig('kernel', level=6, sublevel=2))
        assert report.to_dict()['config']['M'] == 2

    def test_portion_small_level_empty(self):
        """Test that S is empty when sqrt(M)/20 < 1"""
        report = self.service.portion_report(RunConfig('portion', sublevel=100))
        assert report.rows == []
        assert report.summary['count'] == 0
        assert 'pairs' not in report.summary

    def test_coset_out_of_range(self):
        """Test that the coset index must name a translate of D"""
        with pytest.raises(ValueError, match="out of range"):
            self.service.que_report(RunConfig('que', level=6, sublevel=2, coset=3))

    def test_sweep_needs_two_points(self):
        """Test that one T cannot be extrapolated"""
        with pytest.raises(ValueError):
            self.service.t_zero_sweep_report(RunConfig('t-zero-sweep', level=7, ts=(0.1,)))

    @pytest.mark.slow
    def test_que_report_single_coset(self):
        """Test the residual of the main-term comparison on one coset at prime level"""
        config = RunConfig('que', level=5, coset=0, resolution=32, tolerance=1e-8)
        report = self.service.que_report(config)
        assert report.summary['cosets'] == 1
        row = report.rows[0]
        assert abs(row['residual']) <= 1e-3 * abs(row['lhs'])
