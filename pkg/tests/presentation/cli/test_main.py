"""Tests for the eisenlab command line"""

import json

import pytest

import src.presentation.cli.main as cli_main
from src.application.dtos.report_dto import SCHEMA
from src.application.services.acceptance_application_service import AcceptanceApplicationService, Criterion, Outcome
from src.domain.shared.errors import AccuracyError, DomainError, PoleError
from src.presentation.cli.exceptions import EXIT_NUMERIC, EXIT_USAGE, UsageError, exit_code_for, handle_exception
from src.presentation.cli.main import build_config, build_parser, main


class TestMain:
    """Test suite for the console entry point"""

    def test_cusps_report(self, capsys):
        """Test a successful run writing JSON to stdout"""
        assert main(['cusps', '12']) == 0
        report = json.loads(capsys.readouterr().out)
        assert report['schema'] == SCHEMA
        assert report['summary']['count'] == 6
        assert report['config']['environment']['quad_nodes'] >= 16

    def test_identical_runs_identical_output(self, capsys):
        """Test that a repeated run gives the same bytes"""
        main(['scattering', '6', '--T', '1', '2'])
        first = capsys.readouterr().out
        main(['scattering', '6', '--T', '1', '2'])
        assert capsys.readouterr().out == first

    def test_csv_output_file(self, tmp_path, capsys):
        """Test that --output writes the file and keeps stdout empty"""
        target = tmp_path / "cusps.csv"
        assert main(['cusps', '6', '--format', 'csv', '--output', str(target)]) == 0
        assert capsys.readouterr().out == ""
        assert target.read_text(encoding='utf-8').splitlines()[0] == "cusp,u,f,width,singular,atkin_lehner"

    def test_usage_error(self, capsys):
        """Test that a missing argument exits with 2 and a JSON error"""
        assert main(['cusps']) == EXIT_USAGE
        error = json.loads(capsys.readouterr().out)
        assert error['type'] == 'UsageError'

    def test_invalid_run(self, capsys):
        """Test that M not dividing N is a usage error"""
        assert main(['kernel', '12', '--M', '5']) == EXIT_USAGE
        assert "must divide" in json.loads(capsys.readouterr().out)['error']

    def test_domain_error(self, capsys):
        """Test that a rejected character exits with 3"""
        assert main(['cusps', '4', '--chi', 'weird']) == EXIT_NUMERIC
        error = json.loads(capsys.readouterr().out)
        assert error['type'] == 'DomainError'
        assert error['details']['operation'] == 'select_character'

    def test_eval_g(self, capsys):
        """Test evaluating G without s"""
        assert main(['eval', 'G', '--z', '0.1', '1.1']) == 0
        assert 're' in json.loads(capsys.readouterr().out)['summary']

    def test_failed_suite_exit_code(self, capsys, monkeypatch):
        """Test that a failed acceptance criterion exits with 3"""
        failing = (Criterion(1, 'failing', False, lambda *args: Outcome(1.0, 0.0)),)
        monkeypatch.setattr(cli_main, 'AcceptanceApplicationService',
                            lambda mapper: AcceptanceApplicationService(mapper, failing))
        assert main(['suite', '--levels', '1', '2']) == EXIT_NUMERIC
        assert json.loads(capsys.readouterr().out)['summary']['failed'] == 1


class TestBuildConfig:
    """Test suite for argument translation"""

    def setup_method(self):
        """Set up test fixtures"""
        self.parser = build_parser()

    def test_que_coset(self):
        """Test that the coset is an index or 'all'"""
        config = build_config(self.parser.parse_args(['que', '6', '--M', '2', '--coset', '1']))
        assert (config.level, config.sublevel, config.coset) == (6, 2, 1)
        assert build_config(self.parser.parse_args(['que', '6'])).coset is None
        with pytest.raises(UsageError):
            build_config(self.parser.parse_args(['que', '6', '--coset', 'first']))

    def test_eval_points(self):
        """Test that z and s become complex numbers"""
        args = self.parser.parse_args(['eval', 'level1', '--z', '0.2', '1.5', '--s', '2', '0.5'])
        config = build_config(args)
        assert config.z == 0.2 + 1.5j
        assert config.s == 2 + 0.5j

    def test_portion_level(self):
        """Test that the portion level is M"""
        assert build_config(self.parser.parse_args(['portion', '1000000'])).sublevel == 10 ** 6

    def test_sweep_default_ts(self):
        """Test that the sweep defaults to several decreasing T"""
        ts = build_config(self.parser.parse_args(['t-zero-sweep', '7'])).ts
        assert len(ts) >= 2
        assert list(ts) == sorted(ts, reverse=True)

    def test_suite_options(self):
        """Test the suite range and slow flag"""
        config = build_config(self.parser.parse_args(['suite', '--levels', '2', '5', '--slow']))
        assert config.level_range == (2, 5)
        assert config.include_slow


class TestExitCodes:
    """Test suite for exception mapping"""

    @pytest.mark.parametrize("exc,code", [
        (DomainError("bad"), EXIT_NUMERIC),
        (PoleError("pole", factor="zeta", s=1), EXIT_NUMERIC),
        (AccuracyError("slow", estimate=1.0, tolerance=1e-6), EXIT_NUMERIC),
        (ZeroDivisionError(), EXIT_NUMERIC),
        (UsageError("flag"), EXIT_USAGE),
        (ValueError("bad value"), EXIT_USAGE),
        (RuntimeError("boom"), EXIT_NUMERIC),
    ])
    def test_exit_code_for(self, exc, code):
        """Test the exit code of each failure kind"""
        assert exit_code_for(exc) == code

    def test_handle_exception(self):
        """Test that the error object carries the structured context"""
        code, error = handle_exception(DomainError("odd character", operation="is_singular", chi=3))
        assert code == EXIT_NUMERIC
        assert error.to_dict()['details'] == {'operation': 'is_singular', 'chi': '3'}
