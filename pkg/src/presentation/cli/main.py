"""
The eisenlab command line.

Reports go to stdout (or --output); diagnostics go to stderr. Exit codes:
0 on success, 2 for usage errors, 3 for numeric failures and failed
acceptance criteria.
"""

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from src.application.commands.run_config import FORMATS, RunConfig
from src.application.handlers.command_handler_service import CommandHandlerService
from src.application.services.acceptance_application_service import AcceptanceApplicationService
from src.application.services.experiment_application_service import ExperimentApplicationService
from src.domain.eisen.bessel import configure_step
from src.domain.reg.main_terms import SWEEP_TS
from src.infrastructure import settings
from src.infrastructure.parallel.executor import ParallelExecutor
from src.infrastructure.reporting.report_writer import normalize, write_report

from .exceptions import EXIT_NUMERIC, EXIT_OK, UsageError, handle_exception

logger = logging.getLogger(__name__)


class ArgumentParser(argparse.ArgumentParser):
    """argparse that raises UsageError instead of exiting."""

    def error(self, message: str) -> None:
        raise UsageError(message)


def _common_options() -> argparse.ArgumentParser:
    parent = ArgumentParser(add_help=False)
    parent.add_argument('--format', choices=FORMATS, default='json', help="Report format")
    parent.add_argument('--tol', type=float, default=settings.TOLERANCE, help="Quadrature target relative error")
    parent.add_argument('--threads', type=int, default=settings.THREADS, help="Worker threads for quadrature")
    parent.add_argument('--resolution', type=int, default=settings.QUAD_NODES,
                        help="Gauss nodes per axis on the coarsest quadrature grid")
    parent.add_argument('--output', default=None, help="Write the report here instead of stdout")
    parent.add_argument('--log-level', default=None, help="Override EISENLAB_LOG_LEVEL")
    parent.add_argument('--bessel-step', type=float, default=settings.BESSEL_STEP,
                        help="Trapezoid step of the K-Bessel integral")
    return parent


def build_parser() -> ArgumentParser:
    """The argument parser with one subcommand per experiment."""
    common = _common_options()
    parser = ArgumentParser(prog='eisenlab', description="Eisenstein series, scattering and QUE main terms on Gamma0(N)")
    commands = parser.add_subparsers(dest='command', required=True)

    cusps = commands.add_parser('cusps', parents=[common], help="Cusps of Gamma0(N) with widths")
    cusps.add_argument('N', type=int)
    cusps.add_argument('--chi', default='trivial', help="trivial, index:k or conductor:q")

    scattering = commands.add_parser('scattering', parents=[common], help="Scattering row at infinity")
    scattering.add_argument('N', type=int)
    scattering.add_argument('--chi', default='trivial')
    scattering.add_argument('--T', type=float, nargs='+', default=[1.0])

    evaluate = commands.add_parser('eval', parents=[common], help="Evaluate one series at (z, s)")
    evaluate.add_argument('series', help="level1, G, cusp:u/f or char:q1.k1,q2.k2")
    evaluate.add_argument('--z', type=float, nargs=2, required=True, metavar=('X', 'Y'))
    evaluate.add_argument('--s', type=float, nargs=2, default=None, metavar=('RE', 'IM'))
    evaluate.add_argument('--N', type=int, default=1, help="Level for cusp series")
    evaluate.add_argument('--chi', default='trivial')

    kernel = commands.add_parser('kernel', parents=[common], help="Traced regularizing kernel")
    kernel.add_argument('N', type=int)
    kernel.add_argument('--M', type=int, default=None)
    kernel.add_argument('--chi', default='trivial')
    kernel.add_argument('--T', type=float, nargs='+', default=[1.0])

    que = commands.add_parser('que', parents=[common], help="Main terms against the test-function system")
    que.add_argument('N', type=int)
    que.add_argument('--M', type=int, default=None)
    que.add_argument('--chi', default='trivial')
    que.add_argument('--T', type=float, nargs='+', default=[1.0])
    que.add_argument('--coset', default='all', help="Coset index j or 'all'")

    portion = commands.add_parser('portion', parents=[common], help="Portion construction at level M")
    portion.add_argument('M', type=int)

    suite = commands.add_parser('suite', parents=[common], help="Acceptance checks")
    suite.add_argument('--levels', type=int, nargs=2, default=[1, 12], metavar=('LOW', 'HIGH'))
    suite.add_argument('--slow', action='store_true', help="Include the quadrature-heavy checks")

    sweep = commands.add_parser('t-zero-sweep', parents=[common], help="<K, phi0>_N as T -> 0")
    sweep.add_argument('N', type=int)
    sweep.add_argument('--T', type=float, nargs='+', default=list(SWEEP_TS))
    return parser


def _coset(text: str) -> Optional[int]:
    if text == 'all':
        return None
    if not text.isdigit():
        raise UsageError(f"Coset must be an index or 'all', got {text!r}")
    return int(text)


def build_config(args: argparse.Namespace) -> RunConfig:
    """
    Translate parsed arguments into a RunConfig.

    Raises:
        ValueError: If the arguments do not describe a valid run
    """
    command = args.command
    options = dict(
        command=command,
        tolerance=args.tol,
        threads=args.threads,
        resolution=args.resolution,
        output=args.output,
        format=args.format,
    )
    if command == 'portion':
        options['sublevel'] = args.M
    elif command == 'suite':
        options['level_range'] = tuple(args.levels)
        options['include_slow'] = args.slow
    elif command == 'eval':
        options.update(level=args.N, character=args.chi, series=args.series, z=complex(*args.z),
                       s=None if args.s is None else complex(*args.s))
    else:
        options['level'] = args.N
        if command != 't-zero-sweep':
            options['character'] = args.chi
        if hasattr(args, 'T'):
            options['ts'] = tuple(args.T)
        if hasattr(args, 'M'):
            options['sublevel'] = args.M
        if command == 'que':
            options['coset'] = _coset(args.coset)
    config = RunConfig(**options)
    config.validate()
    return config


def _emit(text: str) -> None:
    sys.stdout.write(text)
    sys.stdout.flush()


def run(config: RunConfig) -> dict:
    """Execute a validated run and return its report dictionary."""
    with ParallelExecutor(config.threads) as executor:
        handler = CommandHandlerService(
            experiment_service=ExperimentApplicationService(executor),
            acceptance_service=AcceptanceApplicationService(executor),
        )
        report = handler.handle(config).to_dict()
    report['config']['environment'] = settings.effective_settings()
    return report


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point of the eisenlab console script.

    Args:
        argv: Arguments without the program name, sys.argv[1:] when None

    Returns:
        The process exit code
    """
    try:
        args = build_parser().parse_args(argv)
        settings.configure_logging(args.log_level)
        configure_step(args.bessel_step)
        config = build_config(args)
        report = run(config)
    except Exception as exc:
        code, error = handle_exception(exc)
        _emit(json.dumps(normalize(error.to_dict()), indent=2) + "\n")
        return code
    text = write_report(report, config.format, config.output)
    if config.output is None:
        _emit(text)
    if report['command'] == 'suite' and report['summary']['failed']:
        logger.error(f"{report['summary']['failed']} acceptance criteria failed")
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
