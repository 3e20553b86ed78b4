"""``ris-secrecy`` console entry point.

Exit codes: 0 when every gate passes, 1 when a tolerance gate fails, 2 on a
configuration error.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from ris_secrecy import __version__
from ris_secrecy.cli.commands import cmd_cross_validate, cmd_sop_sweep, cmd_stats_verify
from ris_secrecy.cli.config import ConfigError, load_config
from ris_secrecy.log import logger, setup_logger
from ris_secrecy.settings import DEFAULT_JOBS

EXIT_OK = 0
EXIT_GATE_FAILED = 1
EXIT_CONFIG_ERROR = 2

COMMANDS = {
    'stats-verify': cmd_stats_verify,
    'sop-sweep': cmd_sop_sweep,
    'cross-validate': cmd_cross_validate,
}


def _u64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError(f'seed must fit in 64 unsigned bits, got {text}')
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f'--jobs must be at least 1, got {text}')
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='ris-secrecy',
                                     description='Secrecy outage probability of RIS-assisted vehicular links.')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    sub = parser.add_subparsers(dest='command', required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument('--config', required=True, help='experiment config (JSON, json5 accepted)')
        p.add_argument('--out', default=None, help='output directory (defaults to the config `output`, then ./out)')
        p.add_argument('--seed', type=_u64, default=None, help='overrides the config seed')
        p.add_argument('--jobs', type=_positive, default=DEFAULT_JOBS, help='worker threads')
        p.add_argument('--log-level', default=None, help='loguru level, e.g. INFO or DEBUG')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.log_level:
        setup_logger(args.log_level)

    try:
        cfg = load_config(args.config, overrides={'seed': args.seed})
    except ConfigError as e:
        logger.error(str(e))
        print(f'config error: {e.message}', file=sys.stderr)
        if e.exception is not None:
            print(e.exception, file=sys.stderr)
        return EXIT_CONFIG_ERROR

    out_dir = Path(args.out or cfg.output or 'out')
    try:
        report = COMMANDS[args.command](cfg, out_dir, jobs=args.jobs)
    except ConfigError as e:
        print(f'config error: {e.message}', file=sys.stderr)
        return EXIT_CONFIG_ERROR

    for gate in report.gates:
        print(f"{'PASS' if gate.passed else 'FAIL'} {gate.name}: {gate.value:.6g} (tolerance {gate.tolerance:g})")
    return EXIT_OK if report.passed else EXIT_GATE_FAILED


if __name__ == '__main__':
    sys.exit(main())
