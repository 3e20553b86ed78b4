from ris_secrecy.cli.commands import cmd_cross_validate, cmd_sop_sweep, cmd_stats_verify, run_sweep
from ris_secrecy.cli.config import ConfigError, ExperimentConfig, GateTolerances, GeometryConfig, load_config, parse_config
from ris_secrecy.cli.report import Gate, Report, SweepRow, read_report, read_sweep_csv, write_report, write_sweep_csv

__all__ = [
    'cmd_stats_verify',
    'cmd_sop_sweep',
    'cmd_cross_validate',
    'run_sweep',
    'ConfigError',
    'ExperimentConfig',
    'GateTolerances',
    'GeometryConfig',
    'load_config',
    'parse_config',
    'Gate',
    'Report',
    'SweepRow',
    'read_report',
    'read_sweep_csv',
    'write_report',
    'write_sweep_csv',
]
