"""Verification harness: configs, frozen constants, the suite and the CLI."""

from .config import ConfigError, ExperimentConfig, load_config, parse_params
from .constants import ConstantsFile, load_constants
from .runner import calibrate, execute, summary_csv, write_report
from .suite import SUITE, run_check, run_suite

__all__ = ["ConfigError", "ExperimentConfig", "load_config", "parse_params", "ConstantsFile",
           "load_constants", "calibrate", "execute", "summary_csv", "write_report", "SUITE",
           "run_check", "run_suite"]
