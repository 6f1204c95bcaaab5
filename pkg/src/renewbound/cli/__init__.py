"""
The `renewbound.cli` package runs the estimation, boundary, simulation and comparison workflows
from a flat TOML configuration.
"""

from ._config import RunConfig, load_run_config, read_config_file, parse_variant, VARIANT_KEYS
from ._commands import (
    cmd_estimate,
    cmd_boundary,
    cmd_simulate,
    cmd_compare,
    cmd_psi_dump,
    COMMANDS,
    ESTIMATE_JSON,
    PAYOFF_JSON,
    COMPARISON_JSON,
    SIMULATED_PATH_CSV,
    REALIZED_CSV,
    PSI_GRID_CSV,
    SUMMARY_MD,
)
from ._main import main, build_parser, EXIT_OK, EXIT_INPUT_ERROR, EXIT_SOLVER_ERROR

__all__ = [
    "RunConfig",
    "load_run_config",
    "read_config_file",
    "parse_variant",
    "VARIANT_KEYS",
    "cmd_estimate",
    "cmd_boundary",
    "cmd_simulate",
    "cmd_compare",
    "cmd_psi_dump",
    "COMMANDS",
    "ESTIMATE_JSON",
    "PAYOFF_JSON",
    "COMPARISON_JSON",
    "SIMULATED_PATH_CSV",
    "REALIZED_CSV",
    "PSI_GRID_CSV",
    "SUMMARY_MD",
    "main",
    "build_parser",
    "EXIT_OK",
    "EXIT_INPUT_ERROR",
    "EXIT_SOLVER_ERROR",
]
