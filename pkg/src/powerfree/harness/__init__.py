from .config import RunConfig, fig1_config, ksweep_config, load_config, parse_grid
from .output import CSV_HEADER, emit_csv, emit_json, emit_plot, rows_to_csv
from .sweep import ExperimentRow, run_cell, run_sweep

__all__ = [
    "CSV_HEADER",
    "ExperimentRow",
    "RunConfig",
    "emit_csv",
    "emit_json",
    "emit_plot",
    "fig1_config",
    "ksweep_config",
    "load_config",
    "parse_grid",
    "rows_to_csv",
    "run_cell",
    "run_sweep",
]
