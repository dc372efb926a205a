from .config import load_config, merge, parse_config
from .ingest import ingest_csv
from .svgplot import emit_plot
from .sweep import SweepConfig, SweepResult, run_sweep, train_test_eval

__all__ = [
    "load_config",
    "merge",
    "parse_config",
    "ingest_csv",
    "emit_plot",
    "SweepConfig",
    "SweepResult",
    "run_sweep",
    "train_test_eval",
]
