"""Quadrotor attitude-control simulation lab."""

import json as _json

from ._core import (
    BatchTrainResult,
    ConfigError,
    DnacController,
    InputError,
    arc_length,
    default_scenario,
    smooth_l1,
)
from ._core import run_scenario as _run_scenario_raw

__all__ = [
    "BatchTrainResult",
    "ConfigError",
    "DnacController",
    "InputError",
    "arc_length",
    "default_scenario",
    "run",
    "smooth_l1",
]


def run(config):
    """Run one scenario.

    `config` is a scenario dict or json string. Returns (metrics dict,
    trace csv string).
    """
    if isinstance(config, dict):
        config = _json.dumps(config)
    metrics_json, trace_csv = _run_scenario_raw(config)
    return _json.loads(metrics_json), trace_csv
