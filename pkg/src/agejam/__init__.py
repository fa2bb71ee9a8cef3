"""agejam: peak age of information under reactive jamming with decoys.

Closed-form link/queueing analysis and a seeded Monte Carlo simulator that
cross-validate each other, plus sweep tooling for the standard evaluation
figures.
"""

from .adversary import (
    JammerConfig,
    JammerState,
    decide_and_spend,
    jam_power,
    realized_average_power,
)
from .aoi import (
    AnalyticResult,
    StabilityError,
    TrafficConfig,
    closed_loop_paoi,
    mg1_sojourn,
    optimal_lambda_md1,
    paoi_jit,
    paoi_md1,
    paoi_md1_derivative,
)
from .channel import (
    ChannelConfig,
    PowerConfig,
    outage_probability,
    sample_fading,
    sinr_cdf,
    snr_cdf,
)
from .detection import (
    DetectorTable,
    EnergyDetector,
    RocPair,
    TableDetector,
    energy_detector_roc,
    jam_trigger_probability_real,
    prob_jammer_declares_busy,
    prob_jammer_declares_idle,
    roc_from_detector,
    table_detector_lookup,
)
from .scenario import Scenario, ScenarioError, load_scenario, scenario_from_dict
from .simulate import (
    AoiStats,
    AoiTracker,
    CompareReport,
    compare_with_analytic,
    record_delivery,
    run,
    run_trace,
)
from .sweeps import RECIPES, ResultRow, SweepSpec, emit, recipe, run_sweep

__version__ = "0.1.0"

__all__ = [
    "AnalyticResult",
    "AoiStats",
    "AoiTracker",
    "ChannelConfig",
    "CompareReport",
    "DetectorTable",
    "EnergyDetector",
    "JammerConfig",
    "JammerState",
    "PowerConfig",
    "RECIPES",
    "ResultRow",
    "RocPair",
    "Scenario",
    "ScenarioError",
    "StabilityError",
    "SweepSpec",
    "TableDetector",
    "TrafficConfig",
    "closed_loop_paoi",
    "compare_with_analytic",
    "decide_and_spend",
    "emit",
    "energy_detector_roc",
    "jam_power",
    "jam_trigger_probability_real",
    "load_scenario",
    "mg1_sojourn",
    "optimal_lambda_md1",
    "outage_probability",
    "paoi_jit",
    "paoi_md1",
    "paoi_md1_derivative",
    "prob_jammer_declares_busy",
    "prob_jammer_declares_idle",
    "realized_average_power",
    "record_delivery",
    "recipe",
    "roc_from_detector",
    "run",
    "run_sweep",
    "run_trace",
    "sample_fading",
    "scenario_from_dict",
    "sinr_cdf",
    "snr_cdf",
    "table_detector_lookup",
]
