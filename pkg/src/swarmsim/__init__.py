"""Deterministic discrete-event simulator for swarm task coordination.

Compares a centralized push scheduler against a distributed pull protocol
over the same fleet, workload, network, and failure models.
"""

from .core import (DroneState, DroneStatus, Position, SensorKind, TaskKind,
                   TaskSpec, TaskState, distance)
from .engine import RunResult, Simulation, run
from .metrics import (MetricsReport, TaskRecord, bimodality_fraction,
                      export_cdf, export_violin, percentile, summary_lines,
                      write_task_csv)
from .scenario import (CENTRALIZED, CLOUD_NATIVE, CLOUD_SERVERLESS,
                       DISTRIBUTED, EDGE, FailureConfig, HeterogeneityConfig,
                       ModelParams, NetworkConfig, Scenario, ScenarioError,
                       WorkloadConfig, scenario_from_dict, scenario_to_dict,
                       validate_scenario)

__version__ = "0.1.0"

__all__ = [
    "CENTRALIZED", "CLOUD_NATIVE", "CLOUD_SERVERLESS", "DISTRIBUTED", "EDGE",
    "DroneState", "DroneStatus", "FailureConfig", "HeterogeneityConfig",
    "MetricsReport", "ModelParams", "NetworkConfig", "Position", "RunResult",
    "Scenario", "ScenarioError", "SensorKind", "Simulation", "TaskKind",
    "TaskRecord", "TaskSpec", "TaskState", "WorkloadConfig",
    "bimodality_fraction", "distance", "export_cdf", "export_violin",
    "percentile", "run", "scenario_from_dict", "scenario_to_dict",
    "summary_lines", "validate_scenario", "write_task_csv",
]
