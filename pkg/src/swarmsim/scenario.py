"""Experiment configuration: the Scenario tree, defaults, validation, and a
strict dict round-trip used by the JSON file format.

Unknown keys are a hard error everywhere. That catches typos during
calibration work, where a silently ignored knob wastes hours.
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict

from .core import TaskKind


CENTRALIZED = "centralized"
DISTRIBUTED = "distributed"
MODES = (CENTRALIZED, DISTRIBUTED)

EDGE = "edge"
CLOUD_NATIVE = "cloud_native"
CLOUD_SERVERLESS = "cloud_serverless"
SITES = (EDGE, CLOUD_NATIVE, CLOUD_SERVERLESS)


@dataclass
class HeterogeneityConfig:
    enabled: bool = False
    # probability that a drone loses any one non-essential sensor
    sensor_drop_prob: float = 0.3
    # initial charge drawn uniformly from this fraction of capacity
    battery_init_range: tuple[float, float] = (0.4, 1.0)
    # (scale, weight) pairs; weights need not sum to 1
    cpu_scale_choices: tuple[tuple[float, float], ...] = (
        (0.5, 1.0),
        (0.75, 1.0),
        (1.0, 1.0),
    )


@dataclass
class FailureConfig:
    enabled: bool = False
    # a wave fires every `interval` seconds and takes `fraction` of the
    # currently connected fleet offline for `outage_duration` seconds
    interval: float = 25.0
    fraction: float = 0.10
    outage_duration: float = 130.0
    # per disconnect event: the drone never comes back
    permanent_prob: float = 0.02
    # centralized controller requeues a claimed task after this long
    detect_timeout: float = 2.5


@dataclass
class WorkloadConfig:
    # pending tasks are topped up to this count; None means 2 * fleet_size
    backlog_target: int | None = None
    include_tree_recognition: bool = False
    obstacle_prob: float = 0.3
    generator_interval: float = 1.0

    def kind_mix(self) -> list[TaskKind]:
        mix = [
            TaskKind.ROUTING,
            TaskKind.RECOGNIZE_PEOPLE,
            TaskKind.RECOGNIZE_BUILDING,
            TaskKind.RECOGNIZE_DRONE,
        ]
        if self.include_tree_recognition:
            mix.insert(3, TaskKind.RECOGNIZE_TREE)
        return mix


@dataclass
class NetworkConfig:
    rtt_median: float = 0.012
    rtt_sigma: float = 0.5


@dataclass
class ModelParams:
    drone_speed: float = 2.0            # m/s
    travel_energy: float = 40.0         # J/m
    compute_power_edge: float = 2.0     # W while executing locally
    edge_ref_speed: float = 1.0
    cloud_speedup: float = 4.0
    serverless_multiplier: float = 1.06
    uplink_bandwidth: float = 2_000_000.0   # bytes/s
    scan_cost_per_drone: float = 20e-6      # controller state scan, s/drone
    kind_work: dict[str, float] = field(default_factory=lambda: {
        "ROUTING": 10.0,
        "RECOGNIZE_PEOPLE": 30.0,
        "RECOGNIZE_BUILDING": 30.0,
        "RECOGNIZE_TREE": 30.0,
        "RECOGNIZE_DRONE": 30.0,
        "OBSTACLE_AVOIDANCE": 5.0,
    })
    # kinds that gain nothing from cloud hardware
    kind_cloud_speedup_override: dict[str, float] = field(default_factory=lambda: {
        "ROUTING": 1.0,
        "OBSTACLE_AVOIDANCE": 1.0,
    })
    payload_bytes_by_kind: dict[str, int] = field(default_factory=lambda: {
        "ROUTING": 1_000,
        "RECOGNIZE_PEOPLE": 500_000,
        "RECOGNIZE_BUILDING": 500_000,
        "RECOGNIZE_TREE": 500_000,
        "RECOGNIZE_DRONE": 500_000,
        "OBSTACLE_AVOIDANCE": 1_000,
    })
    battery_capacity: float = 4_000_000.0   # J

    def work_for(self, kind: TaskKind) -> float:
        return self.kind_work[kind.name]

    def payload_for(self, kind: TaskKind) -> int:
        return self.payload_bytes_by_kind[kind.name]

    def speedup_for(self, kind: TaskKind) -> float:
        return self.kind_cloud_speedup_override.get(kind.name, self.cloud_speedup)


@dataclass
class Scenario:
    fleet_size: int
    arena_radius: float = 150.0
    arena_altitude: float = 20.0
    controller_mode: str = CENTRALIZED
    scheduler_agents: int = 1
    net_latency_multiplier: float = 1.0
    execution_site: str = CLOUD_NATIVE
    duration: float = 600.0
    seed: int = 42
    snapshot_limit: int = 64        # pull-mode pool prefix per fetch
    backoff_interval: float = 0.5   # pull-mode wait after an empty fetch
    heterogeneity: HeterogeneityConfig = field(default_factory=HeterogeneityConfig)
    failures: FailureConfig = field(default_factory=FailureConfig)
    workload: WorkloadConfig = field(default_factory=WorkloadConfig)
    network: NetworkConfig = field(default_factory=NetworkConfig)
    model_params: ModelParams = field(default_factory=ModelParams)

    def backlog_target(self) -> int:
        if self.workload.backlog_target is not None:
            return self.workload.backlog_target
        return 2 * self.fleet_size


def validate_scenario(s: Scenario) -> list[str]:
    """Return a list of human-readable violations; empty means valid."""
    v = []

    def check(ok, msg):
        if not ok:
            v.append(msg)

    check(isinstance(s.fleet_size, int) and s.fleet_size >= 1,
          "fleet_size: must be an integer >= 1")
    check(s.arena_radius > 0, "arena_radius: must be > 0")
    check(s.arena_altitude >= 0, "arena_altitude: must be >= 0")
    check(s.controller_mode in MODES,
          "controller_mode: must be one of %s" % (MODES,))
    check(isinstance(s.scheduler_agents, int) and s.scheduler_agents >= 1,
          "scheduler_agents: must be an integer >= 1")
    check(0 < s.net_latency_multiplier <= 1.0,
          "net_latency_multiplier: must be in (0, 1]")
    check(s.execution_site in SITES,
          "execution_site: must be one of %s" % (SITES,))
    check(s.duration >= 0, "duration: must be >= 0")
    check(isinstance(s.seed, int), "seed: must be an integer")
    check(s.snapshot_limit >= 1, "snapshot_limit: must be >= 1")
    check(s.backoff_interval > 0, "backoff_interval: must be > 0")

    h = s.heterogeneity
    check(0 <= h.sensor_drop_prob <= 1,
          "heterogeneity.sensor_drop_prob: must be in [0, 1]")
    lo, hi = h.battery_init_range
    check(0 <= lo <= hi <= 1,
          "heterogeneity.battery_init_range: need 0 <= lo <= hi <= 1")
    check(len(h.cpu_scale_choices) > 0,
          "heterogeneity.cpu_scale_choices: must not be empty")
    for scale, weight in h.cpu_scale_choices:
        check(0 < scale <= 1,
              "heterogeneity.cpu_scale_choices: scales must be in (0, 1]")
        check(weight > 0,
              "heterogeneity.cpu_scale_choices: weights must be > 0")

    f = s.failures
    check(f.interval > 0, "failures.interval: must be > 0")
    check(0 <= f.fraction <= 1, "failures.fraction: must be in [0, 1]")
    check(f.outage_duration > 0, "failures.outage_duration: must be > 0")
    check(0 <= f.permanent_prob <= 1,
          "failures.permanent_prob: must be in [0, 1]")
    check(f.detect_timeout > 0, "failures.detect_timeout: must be > 0")

    w = s.workload
    if w.backlog_target is not None:
        check(w.backlog_target >= s.fleet_size,
              "workload.backlog_target: must be >= fleet_size")
    check(0 <= w.obstacle_prob <= 1,
          "workload.obstacle_prob: must be in [0, 1]")
    check(w.generator_interval > 0,
          "workload.generator_interval: must be > 0")

    n = s.network
    check(n.rtt_median > 0, "network.rtt_median: must be > 0")
    check(n.rtt_sigma >= 0, "network.rtt_sigma: must be >= 0")

    p = s.model_params
    for name in ("drone_speed", "travel_energy", "compute_power_edge",
                 "edge_ref_speed", "cloud_speedup", "uplink_bandwidth",
                 "scan_cost_per_drone", "battery_capacity"):
        check(getattr(p, name) > 0, "model_params.%s: must be > 0" % name)
    check(p.serverless_multiplier >= 1,
          "model_params.serverless_multiplier: must be >= 1")
    for kind in TaskKind:
        check(p.kind_work.get(kind.name, 0) > 0,
              "model_params.kind_work[%s]: must be > 0" % kind.name)
        check(p.payload_bytes_by_kind.get(kind.name, 0) > 0,
              "model_params.payload_bytes_by_kind[%s]: must be > 0" % kind.name)

    return v


class ScenarioError(ValueError):
    """Raised for malformed scenario documents."""


def _take(doc: dict, source: str, allowed: dict):
    """Pop known keys from doc; error on anything left over."""
    if not isinstance(doc, dict):
        raise ScenarioError("%s: expected an object" % source)
    out = {}
    for key in list(doc):
        if key not in allowed:
            raise ScenarioError("%s: unknown field %r" % (source, key))
        out[key] = doc.pop(key)
    return out


def _number(value, source, integral=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError("%s: expected a number, got %r" % (source, value))
    if integral:
        if isinstance(value, float):
            raise ScenarioError("%s: expected an integer" % source)
        return int(value)
    return float(value)


def scenario_from_dict(doc: dict) -> Scenario:
    """Build a Scenario from a plain dict (the JSON file format).

    Every field is optional except fleet_size. Unknown keys raise.
    """
    doc = dict(doc)
    top = _take(doc, "scenario", {
        "fleet_size": 1, "arena_radius": 1, "arena_altitude": 1,
        "controller_mode": 1, "scheduler_agents": 1,
        "net_latency_multiplier": 1, "execution_site": 1, "duration": 1,
        "seed": 1, "snapshot_limit": 1, "backoff_interval": 1,
        "heterogeneity": 1, "failures": 1, "workload": 1, "network": 1,
        "model_params": 1,
    })
    if "fleet_size" not in top:
        raise ScenarioError("scenario: missing required field 'fleet_size'")

    s = Scenario(fleet_size=_number(top["fleet_size"], "fleet_size", integral=True))
    for name, integral in (("arena_radius", False), ("arena_altitude", False),
                           ("scheduler_agents", True),
                           ("net_latency_multiplier", False),
                           ("duration", False), ("seed", True),
                           ("snapshot_limit", True), ("backoff_interval", False)):
        if name in top:
            setattr(s, name, _number(top[name], name, integral=integral))
    for name in ("controller_mode", "execution_site"):
        if name in top:
            value = top[name]
            if not isinstance(value, str):
                raise ScenarioError("%s: expected a string" % name)
            setattr(s, name, value)

    if "heterogeneity" in top:
        h = _take(top["heterogeneity"], "heterogeneity", {
            "enabled": 1, "sensor_drop_prob": 1, "battery_init_range": 1,
            "cpu_scale_choices": 1})
        if "enabled" in h:
            s.heterogeneity.enabled = bool(h["enabled"])
        if "sensor_drop_prob" in h:
            s.heterogeneity.sensor_drop_prob = _number(
                h["sensor_drop_prob"], "heterogeneity.sensor_drop_prob")
        if "battery_init_range" in h:
            rng = h["battery_init_range"]
            if not isinstance(rng, (list, tuple)) or len(rng) != 2:
                raise ScenarioError(
                    "heterogeneity.battery_init_range: expected [lo, hi]")
            s.heterogeneity.battery_init_range = (
                _number(rng[0], "battery_init_range.lo"),
                _number(rng[1], "battery_init_range.hi"))
        if "cpu_scale_choices" in h:
            choices = h["cpu_scale_choices"]
            if not isinstance(choices, (list, tuple)):
                raise ScenarioError(
                    "heterogeneity.cpu_scale_choices: expected a list of "
                    "[scale, weight] pairs")
            parsed = []
            for item in choices:
                if not isinstance(item, (list, tuple)) or len(item) != 2:
                    raise ScenarioError(
                        "heterogeneity.cpu_scale_choices: expected "
                        "[scale, weight] pairs")
                parsed.append((_number(item[0], "cpu_scale_choices.scale"),
                               _number(item[1], "cpu_scale_choices.weight")))
            s.heterogeneity.cpu_scale_choices = tuple(parsed)

    if "failures" in top:
        f = _take(top["failures"], "failures", {
            "enabled": 1, "interval": 1, "fraction": 1, "outage_duration": 1,
            "permanent_prob": 1, "detect_timeout": 1})
        if "enabled" in f:
            s.failures.enabled = bool(f["enabled"])
        for name in ("interval", "fraction", "outage_duration",
                     "permanent_prob", "detect_timeout"):
            if name in f:
                setattr(s.failures, name, _number(f[name], "failures." + name))

    if "workload" in top:
        w = _take(top["workload"], "workload", {
            "backlog_target": 1, "include_tree_recognition": 1,
            "obstacle_prob": 1, "generator_interval": 1})
        if "backlog_target" in w and w["backlog_target"] is not None:
            s.workload.backlog_target = _number(
                w["backlog_target"], "workload.backlog_target", integral=True)
        if "include_tree_recognition" in w:
            s.workload.include_tree_recognition = bool(
                w["include_tree_recognition"])
        for name in ("obstacle_prob", "generator_interval"):
            if name in w:
                setattr(s.workload, name, _number(w[name], "workload." + name))

    if "network" in top:
        n = _take(top["network"], "network", {"rtt_median": 1, "rtt_sigma": 1})
        for name in ("rtt_median", "rtt_sigma"):
            if name in n:
                setattr(s.network, name, _number(n[name], "network." + name))

    if "model_params" in top:
        p = _take(top["model_params"], "model_params", {
            "drone_speed": 1, "travel_energy": 1, "compute_power_edge": 1,
            "edge_ref_speed": 1, "cloud_speedup": 1, "serverless_multiplier": 1,
            "uplink_bandwidth": 1, "scan_cost_per_drone": 1, "kind_work": 1,
            "kind_cloud_speedup_override": 1, "payload_bytes_by_kind": 1,
            "battery_capacity": 1})
        for name in ("drone_speed", "travel_energy", "compute_power_edge",
                     "edge_ref_speed", "cloud_speedup", "serverless_multiplier",
                     "uplink_bandwidth", "scan_cost_per_drone",
                     "battery_capacity"):
            if name in p:
                setattr(s.model_params, name,
                        _number(p[name], "model_params." + name))
        for name in ("kind_work", "kind_cloud_speedup_override",
                     "payload_bytes_by_kind"):
            if name in p:
                table = p[name]
                if not isinstance(table, dict):
                    raise ScenarioError(
                        "model_params.%s: expected an object" % name)
                valid = {k.name for k in TaskKind}
                for key, value in table.items():
                    if key not in valid:
                        raise ScenarioError(
                            "model_params.%s: unknown task kind %r"
                            % (name, key))
                    getattr(s.model_params, name)[key] = _number(
                        value, "model_params.%s[%s]" % (name, key))

    return s


def scenario_to_dict(s: Scenario) -> dict:
    """Inverse of scenario_from_dict (up to list/tuple spelling)."""
    doc = asdict(s)
    doc["heterogeneity"]["battery_init_range"] = list(
        s.heterogeneity.battery_init_range)
    doc["heterogeneity"]["cpu_scale_choices"] = [
        list(pair) for pair in s.heterogeneity.cpu_scale_choices]
    return doc
