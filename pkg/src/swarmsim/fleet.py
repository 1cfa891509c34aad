"""Fleet state and generation.

State lives in flat numpy arrays because the centralized controller ranks
the whole fleet on every dispatch; per-drone dataclass views are built on
demand for the scalar model functions and for tests. The two representations
are kept equivalent by construction: every mutation goes through this class.
"""

from __future__ import annotations

import math

import numpy as np

from .scenario import Scenario, EDGE
from .rng import RngStreams
from .core import (ALL_SENSORS, ESSENTIAL_SENSORS, DroneState, DroneStatus,
                    Position, SensorKind, TaskSpec, mask_to_sensors,
                    sensors_to_mask)

FULL_SENSOR_MASK = sensors_to_mask(ALL_SENSORS)

IDLE = int(DroneStatus.IDLE)
BUSY = int(DroneStatus.BUSY)


def generate_fleet(scenario: Scenario, streams: RngStreams) -> list[DroneState]:
    """Per-drone snapshot of a freshly generated fleet (tests and tooling)."""
    fleet = FleetState(scenario, streams)
    return [fleet.view(i) for i in range(fleet.n)]


def sample_cylinder(radius: float, altitude: float, stream) -> tuple:
    # uniform over the cylinder: sqrt for radial density, flat in angle and z
    r = radius * math.sqrt(stream.random())
    theta = 2.0 * math.pi * stream.random()
    z = altitude * stream.random()
    return (r * math.cos(theta), r * math.sin(theta), z)


class FleetState:
    def __init__(self, scenario: Scenario, streams: RngStreams):
        n = scenario.fleet_size
        p = scenario.model_params
        h = scenario.heterogeneity
        topo = streams.topology
        het = streams.heterogeneity

        self.n = n
        self.positions = np.empty((n, 3), dtype=np.float64)
        for i in range(n):
            self.positions[i] = sample_cylinder(
                scenario.arena_radius, scenario.arena_altitude, topo)

        self.capacity = float(p.battery_capacity)
        self.battery = np.full(n, self.capacity, dtype=np.float64)
        self.cpu_scale = np.ones(n, dtype=np.float64)
        self.sensor_mask = np.full(n, FULL_SENSOR_MASK, dtype=np.int64)

        if h.enabled:
            droppable = sorted(ALL_SENSORS - ESSENTIAL_SENSORS)
            scales = [c[0] for c in h.cpu_scale_choices]
            weights = [c[1] for c in h.cpu_scale_choices]
            lo, hi = h.battery_init_range
            for i in range(n):
                mask = FULL_SENSOR_MASK
                for sensor in droppable:
                    if het.random() < h.sensor_drop_prob:
                        mask &= ~sensor.bit
                self.sensor_mask[i] = mask
                self.battery[i] = self.capacity * (lo + (hi - lo) * het.random())
                self.cpu_scale[i] = het.choices(scales, weights)[0]

        self.status = np.full(n, IDLE, dtype=np.int8)
        self.connected = np.ones(n, dtype=bool)
        # when the drone last became schedulable (idle and connected)
        self.avail_since = np.zeros(n, dtype=np.float64)
        self.task_of = np.full(n, -1, dtype=np.int64)
        # bumped every assignment; stale in-flight events carry old epochs
        self.epoch = np.zeros(n, dtype=np.int64)
        self.debited = np.zeros(n, dtype=np.float64)
        self.speed = float(p.drone_speed)

    # -- views ---------------------------------------------------------------

    def position_of(self, i: int) -> Position:
        x, y, z = self.positions[i]
        return Position(float(x), float(y), float(z))

    def view(self, i: int) -> DroneState:
        status = DroneStatus.IDLE
        if not self.connected[i]:
            status = DroneStatus.DISCONNECTED
        elif self.status[i] == BUSY:
            status = DroneStatus.BUSY
        task = int(self.task_of[i])
        return DroneState(
            id=i,
            position=self.position_of(i),
            speed=self.speed,
            sensors=mask_to_sensors(int(self.sensor_mask[i])),
            battery_capacity=self.capacity,
            battery_level=float(self.battery[i]),
            cpu_scale=float(self.cpu_scale[i]),
            status=status,
            task_id=None if task < 0 else task,
            connected=bool(self.connected[i]),
        )

    # -- mutations -----------------------------------------------------------

    def mark_busy(self, i: int, task_id: int):
        if self.status[i] == BUSY:
            raise AssertionError("drone %d already busy" % i)
        self.status[i] = BUSY
        self.task_of[i] = task_id
        self.epoch[i] += 1
        return int(self.epoch[i])

    def mark_idle(self, i: int, now: float):
        self.status[i] = IDLE
        self.task_of[i] = -1
        if self.connected[i]:
            self.avail_since[i] = now

    def move_to(self, i: int, where: Position):
        self.positions[i, 0] = where.x
        self.positions[i, 1] = where.y
        self.positions[i, 2] = where.z

    def debit(self, i: int, joules: float):
        if joules > self.battery[i] + 1e-9:
            raise AssertionError(
                "battery of drone %d would go negative (%.3f > %.3f)"
                % (i, joules, self.battery[i]))
        self.battery[i] -= joules
        self.debited[i] += joules

    def set_connected(self, i: int, value: bool, now: float):
        self.connected[i] = value
        if value and self.status[i] == IDLE:
            # an idle drone only becomes schedulable again on reconnect
            self.avail_since[i] = now

    def idle_connected_count(self) -> int:
        return int(((self.status == IDLE) & self.connected).sum())

    # -- vectorized ranking ----------------------------------------------

    def select_min_cost(self, task: TaskSpec, site: str, params,
                        exclude: int = -1) -> int | None:
        """Minimum battery cost over feasible idle connected drones.

        Ties break by smaller distance, then smaller id. Float comparisons
        are exact: the scalar oracle in the tests must reproduce this
        bit for bit.
        """
        ok = (self.status == IDLE) & self.connected
        if exclude >= 0:
            ok[exclude] = False
        if not ok.any():
            return None
        required = sensors_to_mask(task.required_sensors)
        ok &= (self.sensor_mask & required) == required
        if not ok.any():
            return None

        idx = np.nonzero(ok)[0]
        delta = self.positions[idx] - np.array(
            (task.location.x, task.location.y, task.location.z))
        dist = np.sqrt((delta * delta).sum(axis=1))
        cost = dist * params.travel_energy
        if site == EDGE:
            work = params.work_for(task.kind)
            cost = cost + (work / (self.cpu_scale[idx] * params.edge_ref_speed)
                           ) * params.compute_power_edge
        feasible = cost <= self.battery[idx]
        if not feasible.any():
            return None
        idx = idx[feasible]
        cost = cost[feasible]
        dist = dist[feasible]

        best = cost.min()
        tie = cost == best
        idx, dist = idx[tie], dist[tie]
        if len(idx) > 1:
            nearest = dist == dist.min()
            idx = idx[nearest]
        return int(idx.min())
