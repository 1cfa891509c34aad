"""Core domain types shared by every module.

Values here carry no behavior beyond construction, validation, and a few
pure helpers (distance, sensor requirements). Everything is deterministic
and safe to copy between runs.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field


class SensorKind(enum.IntEnum):
    # Ordinal values are part of the determinism contract: iteration and
    # bitmask encodings must never depend on hash order.
    CAMERA_PEOPLE = 0
    CAMERA_BUILDING = 1
    CAMERA_TREE = 2
    CAMERA_DRONE = 3
    RANGEFINDER = 4
    GPS = 5

    @property
    def bit(self) -> int:
        return 1 << int(self)


ALL_SENSORS = frozenset(SensorKind)

# Gps is essential: a drone that cannot position itself cannot do anything.
ESSENTIAL_SENSORS = frozenset({SensorKind.GPS})


class TaskKind(enum.IntEnum):
    ROUTING = 0
    RECOGNIZE_PEOPLE = 1
    RECOGNIZE_BUILDING = 2
    RECOGNIZE_TREE = 3
    RECOGNIZE_DRONE = 4
    OBSTACLE_AVOIDANCE = 5


# Each recognition kind needs its camera; routing needs positioning;
# obstacle avoidance needs the rangefinder.
REQUIRED_SENSORS: dict[TaskKind, frozenset[SensorKind]] = {
    TaskKind.ROUTING: frozenset({SensorKind.GPS}),
    TaskKind.RECOGNIZE_PEOPLE: frozenset({SensorKind.CAMERA_PEOPLE}),
    TaskKind.RECOGNIZE_BUILDING: frozenset({SensorKind.CAMERA_BUILDING}),
    TaskKind.RECOGNIZE_TREE: frozenset({SensorKind.CAMERA_TREE}),
    TaskKind.RECOGNIZE_DRONE: frozenset({SensorKind.CAMERA_DRONE}),
    TaskKind.OBSTACLE_AVOIDANCE: frozenset({SensorKind.RANGEFINDER}),
}

RECOGNITION_KINDS = frozenset({
    TaskKind.RECOGNIZE_PEOPLE,
    TaskKind.RECOGNIZE_BUILDING,
    TaskKind.RECOGNIZE_TREE,
    TaskKind.RECOGNIZE_DRONE,
})


def sensors_to_mask(sensors) -> int:
    mask = 0
    for s in sensors:
        mask |= SensorKind(s).bit
    return mask


def mask_to_sensors(mask: int) -> frozenset[SensorKind]:
    return frozenset(s for s in SensorKind if mask & s.bit)


@dataclass(frozen=True)
class Position:
    """A point in the arena. z is altitude and must be nonnegative."""

    x: float
    y: float
    z: float = 0.0

    def __post_init__(self):
        for v in (self.x, self.y, self.z):
            if not math.isfinite(v):
                raise ValueError("position coordinates must be finite")
        if self.z < 0:
            raise ValueError("altitude must be >= 0")


def distance(a: Position, b: Position) -> float:
    """Euclidean distance in meters."""
    return math.sqrt((a.x - b.x) ** 2 + (a.y - b.y) ** 2 + (a.z - b.z) ** 2)


class DroneStatus(enum.IntEnum):
    IDLE = 0
    BUSY = 1
    DISCONNECTED = 2


@dataclass
class DroneState:
    """Snapshot of one drone. The engine keeps fleet state in arrays; this
    view exists for the scalar model functions and for tests."""

    id: int
    position: Position
    speed: float
    sensors: frozenset[SensorKind]
    battery_capacity: float
    battery_level: float
    cpu_scale: float
    status: DroneStatus = DroneStatus.IDLE
    task_id: int | None = None
    connected: bool = True


@dataclass(frozen=True)
class TaskSpec:
    """One unit of work. id doubles as the FIFO arrival sequence number."""

    id: int
    kind: TaskKind
    location: Position
    required_sensors: frozenset[SensorKind]
    compute_work: float
    payload_bytes: int
    arrival_time: float
    parent_task: int | None = None


class TaskState(enum.IntEnum):
    PENDING = 0
    CLAIMED = 1
    EXECUTING = 2
    COMPLETED = 3
    INCOMPLETE = 4


# Legal lifecycle moves. Requeue (Claimed/Executing -> Pending) exists for
# the centralized controller; Incomplete is terminal bookkeeping.
LEGAL_TRANSITIONS = frozenset({
    (TaskState.PENDING, TaskState.CLAIMED),
    (TaskState.CLAIMED, TaskState.EXECUTING),
    (TaskState.EXECUTING, TaskState.COMPLETED),
    (TaskState.CLAIMED, TaskState.PENDING),
    (TaskState.EXECUTING, TaskState.PENDING),
    (TaskState.PENDING, TaskState.INCOMPLETE),
    (TaskState.CLAIMED, TaskState.INCOMPLETE),
    (TaskState.EXECUTING, TaskState.INCOMPLETE),
})


@dataclass
class TaskStatus:
    """Mutable lifecycle record kept by the pool.

    version is the optimistic-concurrency token: it increments on every
    transition, so a claim carrying a stale version always loses.
    """

    state: TaskState = TaskState.PENDING
    drone_id: int | None = None
    since: float = 0.0
    version: int = 0
    reschedule_count: int = 0
    incomplete_reason: str | None = None
