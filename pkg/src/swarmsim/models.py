"""Performance and power models.

Both controllers use these same functions to estimate travel time, execution
time, and battery cost, so neither side schedules with an information
advantage. All functions are pure; the engine has vectorized twins for the
hot path, and tests assert the two agree.
"""

from __future__ import annotations

from .scenario import ModelParams, EDGE, CLOUD_NATIVE, CLOUD_SERVERLESS
from .core import DroneState, DroneStatus, Position, TaskSpec, distance


def travel_time(origin: Position, dest: Position, speed: float) -> float:
    if speed <= 0:
        raise ValueError("speed must be > 0")
    return distance(origin, dest) / speed


def exec_time(task: TaskSpec, site: str, drone: DroneState, p: ModelParams,
              rng_sample: float = 0.0) -> float:
    """Seconds to execute `task` once the drone is at its location.

    Edge runs on the drone CPU, so the work scales with 1/cpu_scale.
    Cloud runs upload the payload first, then execute at the cloud speedup
    (kinds that gain nothing keep speedup 1). The serverless platform adds a
    constant multiplier. rng_sample is accepted for forward compatibility
    with noisy models and is deliberately unused.
    """
    work = p.work_for(task.kind)
    if site == EDGE:
        return work / (drone.cpu_scale * p.edge_ref_speed)
    upload = task.payload_bytes / p.uplink_bandwidth
    base = work / p.speedup_for(task.kind) + upload
    if site == CLOUD_NATIVE:
        return base
    if site == CLOUD_SERVERLESS:
        return base * p.serverless_multiplier
    raise ValueError("unknown execution site %r" % (site,))


def battery_cost(drone: DroneState, task: TaskSpec, site: str,
                 p: ModelParams) -> float:
    """Joules to move to the task and (for edge execution) run it."""
    cost = distance(drone.position, task.location) * p.travel_energy
    if site == EDGE:
        cost += exec_time(task, site, drone, p) * p.compute_power_edge
    return cost


def feasible(drone: DroneState, task: TaskSpec, site: str,
             p: ModelParams, ignore_status: bool = False) -> bool:
    """Sensor filter plus battery budget. Cost equal to the remaining level
    is feasible (the budget boundary is inclusive). Pull agents pass
    ignore_status=True because they call this only while idle."""
    if not ignore_status and drone.status != DroneStatus.IDLE:
        return False
    if not task.required_sensors <= drone.sensors:
        return False
    return battery_cost(drone, task, site, p) <= drone.battery_level
