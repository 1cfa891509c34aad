"""Model oracles.

The exact numbers here were derived by hand from the default constants
(work units, cloud speedup, uplink bandwidth, energy rates) and frozen;
any change to a default or a formula must be deliberate enough to come
back and re-derive them.
"""

import pytest
from hypothesis import given, strategies as st

from swarmsim.core import DroneStatus, Position, SensorKind, TaskKind
from swarmsim.models import battery_cost, exec_time, feasible, travel_time
from swarmsim.scenario import ModelParams
from tests.conftest import make_drone, make_task


def test_travel_time():
    assert travel_time(Position(0, 0), Position(0, 25), 2.0) == 12.5


def test_travel_time_rejects_zero_speed():
    with pytest.raises(ValueError):
        travel_time(Position(0, 0), Position(1, 0), 0.0)


def test_exec_edge_reference_drone(params):
    # 30 reference-seconds of recognition work on a full-speed drone
    task = make_task(kind=TaskKind.RECOGNIZE_PEOPLE)
    assert exec_time(task, "edge", make_drone(), params) == 30.0


def test_exec_edge_scales_with_cpu(params):
    task = make_task(kind=TaskKind.RECOGNIZE_PEOPLE)
    assert exec_time(task, "edge", make_drone(cpu=0.5), params) == 60.0


def test_exec_cloud_native_recognition(params):
    # 30 / speedup 4 + 500 kB / 2 MB/s upload
    task = make_task(kind=TaskKind.RECOGNIZE_PEOPLE)
    assert exec_time(task, "cloud_native", make_drone(), params) == 7.75


def test_exec_cloud_serverless_recognition(params):
    task = make_task(kind=TaskKind.RECOGNIZE_PEOPLE)
    assert (exec_time(task, "cloud_serverless", make_drone(), params)
            == 7.75 * 1.06)


def test_exec_cloud_speedup_override(params):
    # routing and obstacle avoidance gain nothing from the cloud
    routing = make_task(kind=TaskKind.ROUTING)
    avoid = make_task(kind=TaskKind.OBSTACLE_AVOIDANCE)
    assert exec_time(routing, "cloud_native", make_drone(), params) == 10.0005
    assert exec_time(avoid, "cloud_native", make_drone(), params) == 5.0005


def test_exec_cloud_ignores_cpu_scale(params):
    task = make_task(kind=TaskKind.RECOGNIZE_BUILDING)
    slow = exec_time(task, "cloud_native", make_drone(cpu=0.5), params)
    fast = exec_time(task, "cloud_native", make_drone(cpu=1.0), params)
    assert slow == fast


def test_exec_unknown_site(params):
    with pytest.raises(ValueError):
        exec_time(make_task(), "fog", make_drone(), params)


def test_battery_cost_cloud_travel_only(params):
    # 50 m at 40 J/m
    task = make_task(x=30.0, y=40.0)
    assert battery_cost(make_drone(), task, "cloud_native", params) == 2000.0


def test_battery_cost_edge_adds_compute(params):
    # travel 2000 J + 30 s at 2 W
    task = make_task(x=30.0, y=40.0)
    assert battery_cost(make_drone(), task, "edge", params) == 2060.0


def test_feasible_battery_boundary_inclusive(params):
    task = make_task(x=30.0, y=40.0)
    assert feasible(make_drone(battery=2060.0), task, "edge", params)
    assert not feasible(make_drone(battery=2059.99), task, "edge", params)


def test_feasible_requires_sensor(params):
    task = make_task(kind=TaskKind.RECOGNIZE_TREE)
    blind = make_drone(sensors=frozenset({SensorKind.GPS}))
    assert not feasible(blind, task, "edge", params)


def test_feasible_busy_drone(params):
    busy = make_drone(status=DroneStatus.BUSY)
    assert not feasible(busy, make_task(), "edge", params)
    assert feasible(busy, make_task(), "edge", params, ignore_status=True)


@given(st.sampled_from(list(TaskKind)), st.sampled_from([0.5, 0.75, 1.0]))
def test_serverless_ratio_constant(kind, cpu):
    p = ModelParams()
    task = make_task(kind=kind)
    drone = make_drone(cpu=cpu)
    native = exec_time(task, "cloud_native", drone, p)
    server = exec_time(task, "cloud_serverless", drone, p)
    assert server / native == pytest.approx(p.serverless_multiplier)


@given(st.floats(0, 60), st.floats(0, 60))
def test_edge_cost_monotone_in_distance(x, y):
    p = ModelParams()
    near = make_task(i=0, x=x, y=y)
    far = make_task(i=1, x=x + 5.0, y=y)
    drone = make_drone()
    assert (battery_cost(drone, near, "edge", p)
            < battery_cost(drone, far, "edge", p))
