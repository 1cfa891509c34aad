"""Simulation engine.

Wires the event kernel to the fleet, pool, workload, network and failure
machinery, and owns everything the two controllers share: message delivery
with disconnect deferral, mission execution (travel, execute, report),
pause/resume bookkeeping across outages, and end-of-run accounting.

Message rules, which both controllers rely on:
  - cloud -> drone: latency is chosen by the sender; connectivity is checked
    at arrival. Messages for an offline drone wait at its radio and are
    handed over on reconnect, in order; messages for a permanently lost
    drone are dropped.
  - drone -> cloud: a disconnected drone cannot transmit, so the send is
    deferred and re-timed (fresh RTT) at reconnect. Once transmitted, a
    message is always delivered.

Missions are pure engine mechanics: controllers decide who does what, the
engine flies the drone, runs the task, debits the battery, and reports back.
A per-drone token versions the in-flight timer events, so pausing or voiding
a mission is one counter bump instead of heap surgery.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import TaskSpec, TaskState, distance
from .failures import FailureInjector
from .fleet import FleetState
from .kernel import EventKind, EventQueue, SimEvent
from .metrics import MetricsReport, TaskRecord
from .models import exec_time, travel_time
from .network import NetworkModel
from .rng import RngStreams
from .scenario import (CENTRALIZED, EDGE, Scenario, ScenarioError,
                       validate_scenario)
from .sched_central import CentralController
from .sched_dist import DistributedController
from .taskpool import TaskPool
from .workload import WorkloadGenerator

TO_DRONE = "to_drone"
TO_CLOUD = "to_cloud"
REPORT = "report"      # completion reports are engine traffic, not controller

TRAVEL = "travel"
EXEC = "exec"

RUN_END = "run end"
IN_FLIGHT = "in flight at run end"
HOLDER_LOST = "holder lost"


def _clean(value):
    if isinstance(value, TaskSpec):
        return ("task", value.id)
    if isinstance(value, tuple):
        return tuple(_clean(v) for v in value)
    if isinstance(value, list):
        return [_clean(v) for v in value]
    return value


def describe(ev: SimEvent) -> tuple:
    """Trace row: payload with task specs collapsed to their ids."""
    return (ev.time, ev.seq, ev.kind.name, _clean(ev.payload))


@dataclass
class RunResult:
    scenario: Scenario
    report: MetricsReport
    records: dict[int, TaskRecord]
    trace: list[tuple] | None


class Simulation:
    def __init__(self, scenario: Scenario, collect_trace: bool = False):
        problems = validate_scenario(scenario)
        if problems:
            raise ScenarioError("; ".join(problems))
        self.scenario = scenario
        self.params = scenario.model_params
        self.streams = RngStreams(scenario.seed)
        self.queue = EventQueue()
        self.pool = TaskPool(record_transitions=collect_trace)
        self.net = NetworkModel(scenario.network,
                                scenario.net_latency_multiplier,
                                self.streams.network)
        self.fleet = FleetState(scenario, self.streams)
        self.workload = WorkloadGenerator(scenario, self.pool,
                                          self.streams.workload,
                                          self.streams.obstacle)
        self.injector = None
        if scenario.failures.enabled:
            self.injector = FailureInjector(scenario.failures,
                                            scenario.fleet_size,
                                            self.streams.failures)

        self.records: dict[int, TaskRecord] = {}
        self.ready_time: dict[int, float] = {}
        self.scheduling_latency: list[float] = []
        self.task_execution: list[float] = []

        n = scenario.fleet_size
        self._deliveries: dict[int, list] = {}   # parked cloud->drone msgs
        self._sends: dict[int, list] = {}        # deferred drone->cloud msgs
        self._inflight: dict[int, tuple] = {}    # drone -> (phase, task, epoch, fire)
        self._paused: dict[int, tuple] = {}      # drone -> (phase, task, epoch, left)
        self._mission_cost: dict[int, tuple] = {}  # drone -> (travel J, exec J)
        self._mission_token = [0] * n
        self._lost = [False] * n

        self.trace: list[tuple] | None = [] if collect_trace else None

        if scenario.controller_mode == CENTRALIZED:
            self.controller = CentralController(self)
        else:
            self.controller = DistributedController(self)

    # -- task intake -----------------------------------------------------

    def _register(self, specs: list[TaskSpec]):
        for spec in specs:
            self.records[spec.id] = TaskRecord(
                task_id=spec.id, kind=spec.kind.name,
                arrival_time=spec.arrival_time)
            self.ready_time[spec.id] = spec.arrival_time

    # -- messaging ---------------------------------------------------------

    def send_to_drone(self, drone: int, tag: str, data: tuple, delay: float):
        self.queue.push(self.queue.now + delay, EventKind.MESSAGE_ARRIVE,
                        (TO_DRONE, drone, tag, data))

    def send_to_cloud(self, drone: int, tag: str, data: tuple,
                      rtt: float | None = None):
        if self._lost[drone]:
            return
        if not self.fleet.connected[drone]:
            self._sends.setdefault(drone, []).append((tag, data))
            return
        if rtt is None:
            rtt = self.net.sample_rtt()
        self.queue.push(self.queue.now + rtt / 2.0, EventKind.MESSAGE_ARRIVE,
                        (TO_CLOUD, drone, tag, data, rtt))

    def _message(self, payload: tuple, now: float):
        if payload[0] == TO_CLOUD:
            _, drone, tag, data, rtt = payload
            if tag == REPORT:
                self._report_arrived(drone, data, rtt, now)
            else:
                self.controller.on_cloud_message(drone, tag, data, rtt, now)
            return
        _, drone, tag, data = payload
        if self._lost[drone]:
            return
        if not self.fleet.connected[drone]:
            self._deliveries.setdefault(drone, []).append((tag, data))
            return
        self.controller.on_drone_message(drone, tag, data, now)

    # -- missions ------------------------------------------------------------

    def begin_mission(self, drone: int, task_id: int, epoch: int, now: float):
        spec = self.pool.specs[task_id]
        view = self.fleet.view(drone)
        site = self.scenario.execution_site
        travel_j = (distance(view.position, spec.location)
                    * self.params.travel_energy)
        exec_j = 0.0
        if site == EDGE:
            exec_j = (exec_time(spec, site, view, self.params)
                      * self.params.compute_power_edge)
        # frozen now: the drone moves before the exec debit happens
        self._mission_cost[drone] = (travel_j, exec_j)
        self._mission_token[drone] += 1
        duration = travel_time(view.position, spec.location, self.fleet.speed)
        self._schedule_phase(drone, TRAVEL, task_id, epoch, duration, now)

    def _schedule_phase(self, drone: int, phase: str, task_id: int,
                        epoch: int, duration: float, now: float):
        fire = now + duration
        self._inflight[drone] = (phase, task_id, epoch, fire)
        kind = EventKind.TRAVEL_DONE if phase == TRAVEL else EventKind.EXEC_DONE
        self.queue.push(fire, kind,
                        (drone, task_id, epoch, self._mission_token[drone]))

    def _travel_done(self, drone: int, task_id: int, epoch: int, token: int,
                     now: float):
        if token != self._mission_token[drone]:
            return
        del self._inflight[drone]
        spec = self.pool.specs[task_id]
        self.fleet.move_to(drone, spec.location)
        travel_j, _ = self._mission_cost[drone]
        self.fleet.debit(drone, travel_j)
        st = self.pool.status[task_id]
        if not (st.state is TaskState.CLAIMED and st.drone_id == drone):
            self._drop_mission(drone, now)
            return
        self.pool.start_execution(task_id, drone, now)
        self.records[task_id].exec_start_time = now
        view = self.fleet.view(drone)
        site = self.scenario.execution_site
        duration = exec_time(spec, site, view, self.params)
        if site != EDGE and not self.fleet.connected[drone]:
            # remote execution needs the link up; park the whole phase
            self._mission_token[drone] += 1
            self._paused[drone] = (EXEC, task_id, epoch, duration)
            return
        self._schedule_phase(drone, EXEC, task_id, epoch, duration, now)

    def _exec_done(self, drone: int, task_id: int, epoch: int, token: int,
                   now: float):
        if token != self._mission_token[drone]:
            return
        del self._inflight[drone]
        _, exec_j = self._mission_cost.pop(drone)
        self.fleet.debit(drone, exec_j)
        self.send_to_cloud(drone, REPORT, (task_id, epoch))

    def _drop_mission(self, drone: int, now: float):
        # assignment was voided while the drone was out of touch
        self._mission_cost.pop(drone, None)
        self._mission_token[drone] += 1
        self.fleet.mark_idle(drone, now)

    def _report_arrived(self, drone: int, data: tuple, rtt: float,
                        now: float):
        task_id, epoch = data
        st = self.pool.status[task_id]
        valid = st.state is TaskState.EXECUTING and st.drone_id == drone
        self.fleet.mark_idle(drone, now)
        if valid:
            self.pool.complete(task_id, drone, now)
            rec = self.records[task_id]
            rec.completion_time = now
            rec.outcome = "completed"
            self.task_execution.append(now - rec.final_assign_time)
            added = self.workload.on_completion(self.pool.specs[task_id], now)
            self._register(added)
            if added:
                self.controller.on_new_tasks(now)
        self.controller.after_report(drone, task_id, rtt, now)

    # -- connectivity ----------------------------------------------------

    def _failure_wave(self, now: float):
        connected_ids = [int(i) for i in np.nonzero(self.fleet.connected)[0]]
        for drone, permanent in self.injector.sample_wave(connected_ids):
            self.queue.push(now, EventKind.DISCONNECT, (drone, permanent))
        self.queue.push(now + self.scenario.failures.interval,
                        EventKind.FAILURE_WAVE, ())

    def _disconnect(self, drone: int, permanent: bool, now: float):
        if self._lost[drone] or not self.fleet.connected[drone]:
            return
        self.fleet.set_connected(drone, False, now)
        if permanent:
            self._lost[drone] = True
            self._mission_token[drone] += 1
            self._inflight.pop(drone, None)
            self._paused.pop(drone, None)
            self._mission_cost.pop(drone, None)
            self._deliveries.pop(drone, None)
            self._sends.pop(drone, None)
        else:
            self.queue.push(now + self.scenario.failures.outage_duration,
                            EventKind.RECONNECT, (drone,))
            if drone in self._inflight:
                phase = self._inflight[drone][0]
                if (self.controller.stall_missions_on_disconnect
                        or (phase == EXEC
                            and self.scenario.execution_site != EDGE)):
                    self._pause_mission(drone, now)
        self.controller.on_disconnect(drone, permanent, now)

    def _pause_mission(self, drone: int, now: float):
        phase, task_id, epoch, fire = self._inflight.pop(drone)
        self._mission_token[drone] += 1
        self._paused[drone] = (phase, task_id, epoch, fire - now)

    def _reconnect(self, drone: int, now: float):
        if self._lost[drone]:
            return
        self.fleet.set_connected(drone, True, now)
        for tag, data in self._deliveries.pop(drone, ()):
            self.controller.on_drone_message(drone, tag, data, now)
        for tag, data in self._sends.pop(drone, ()):
            self.send_to_cloud(drone, tag, data)
        if drone in self._paused:
            self._resume_or_drop(drone, now)
        self.controller.on_reconnect(drone, now)

    def _resume_or_drop(self, drone: int, now: float):
        phase, task_id, epoch, remaining = self._paused.pop(drone)
        st = self.pool.status[task_id]
        expect = TaskState.CLAIMED if phase == TRAVEL else TaskState.EXECUTING
        if (st.state is expect and st.drone_id == drone
                and self.fleet.epoch[drone] == epoch):
            self._schedule_phase(drone, phase, task_id, epoch, remaining, now)
        else:
            self._drop_mission(drone, now)

    # -- workload ----------------------------------------------------------

    def _generator_tick(self, now: float):
        added = self.workload.top_up(now)
        self._register(added)
        if added:
            self.controller.on_new_tasks(now)
        self.queue.push(now + self.scenario.workload.generator_interval,
                        EventKind.GENERATOR_TICK, ())

    # -- main loop -----------------------------------------------------------

    def _dispatch(self, ev: SimEvent):
        now = ev.time
        kind = ev.kind
        if kind is EventKind.MESSAGE_ARRIVE:
            self._message(ev.payload, now)
        elif kind is EventKind.TRAVEL_DONE:
            self._travel_done(*ev.payload, now)
        elif kind is EventKind.EXEC_DONE:
            self._exec_done(*ev.payload, now)
        elif kind is EventKind.DISCONNECT:
            self._disconnect(*ev.payload, now)
        elif kind is EventKind.RECONNECT:
            self._reconnect(ev.payload[0], now)
        elif kind is EventKind.GENERATOR_TICK:
            self._generator_tick(now)
        elif kind is EventKind.FAILURE_WAVE:
            self._failure_wave(now)
        else:
            self.controller.handle_event(ev, now)

    def run(self) -> RunResult:
        s = self.scenario
        self._register(self.workload.top_up(0.0))
        self.controller.start(0.0)
        self.queue.push(s.workload.generator_interval,
                        EventKind.GENERATOR_TICK, ())
        if self.injector is not None:
            self.queue.push(s.failures.interval, EventKind.FAILURE_WAVE, ())
        while self.queue and self.queue.peek_time() < s.duration:
            ev = self.queue.pop()
            if self.trace is not None:
                self.trace.append(describe(ev))
            self._dispatch(ev)
        self._finalize(s.duration)
        return RunResult(s, self._build_report(s.duration), self.records,
                         self.trace)

    # -- end of run --------------------------------------------------------

    def _finalize(self, end: float):
        for task_id in self.pool.pending_ids():
            self.pool.mark_incomplete(task_id, end, RUN_END)
            self.records[task_id].outcome = RUN_END
        for task_id, st in self.pool.status.items():
            if st.state in (TaskState.CLAIMED, TaskState.EXECUTING):
                reason = HOLDER_LOST if self._lost[st.drone_id] else IN_FLIGHT
                self.pool.mark_incomplete(task_id, end, reason)
                self.records[task_id].outcome = reason

    def _build_report(self, duration: float) -> MetricsReport:
        completed = 0
        residual = 0
        reasons: dict[str, int] = {}
        for st in self.pool.status.values():
            if st.state is TaskState.COMPLETED:
                completed += 1
            elif st.incomplete_reason == RUN_END:
                residual += 1
            else:
                reasons[st.incomplete_reason] = (
                    reasons.get(st.incomplete_reason, 0) + 1)
        return MetricsReport(
            scheduling_latency=self.scheduling_latency,
            task_execution=self.task_execution,
            tasks_enqueued=len(self.pool.specs),
            tasks_completed=completed,
            incomplete_by_reason=reasons,
            residual_pending=residual,
            claims_attempted=self.pool.claims_attempted,
            claims_won=self.pool.claims_won,
            conflicts=self.pool.conflicts,
            requeues=self.pool.requeues,
            busy_network=self.controller.busy_time_network,
            busy_compute=self.controller.busy_time_compute,
            duration=duration,
        )


def run(scenario: Scenario, collect_trace: bool = False) -> RunResult:
    """Validate, build, and run one simulation; the single entry point."""
    return Simulation(scenario, collect_trace=collect_trace).run()
