"""Centralized push controller.

One or more scheduling agents share an exact global view of the fleet and
walk the pending queue in FIFO order. Dispatching one task costs a full
fleet scan (fleet_size x per-drone scan cost, accrued to compute time) plus
the one-way mission send (RTT/2, accrued to network time); the agent is
blocked for exactly that long, which is the serialization that saturates at
large fleet sizes.

Concurrency between agents is optimistic: an agent picks its (task, drone)
pair at wake time, and the pair is committed one scan later against the
then-current view. Task collisions cannot happen (each agent reserves its
task for the duration of the scan); drone collisions are resolved by commit
order, and the loser re-selects a drone for the same task at the price of
one extra scan.

Missions stall while their drone is disconnected: travel and execution
pause and resume with the elapsed outage added, unless the controller's
timeout fires first and requeues the task, in which case the drone discards
the voided mission when it reconnects.
"""

from __future__ import annotations

from .core import TaskState
from .kernel import EventKind
from .models import feasible

MISSION = "mission"
ACK = "ack"


class CentralController:
    stall_missions_on_disconnect = True

    def __init__(self, sim):
        self.sim = sim
        self.agent_count = sim.scenario.scheduler_agents
        self.site = sim.scenario.execution_site
        self.scan_len = (sim.scenario.fleet_size
                         * sim.params.scan_cost_per_drone)
        self.dormant = [True] * self.agent_count
        self.wake_pending = [False] * self.agent_count
        self.reserved: dict[int, int] = {}   # task id -> agent holding it
        self.busy_time_network = 0.0
        self.busy_time_compute = 0.0

    # -- agent lifecycle -----------------------------------------------------

    def start(self, now: float):
        self._kick_all(now)

    def _kick_all(self, now: float):
        for a in range(self.agent_count):
            if self.dormant[a] and not self.wake_pending[a]:
                self.wake_pending[a] = True
                self.sim.queue.push(now, EventKind.CONTROLLER_WAKE, (a,))

    def _schedule_wake(self, a: int, time: float):
        self.wake_pending[a] = True
        self.sim.queue.push(time, EventKind.CONTROLLER_WAKE, (a,))

    def _attempt_dispatch(self, a: int, now: float):
        sim = self.sim
        # no schedulable drone or no work: sleep without paying a scan
        if sim.fleet.idle_connected_count() == 0 or sim.pool.pending_count() == 0:
            self.dormant[a] = True
            return
        choice = self._walk()
        self.busy_time_compute += self.scan_len
        if choice is None:
            self.dormant[a] = True
            return
        task_id, drone = choice
        self.reserved[task_id] = a
        self.dormant[a] = False
        sim.queue.push(now + self.scan_len, EventKind.COMMIT, (a, task_id, drone))

    def _walk(self):
        """First pending task (FIFO) with a feasible drone; skip-in-place."""
        sim = self.sim
        for task_id in sim.pool.iter_pending():
            if task_id in self.reserved:
                continue
            spec = sim.pool.specs[task_id]
            drone = sim.fleet.select_min_cost(spec, self.site, sim.params)
            if drone is not None:
                return task_id, drone
        return None

    def _commit(self, a: int, task_id: int, drone: int, now: float):
        sim = self.sim
        spec = sim.pool.specs[task_id]
        view = sim.fleet.view(drone)
        if view.connected and feasible(view, spec, self.site, sim.params):
            del self.reserved[task_id]
            self._dispatch(a, task_id, drone, now)
            return
        # drone taken or gone since selection: re-select for the same task
        alt = sim.fleet.select_min_cost(spec, self.site, sim.params,
                                        exclude=drone)
        self.busy_time_compute += self.scan_len
        if alt is not None:
            sim.queue.push(now + self.scan_len, EventKind.COMMIT,
                           (a, task_id, alt))
            return
        del self.reserved[task_id]
        self._attempt_dispatch(a, now)

    def _dispatch(self, a: int, task_id: int, drone: int, now: float):
        sim = self.sim
        outcome = sim.pool.claim(task_id, drone,
                                 sim.pool.status[task_id].version, now)
        assert outcome.won, "reserved task lost its claim"
        wait_start = max(sim.ready_time[task_id],
                         float(sim.fleet.avail_since[drone]))
        epoch = sim.fleet.mark_busy(drone, task_id)
        rtt = sim.net.sample_rtt()
        self.busy_time_network += rtt / 2.0
        rec = sim.records[task_id]
        if rec.first_assign_time is None:
            rec.first_assign_time = now
        rec.final_assign_time = now
        rec.assigned_drones.append(drone)
        sim.send_to_drone(drone, MISSION, (task_id, epoch, rtt, wait_start),
                          rtt / 2.0)
        # the send blocks the agent for the one-way half only
        self._schedule_wake(a, now + rtt / 2.0)

    # -- event plumbing (called by the engine) -------------------------------

    def handle_event(self, ev, now: float):
        if ev.kind is EventKind.CONTROLLER_WAKE:
            a = ev.payload[0]
            self.wake_pending[a] = False
            self._attempt_dispatch(a, now)
        elif ev.kind is EventKind.COMMIT:
            self._commit(*ev.payload, now)
        elif ev.kind is EventKind.TIMEOUT_CHECK:
            self._check_timeout(*ev.payload, now)
        else:
            raise AssertionError("unexpected event %s" % (ev.kind,))

    def on_drone_message(self, drone: int, tag: str, data: tuple, now: float):
        assert tag == MISSION
        task_id, epoch, rtt, wait_start = data
        sim = self.sim
        st = sim.pool.status[task_id]
        if (st.state is TaskState.CLAIMED and st.drone_id == drone
                and sim.fleet.epoch[drone] == epoch):
            sim.send_to_cloud(drone, ACK, (task_id, wait_start), rtt=rtt)
            sim.begin_mission(drone, task_id, epoch, now)
        else:
            # assignment was voided while the mission was in flight
            sim.fleet.mark_idle(drone, now)
            self._kick_all(now)

    def on_cloud_message(self, drone: int, tag: str, data: tuple,
                         rtt: float, now: float):
        assert tag == ACK
        task_id, wait_start = data
        self.sim.scheduling_latency.append(now - wait_start)

    # -- notifications -------------------------------------------------------

    def on_new_tasks(self, now: float):
        self._kick_all(now)

    def on_reconnect(self, drone: int, now: float):
        self._kick_all(now)

    def on_disconnect(self, drone: int, permanent: bool, now: float):
        sim = self.sim
        if sim.fleet.task_of[drone] >= 0:
            sim.queue.push(
                now + sim.scenario.failures.detect_timeout,
                EventKind.TIMEOUT_CHECK,
                (int(sim.fleet.task_of[drone]), drone,
                 int(sim.fleet.epoch[drone])))

    def _check_timeout(self, task_id: int, drone: int, epoch: int,
                       now: float):
        sim = self.sim
        if sim.fleet.connected[drone] or sim.fleet.epoch[drone] != epoch:
            return
        st = sim.pool.status[task_id]
        if (st.state in (TaskState.CLAIMED, TaskState.EXECUTING)
                and st.drone_id == drone):
            sim.pool.requeue(task_id, now, "timeout")
            sim.ready_time[task_id] = now
            sim.records[task_id].reschedules += 1
            self._kick_all(now)

    def after_report(self, drone: int, task_id: int, rtt: float, now: float):
        # completion reports are telemetry, not agent time; just rescan
        self._kick_all(now)
