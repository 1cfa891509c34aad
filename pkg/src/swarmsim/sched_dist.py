"""Distributed pull controller.

Every drone runs the same loop with no global knowledge: fetch a bounded
FIFO prefix of the pending pool, pick the first feasible entry, claim it
optimistically by version, and either start the mission on Won or refetch
immediately on Lost. An empty pick backs off before refetching. The pool
never pushes work and never requeues: a claim held by a drone that dies
permanently is simply never finished.

The uncontended path costs exactly five one-way messages per task: fetch
request and response, claim request and response, completion report.
"""

from __future__ import annotations

from .kernel import EventKind
from .models import feasible

FETCH = "fetch"
SNAPSHOT = "snapshot"
CLAIM = "claim"
WON = "won"
LOST = "lost"


def pick_task(snapshot, drone, site, params):
    """First feasible (task id, version) from a FIFO snapshot, else None.

    The status clause of feasible() is skipped: an agent only shops for
    work while idle, and its own fleet entry may already be marked busy by
    a concurrent claim it has not heard about.
    """
    for spec, version in snapshot:
        if feasible(drone, spec, site, params, ignore_status=True):
            return spec.id, version
    return None


class DistributedController:
    stall_missions_on_disconnect = False

    def __init__(self, sim):
        self.sim = sim
        self.site = sim.scenario.execution_site
        self.snapshot_limit = sim.scenario.snapshot_limit
        self.backoff = sim.scenario.backoff_interval
        self.busy_time_network = 0.0
        self.busy_time_compute = 0.0

    def start(self, now: float):
        for drone in range(self.sim.scenario.fleet_size):
            self._send_fetch(drone)

    def _send_fetch(self, drone: int):
        self.sim.send_to_cloud(drone, FETCH, ())

    def handle_event(self, ev, now: float):
        assert ev.kind is EventKind.AGENT_WAKE
        self._send_fetch(ev.payload[0])

    # -- pool side ------------------------------------------------------------

    def on_cloud_message(self, drone: int, tag: str, data: tuple,
                         rtt: float, now: float):
        sim = self.sim
        self.busy_time_network += rtt
        if tag == FETCH:
            snap = tuple(sim.pool.snapshot_pending(self.snapshot_limit))
            sim.send_to_drone(drone, SNAPSHOT, (snap,), rtt / 2.0)
            return
        assert tag == CLAIM
        task_id, version = data
        outcome = sim.pool.claim(task_id, drone, version, now)
        if outcome.won:
            wait_start = max(sim.ready_time[task_id],
                             float(sim.fleet.avail_since[drone]))
            epoch = sim.fleet.mark_busy(drone, task_id)
            rec = sim.records[task_id]
            if rec.first_assign_time is None:
                rec.first_assign_time = now
            rec.final_assign_time = now
            rec.assigned_drones.append(drone)
            sim.send_to_drone(drone, WON, (task_id, epoch, wait_start),
                              rtt / 2.0)
        else:
            sim.records[task_id].conflicts_encountered += 1
            sim.send_to_drone(drone, LOST, (task_id,), rtt / 2.0)

    # -- drone side -----------------------------------------------------------

    def on_drone_message(self, drone: int, tag: str, data: tuple, now: float):
        sim = self.sim
        if tag == SNAPSHOT:
            choice = pick_task(data[0], sim.fleet.view(drone), self.site,
                               sim.params)
            if choice is None:
                sim.queue.push(now + self.backoff, EventKind.AGENT_WAKE,
                               (drone,))
            else:
                sim.send_to_cloud(drone, CLAIM, choice)
        elif tag == WON:
            task_id, epoch, wait_start = data
            sim.scheduling_latency.append(now - wait_start)
            sim.begin_mission(drone, task_id, epoch, now)
        else:
            assert tag == LOST
            self._send_fetch(drone)

    # -- notifications --------------------------------------------------------

    def on_new_tasks(self, now: float):
        pass

    def on_reconnect(self, drone: int, now: float):
        pass

    def on_disconnect(self, drone: int, permanent: bool, now: float):
        pass

    def after_report(self, drone: int, task_id: int, rtt: float, now: float):
        self.busy_time_network += rtt / 2.0
        self._send_fetch(drone)
