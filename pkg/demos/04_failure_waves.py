"""Connectivity loss hits the two controllers in different places.

Under periodic failure waves the push controller notices a dead drone via
its detect timeout and requeues the mission, so work survives but every
requeue stretches queue time. Pull agents own their claims outright:
nobody can requeue for them, so a permanently lost drone strands its task
forever and outages surface as incomplete work instead of latency.

Run with:  python3 demos/04_failure_waves.py
"""

from swarmsim import engine
from swarmsim.metrics import percentile
from swarmsim.scenario import FailureConfig, HeterogeneityConfig, Scenario


def cell(mode, failures):
    return engine.run(Scenario(
        fleet_size=200, arena_radius=50.0, controller_mode=mode,
        duration=300.0, seed=1, execution_site="edge",
        heterogeneity=HeterogeneityConfig(enabled=True),
        failures=FailureConfig(enabled=failures, interval=25.0,
                               fraction=0.10, outage_duration=130.0,
                               permanent_prob=0.02, detect_timeout=2.5)))


print("%14s %9s %11s %11s %10s %12s"
      % ("cell", "requeues", "completed", "incomplete", "stranded",
         "mean sched"))

for mode in ("centralized", "distributed"):
    for failures in (False, True):
        rep = cell(mode, failures).report
        label = "%s/%s" % (mode[:4], "waves" if failures else "calm")
        stranded = rep.incomplete_by_reason.get("holder lost", 0)
        sched = sum(rep.scheduling_latency) / len(rep.scheduling_latency)
        print("%14s %9d %11d %11d %10d %11.3fs"
              % (label, rep.requeues, rep.tasks_completed,
                 rep.tasks_incomplete, stranded, sched))

print()
print("push converts outages into requeues and higher scheduling delay;")
print("pull converts them into stranded claims and incomplete tasks, and")
print("missions that survive an outage finish late because their report")
print("waits for the uplink to return")
