"""Smallest possible tour: build a scenario, run it, read the report.

Run with:  python3 demos/01_first_run.py
"""

from swarmsim import engine
from swarmsim.metrics import percentile, summary_lines
from swarmsim.scenario import Scenario

scenario = Scenario(
    fleet_size=12,
    arena_radius=60.0,
    controller_mode="centralized",
    duration=300.0,
    seed=7,
)

result = engine.run(scenario)
report = result.report

print("ran %r for %.0f simulated seconds" % (scenario.controller_mode,
                                             scenario.duration))
print("tasks: %d enqueued, %d completed, %d incomplete"
      % (report.tasks_enqueued, report.tasks_completed,
         report.tasks_incomplete))
print("median scheduling latency: %.4f s"
      % percentile(report.scheduling_latency, 0.5))
print("median task span (assignment to completion): %.1f s"
      % percentile(report.task_execution, 0.5))
print()
print("full summary, as written to summary.txt by the CLI:")
for line in summary_lines(report):
    print("  " + line)

# per-task detail lives in result.records
slowest = max((r for r in result.records.values()
               if r.outcome == "completed"),
              key=lambda r: r.completion_time - r.arrival_time)
print()
print("slowest completed task: %s #%d, %.1f s from arrival to completion"
      % (slowest.kind, slowest.task_id,
         slowest.completion_time - slowest.arrival_time))
