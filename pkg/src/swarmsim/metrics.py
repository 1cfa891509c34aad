"""Per-task records, aggregated distributions, and plot-ready exports.

Percentiles use the nearest-rank rule (1-based index ceil(p*n) on the sorted
sample) so every implementation that follows the same rule reproduces the
same numbers exactly; no interpolation. Exports are raw samples in CSV with
LF endings because figures are regenerated downstream and binning is lossy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass
class TaskRecord:
    task_id: int
    kind: str
    arrival_time: float
    first_assign_time: float | None = None
    final_assign_time: float | None = None
    exec_start_time: float | None = None
    completion_time: float | None = None
    outcome: str = "pending"
    reschedules: int = 0
    conflicts_encountered: int = 0
    assigned_drones: list[int] = field(default_factory=list)


@dataclass
class MetricsReport:
    scheduling_latency: list[float]
    task_execution: list[float]
    tasks_enqueued: int
    tasks_completed: int
    incomplete_by_reason: dict[str, int]
    residual_pending: int
    claims_attempted: int
    claims_won: int
    conflicts: int
    requeues: int
    busy_network: float
    busy_compute: float
    duration: float

    @property
    def tasks_incomplete(self) -> int:
        return sum(self.incomplete_by_reason.values())

    @property
    def conflict_rate(self) -> float:
        if self.claims_attempted == 0:
            return 0.0
        return self.conflicts / self.claims_attempted

    @property
    def completion_fraction(self) -> float:
        total = self.tasks_enqueued
        return self.tasks_completed / total if total else 0.0

    @property
    def incomplete_fraction(self) -> float:
        """Fraction of all enqueued tasks that were taken on but not finished.

        Tasks still sitting unassigned when the run ends count as residual,
        not incomplete: the standing backlog belongs to the closed-loop
        generator, so completion + incomplete + residual partition 1.
        """
        total = self.tasks_enqueued
        return self.tasks_incomplete / total if total else 0.0

    @property
    def residual_fraction(self) -> float:
        total = self.tasks_enqueued
        return self.residual_pending / total if total else 0.0

    @property
    def network_share(self) -> float:
        total = self.busy_network + self.busy_compute
        return self.busy_network / total if total else 0.0

    @property
    def compute_share(self) -> float:
        # complement, so the two shares sum to exactly 1.0
        if self.busy_network + self.busy_compute == 0.0:
            return 0.0
        return 1.0 - self.network_share

    @property
    def throughput(self) -> float:
        return self.tasks_completed / self.duration if self.duration else 0.0


def percentile(samples: list[float], p: float) -> float:
    """Nearest-rank percentile; p in [0, 1]; p=0 returns the minimum."""
    if not samples:
        raise ValueError("percentile of empty sample set")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be in [0, 1]")
    ordered = sorted(samples)
    if p == 0.0:
        return ordered[0]
    rank = math.ceil(p * len(ordered))
    return ordered[rank - 1]


def bimodality_fraction(samples: list[float], threshold: float) -> float:
    """Mass of the slow mode: fraction of samples above the threshold."""
    if threshold <= 0:
        raise ValueError("threshold must be > 0")
    if not samples:
        return 0.0
    return sum(1 for s in samples if s > threshold) / len(samples)


def export_cdf(samples: list[float], path: str):
    if not samples:
        raise ValueError("cannot export an empty CDF")
    ordered = sorted(samples)
    n = len(ordered)
    with open(path, "w", newline="\n") as fh:
        fh.write("value,cum_fraction\n")
        for i, value in enumerate(ordered, start=1):
            fh.write("%s,%s\n" % (repr(value), repr(i / n)))


def export_violin(labeled_samples: list[tuple[str, list[float]]], path: str):
    """Long-format (label, value) rows, grouped by label in given order."""
    if not labeled_samples:
        raise ValueError("violin export needs at least one labeled set")
    with open(path, "w", newline="\n") as fh:
        fh.write("label,value\n")
        for label, samples in labeled_samples:
            for value in samples:
                fh.write("%s,%s\n" % (label, repr(value)))


def summary_lines(report: MetricsReport, extra: list[tuple[str, object]] = ()):
    """Stable key=value lines for summary.txt; float text via repr."""

    def fmt(value):
        if isinstance(value, float):
            return repr(value)
        return str(value)

    lines = []
    for key, value in extra:
        lines.append("%s=%s" % (key, fmt(value)))
    lines += [
        "tasks_enqueued=%d" % report.tasks_enqueued,
        "tasks_completed=%d" % report.tasks_completed,
        "tasks_incomplete=%d" % report.tasks_incomplete,
    ]
    for reason in sorted(report.incomplete_by_reason):
        lines.append("incomplete[%s]=%d"
                     % (reason, report.incomplete_by_reason[reason]))
    lines += [
        "residual_pending=%d" % report.residual_pending,
        "claims_attempted=%d" % report.claims_attempted,
        "claims_won=%d" % report.claims_won,
        "conflicts=%d" % report.conflicts,
        "conflict_rate=%s" % fmt(report.conflict_rate),
        "requeues=%d" % report.requeues,
        "completion_fraction=%s" % fmt(report.completion_fraction),
        "incomplete_fraction=%s" % fmt(report.incomplete_fraction),
        "residual_fraction=%s" % fmt(report.residual_fraction),
        "throughput_per_s=%s" % fmt(report.throughput),
        "busy_network_s=%s" % fmt(report.busy_network),
        "busy_compute_s=%s" % fmt(report.busy_compute),
        "network_share=%s" % fmt(report.network_share),
        "compute_share=%s" % fmt(report.compute_share),
    ]
    for name, samples in (("sched", report.scheduling_latency),
                          ("exec", report.task_execution)):
        lines.append("%s_samples=%d" % (name, len(samples)))
        if samples:
            mean = math.fsum(samples) / len(samples)
            lines.append("%s_mean=%s" % (name, fmt(mean)))
            for p, tag in ((0.5, "p50"), (0.9, "p90"), (0.95, "p95"),
                           (0.99, "p99")):
                lines.append("%s_%s=%s" % (name, tag, fmt(percentile(samples, p))))
    return lines


TASK_CSV_HEADER = ("task_id,kind,arrival,first_assign,final_assign,"
                   "exec_start,completed,outcome,reschedules,conflicts,drones")


def task_csv_rows(records: list[TaskRecord]):
    def opt(value):
        return "" if value is None else repr(value)

    yield TASK_CSV_HEADER
    for r in records:
        yield ",".join([
            str(r.task_id), r.kind, repr(r.arrival_time),
            opt(r.first_assign_time), opt(r.final_assign_time),
            opt(r.exec_start_time), opt(r.completion_time), r.outcome,
            str(r.reschedules), str(r.conflicts_encountered),
            "|".join(str(d) for d in r.assigned_drones),
        ])


def write_task_csv(records: list[TaskRecord], path: str):
    with open(path, "w", newline="\n") as fh:
        for row in task_csv_rows(records):
            fh.write(row + "\n")
