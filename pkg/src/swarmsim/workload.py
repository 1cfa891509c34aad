"""Closed-loop workload generator.

The pool is topped up to a backlog target on a periodic tick and after every
completion, so neither controller ever starves. Completed recognition tasks
spawn a conditional obstacle-avoidance follow-up at the same spot with a
configured probability; that draw comes from its own stream so toggling it
cannot disturb failure or network schedules.
"""

from __future__ import annotations

from .taskpool import TaskPool
from .scenario import Scenario
from .fleet import sample_cylinder
from .core import (Position, TaskKind, TaskSpec, RECOGNITION_KINDS,
                    REQUIRED_SENSORS)


class WorkloadGenerator:
    def __init__(self, scenario: Scenario, pool: TaskPool, workload_stream,
                 obstacle_stream):
        self._scenario = scenario
        self._pool = pool
        self._stream = workload_stream
        self._obstacle = obstacle_stream
        self._mix = scenario.workload.kind_mix()
        self._next_id = 0
        self.target = scenario.backlog_target()

    def _make(self, kind: TaskKind, location: Position, now: float,
              parent: int | None = None) -> TaskSpec:
        p = self._scenario.model_params
        spec = TaskSpec(
            id=self._next_id,
            kind=kind,
            location=location,
            required_sensors=REQUIRED_SENSORS[kind],
            compute_work=p.work_for(kind),
            payload_bytes=p.payload_for(kind),
            arrival_time=now,
            parent_task=parent,
        )
        self._next_id += 1
        return spec

    def _random_task(self, now: float) -> TaskSpec:
        kind = self._mix[int(self._stream.random() * len(self._mix))]
        x, y, z = sample_cylinder(self._scenario.arena_radius,
                                  self._scenario.arena_altitude, self._stream)
        return self._make(kind, Position(x, y, z), now)

    def top_up(self, now: float) -> list[TaskSpec]:
        added = []
        while self._pool.pending_count() < self.target:
            spec = self._random_task(now)
            self._pool.enqueue(spec)
            added.append(spec)
        return added

    def on_completion(self, task: TaskSpec, now: float) -> list[TaskSpec]:
        """Maybe spawn the conditional follow-up, then refill the backlog."""
        added = []
        if (task.kind in RECOGNITION_KINDS
                and self._obstacle.random() < self._scenario.workload.obstacle_prob):
            child = self._make(TaskKind.OBSTACLE_AVOIDANCE, task.location,
                               now, parent=task.id)
            self._pool.enqueue(child)
            added.append(child)
        added.extend(self.top_up(now))
        return added
