"""The global task pool.

Pending order is ascending task id, which equals arrival order because the
generator hands out strictly increasing ids. Claims are optimistic: the
caller presents the version it observed, and the pool grants the claim only
if the task is still pending at that version. All mutations run inside the
single-threaded kernel, so "serialized arrival" is literal.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass

from .core import TaskSpec, TaskState, TaskStatus, LEGAL_TRANSITIONS


class PoolInvariantError(AssertionError):
    """A lifecycle rule was broken; the run must abort."""


WON = "won"


@dataclass(frozen=True)
class ClaimOutcome:
    won: bool
    current_state: TaskState
    version: int


class TaskPool:
    def __init__(self, record_transitions: bool = False):
        self.specs: dict[int, TaskSpec] = {}
        self.status: dict[int, TaskStatus] = {}
        self._pending: list[int] = []   # ascending ids, exactly the PENDING set
        self._max_id = -1
        self.claims_attempted = 0
        self.claims_won = 0
        self.conflicts = 0
        self.requeues = 0
        self._record = record_transitions
        self.transitions: list[tuple] = []  # (time, task, from, to, drone)

    # -- internals ---------------------------------------------------------

    def _move(self, task_id: int, to: TaskState, time: float,
              drone_id: int | None):
        st = self.status[task_id]
        if (st.state, to) not in LEGAL_TRANSITIONS:
            raise PoolInvariantError(
                "illegal transition %s -> %s for task %d"
                % (st.state.name, to.name, task_id))
        if self._record:
            self.transitions.append((time, task_id, st.state, to, drone_id))
        st.state = to
        st.drone_id = drone_id
        st.since = time
        st.version += 1

    # -- operations --------------------------------------------------------

    def enqueue(self, spec: TaskSpec):
        if spec.id in self.specs:
            raise PoolInvariantError("duplicate task id %d" % spec.id)
        if spec.id <= self._max_id:
            raise PoolInvariantError("non-monotone task id %d" % spec.id)
        self._max_id = spec.id
        self.specs[spec.id] = spec
        self.status[spec.id] = TaskStatus(since=spec.arrival_time)
        self._pending.append(spec.id)
        if self._record:
            self.transitions.append(
                (spec.arrival_time, spec.id, None, TaskState.PENDING, None))

    def pending_count(self) -> int:
        return len(self._pending)

    def pending_ids(self) -> list[int]:
        return list(self._pending)

    def pending_at(self, index: int) -> int | None:
        if index < len(self._pending):
            return self._pending[index]
        return None

    def iter_pending(self):
        """Ascending-id iterator; callers must not mutate the pool mid-walk."""
        return iter(self._pending)

    def snapshot_pending(self, limit: int) -> list[tuple[TaskSpec, int]]:
        out = []
        for task_id in self._pending[:limit]:
            out.append((self.specs[task_id], self.status[task_id].version))
        return out

    def claim(self, task_id: int, drone_id: int, observed_version: int,
              time: float) -> ClaimOutcome:
        if task_id not in self.specs:
            raise PoolInvariantError("claim on unknown task id %d" % task_id)
        st = self.status[task_id]
        self.claims_attempted += 1
        if st.state is TaskState.PENDING and st.version == observed_version:
            idx = bisect.bisect_left(self._pending, task_id)
            assert self._pending[idx] == task_id
            self._pending.pop(idx)
            self._move(task_id, TaskState.CLAIMED, time, drone_id)
            self.claims_won += 1
            return ClaimOutcome(True, st.state, st.version)
        self.conflicts += 1
        return ClaimOutcome(False, st.state, st.version)

    def start_execution(self, task_id: int, drone_id: int, time: float):
        st = self.status[task_id]
        if st.state is not TaskState.CLAIMED or st.drone_id != drone_id:
            raise PoolInvariantError(
                "execution start by drone %d on task %d in state %s"
                % (drone_id, task_id, st.state.name))
        self._move(task_id, TaskState.EXECUTING, time, drone_id)

    def requeue(self, task_id: int, time: float, reason: str = ""):
        st = self.status[task_id]
        if st.state not in (TaskState.CLAIMED, TaskState.EXECUTING):
            raise PoolInvariantError(
                "requeue of task %d in state %s" % (task_id, st.state.name))
        self._move(task_id, TaskState.PENDING, time, None)
        st.reschedule_count += 1
        self.requeues += 1
        # restarted tasks keep their original arrival position
        bisect.insort(self._pending, task_id)

    def complete(self, task_id: int, drone_id: int, time: float):
        st = self.status[task_id]
        if st.state is not TaskState.EXECUTING or st.drone_id != drone_id:
            raise PoolInvariantError(
                "completion by drone %d on task %d in state %s held by %s"
                % (drone_id, task_id, st.state.name, st.drone_id))
        self._move(task_id, TaskState.COMPLETED, time, drone_id)

    def mark_incomplete(self, task_id: int, time: float, reason: str):
        st = self.status[task_id]
        if st.state is TaskState.PENDING:
            idx = bisect.bisect_left(self._pending, task_id)
            assert self._pending[idx] == task_id
            self._pending.pop(idx)
        self._move(task_id, TaskState.INCOMPLETE, time, st.drone_id)
        st.incomplete_reason = reason

    def check_pending_sorted(self):
        for a, b in zip(self._pending, self._pending[1:]):
            if a >= b:
                raise PoolInvariantError("pending order corrupted")
