"""Discrete-event kernel.

A binary heap ordered by (time, seq). seq is a global emission counter, so
simultaneous events fire in the order they were scheduled and runs are
bitwise reproducible. Everything that needs a same-instant ordering (ids
ascending, claim arrivals, agent commits) gets it by emitting in that order.
"""

from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass, field


class EventKind(enum.IntEnum):
    CONTROLLER_WAKE = 0    # (agent,)
    COMMIT = 1             # (agent, task, drone)
    MESSAGE_ARRIVE = 2     # (direction, ...)
    TRAVEL_DONE = 3        # (drone, task, epoch, token)
    EXEC_DONE = 4          # (drone, task, epoch, token)
    DISCONNECT = 5         # (drone, permanent)
    RECONNECT = 6          # (drone,)
    GENERATOR_TICK = 7     # ()
    TIMEOUT_CHECK = 8      # (task, drone, epoch)
    AGENT_WAKE = 9         # (drone,)
    FAILURE_WAVE = 10      # ()


@dataclass(order=True)
class SimEvent:
    time: float
    seq: int
    kind: EventKind = field(compare=False)
    payload: tuple = field(compare=False, default=())


class EventQueue:
    def __init__(self):
        self._heap: list[SimEvent] = []
        self._seq = 0
        self.now = 0.0

    def push(self, time: float, kind: EventKind,
             payload: tuple = ()) -> SimEvent:
        # events may only be scheduled at or after the current time
        if time < self.now:
            raise AssertionError(
                "event %s scheduled at %r before now=%r" % (kind, time, self.now))
        ev = SimEvent(time, self._seq, kind, payload)
        self._seq += 1
        heapq.heappush(self._heap, ev)
        return ev

    def pop(self) -> SimEvent:
        ev = heapq.heappop(self._heap)
        if ev.time < self.now:
            raise AssertionError("event time went backwards")
        self.now = ev.time
        return ev

    def peek_time(self) -> float:
        return self._heap[0].time

    def __len__(self):
        return len(self._heap)

    def __bool__(self):
        return bool(self._heap)
