"""Connectivity failure injection.

Every interval, a wave picks a fixed count of currently connected drones
uniformly at random and drops them off the network; each victim is
independently flagged permanent with a configured probability, otherwise it
reconnects after the outage. Membership must be sampled at wave time (not
precomputed) because the eligible set depends on who is already down.
"""

from __future__ import annotations

from .scenario import FailureConfig


class FailureInjector:
    def __init__(self, cfg: FailureConfig, fleet_size: int, stream):
        self.cfg = cfg
        self.fleet_size = fleet_size
        self._stream = stream

    def next_wave_time(self, now: float) -> float:
        return now + self.cfg.interval

    def sample_wave(self, connected_ids: list[int]) -> list[tuple[int, bool]]:
        """Return (drone, permanent) victims for one wave.

        connected_ids must be sorted: the draw order of random.sample is part
        of the determinism contract, so the population order must be stable.
        """
        count = int(self.cfg.fraction * self.fleet_size)
        count = min(count, len(connected_ids))
        if count <= 0:
            return []
        victims = self._stream.sample(connected_ids, count)
        return [(d, self._stream.random() < self.cfg.permanent_prob)
                for d in victims]
