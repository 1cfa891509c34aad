"""Network latency model.

Round-trip times are lognormal around a configured median: wireless links
are heavy tailed, and the median (not the mean) is the natural anchor for
a lognormal. The scenario's latency multiplier scales every sample
multiplicatively, so cutting the multiplier in half exactly halves each
draw at the same stream position.
"""

from __future__ import annotations

import math
import random

from .scenario import NetworkConfig


class NetworkModel:
    def __init__(self, cfg: NetworkConfig, multiplier: float,
                 stream: random.Random):
        if multiplier <= 0:
            raise ValueError("latency multiplier must be > 0")
        self._median = cfg.rtt_median
        self._mu = math.log(cfg.rtt_median)
        self._sigma = cfg.rtt_sigma
        self._multiplier = multiplier
        self._stream = stream

    def sample_rtt(self) -> float:
        if self._sigma == 0.0:
            # exact, not exp(log(median)), so frozen oracles stay clean
            base = self._median
        else:
            base = self._stream.lognormvariate(self._mu, self._sigma)
        return base * self._multiplier
