"""Deterministic labeled random streams.

Every source of randomness gets its own stream derived from the scenario
seed and a fixed label, so consuming draws from one stream never shifts
another. Derivation uses sha256, not hash(), because hash() is salted per
process and would break cross-run determinism.
"""

from __future__ import annotations

import hashlib
import random

STREAM_LABELS = (
    "topology",       # drone starting positions
    "heterogeneity",  # sensors, battery charge, cpu scales
    "workload",       # task kinds and locations
    "network",        # per-message latency samples
    "failures",       # wave membership and permanence
    "obstacle",       # conditional follow-up tasks
)


def derive_seed(seed: int, label: str) -> int:
    digest = hashlib.sha256(("%d:%s" % (seed, label)).encode()).digest()
    return int.from_bytes(digest[:8], "big")


class RngStreams:
    def __init__(self, seed: int):
        self.seed = seed
        for label in STREAM_LABELS:
            setattr(self, label, random.Random(derive_seed(seed, label)))
