"""Counter-based random streams: one independent generator per (seed, index).

Philox is counter-based, so disjoint spawn keys give statistically
independent streams and replay is exact regardless of draw batching.
"""

from __future__ import annotations

import numpy as np

__all__ = ["stream"]


def stream(seed: int, index: int = 0) -> np.random.Generator:
    """Deterministic generator for stream `index` of master seed `seed`."""
    seq = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(index),))
    return np.random.Generator(np.random.Philox(seq))
