"""Coefficient scan order: ascending total frequency, lexicographic ties."""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .dct import EDGE


@dataclass(frozen=True, eq=False)
class ZigzagOrder:
    d: int
    indices: np.ndarray  # (8**d, d) multi-indices in scan order
    flat: np.ndarray  # matching row-major linear indices

    def __len__(self):
        return len(self.flat)


@lru_cache(maxsize=None)
def zigzag_order(d):
    if d not in (2, 3, 4):
        raise ValueError(f"dimensionality must be 2, 3 or 4, got {d}")
    idx = sorted(product(range(EDGE), repeat=d), key=lambda u: (sum(u), u))
    indices = np.array(idx, dtype=np.int64)
    flat = np.ravel_multi_index(indices.T, (EDGE,) * d)
    indices.setflags(write=False)
    flat.setflags(write=False)
    return ZigzagOrder(d, indices, flat)
