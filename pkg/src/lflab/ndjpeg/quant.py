"""Quantization tables and scalar quantization of DCT blocks."""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..lightfield import round_half_away
from .dct import EDGE

# ITU-T T.81 Annex K, tables K.1 (luminance) and K.2 (chrominance), natural order
ANNEX_K_LUMA = np.array(
    [
        [16, 11, 10, 16, 24, 40, 51, 61],
        [12, 12, 14, 19, 26, 58, 60, 55],
        [14, 13, 16, 24, 40, 57, 69, 56],
        [14, 17, 22, 29, 51, 87, 80, 62],
        [18, 22, 37, 56, 68, 109, 103, 77],
        [24, 35, 55, 64, 81, 104, 113, 92],
        [49, 64, 78, 87, 103, 121, 120, 101],
        [72, 92, 95, 98, 112, 100, 103, 99],
    ],
    dtype=np.int64,
)

ANNEX_K_CHROMA = np.full((8, 8), 99, dtype=np.int64)
ANNEX_K_CHROMA[:4, :4] = [
    [17, 18, 24, 47],
    [18, 21, 26, 66],
    [24, 26, 56, 99],
    [47, 66, 99, 99],
]

AC_LIMIT = 1023
DC_MIN, DC_MAX = -4096, 4095

CLASSES = ("luma", "chroma")


@dataclass(frozen=True, eq=False)
class QuantTable:
    values: np.ndarray  # shape (8,) * d, int64, entries in [1, 255]
    channel_class: str

    @property
    def d(self):
        return self.values.ndim


def _base_2d(channel_class):
    if channel_class == "luma":
        return ANNEX_K_LUMA
    if channel_class == "chroma":
        return ANNEX_K_CHROMA
    raise ValueError(f"channel class must be 'luma' or 'chroma', got {channel_class!r}")


def diagonal_profile(channel_class):
    """Mean Annex K entry on each anti-diagonal ``u + v = r``, r = 0..14, rounded."""
    base = _base_2d(channel_class)
    r = np.add.outer(np.arange(EDGE), np.arange(EDGE))
    means = np.array([base[r == i].mean() for i in range(2 * EDGE - 1)])
    return round_half_away(means).astype(np.int64)


def quality_scale(quality):
    if not 1 <= quality <= 100:
        raise ValueError(f"quality must be in 1..100, got {quality}")
    return 5000 // quality if quality < 50 else 200 - 2 * quality


@lru_cache(maxsize=None)
def _build(d, quality, channel_class):
    if d == 2:
        base = _base_2d(channel_class)
    elif d in (3, 4):
        g = diagonal_profile(channel_class)
        total = np.indices((EDGE,) * d).sum(axis=0)
        base = g[np.minimum(total, 2 * EDGE - 2)]
    else:
        raise ValueError(f"dimensionality must be 2, 3 or 4, got {d}")
    s = quality_scale(quality)
    values = np.clip((base * s + 50) // 100, 1, 255).astype(np.int64)
    values.setflags(write=False)
    return QuantTable(values, channel_class)


def build_quant_table(d, quality, channel_class):
    return _build(int(d), int(quality), channel_class)


def quantize(blocks, table):
    """Quantize a block or a stack of blocks (trailing axes match the table)."""
    c = np.asarray(blocks, dtype=np.float64)
    q = round_half_away(c / table.values).astype(np.int64)
    np.clip(q, -AC_LIMIT, AC_LIMIT, out=q)
    dc = (Ellipsis,) + (0,) * table.d
    q[dc] = np.clip(round_half_away(c[dc] / table.values.flat[0]), DC_MIN, DC_MAX)
    return q


def dequantize(q, table):
    return np.asarray(q, dtype=np.float64) * table.values
