"""Synthetic light fields of a single fronto-parallel textured plane.

View ``(k, l)`` shows the texture translated by ``disparity * (k_c, l_c)``
pixels along ``(m, n)``, with ``k_c, l_c`` the offsets from the grid centre,
so refocusing at ``alpha == disparity`` brings the plane into focus.
"""

import numpy as np

from .lightfield import LightField, to_uint8


class Texture:
    """Band-limited random RGB texture that can be evaluated off the pixel grid."""

    def __init__(self, seed=0, components=24, max_freq=0.12, amplitude=110.0):
        rng = np.random.default_rng(seed)
        self.freq = rng.uniform(-max_freq, max_freq, size=(3, components, 2))
        self.phase = rng.uniform(0, 2 * np.pi, size=(3, components))
        weights = rng.uniform(0.2, 1.0, size=(3, components))
        self.weights = amplitude * weights / weights.sum(axis=1, keepdims=True)
        self.offset = rng.uniform(100, 156, size=3)

    def __call__(self, m, n):
        """Real-valued samples, shape ``(3,) + broadcast(m, n).shape``."""
        m = np.asarray(m, dtype=np.float64)
        n = np.asarray(n, dtype=np.float64)
        out = []
        for c in range(3):
            arg = (
                2 * np.pi * (self.freq[c, :, 0, None, None] * m[None] + self.freq[c, :, 1, None, None] * n[None])
                + self.phase[c, :, None, None]
            )
            out.append(self.offset[c] + np.tensordot(self.weights[c], np.cos(arg), axes=1))
        return np.stack(out)


def translated_plane(
    grid_rows,
    grid_cols,
    width,
    height,
    disparity,
    seed=0,
    noise=0.0,
    disparity_range=None,
    texture=None,
):
    """Light field of one textured plane at the given disparity.

    ``noise`` adds independent Gaussian noise (std in 8-bit units) per view,
    standing in for sensor noise.  ``disparity_range`` sets the stored
    disparity metadata; it defaults to ``(-|disparity|, |disparity|)``.
    """
    tex = texture if texture is not None else Texture(seed)
    rng = np.random.default_rng(seed + 1)
    ck = (grid_rows - 1) / 2.0
    cl = (grid_cols - 1) / 2.0
    m = np.arange(width, dtype=np.float64)[:, None]
    n = np.arange(height, dtype=np.float64)[None, :]
    samples = np.empty((grid_rows, grid_cols, height, width, 3), dtype=np.uint8)
    for k in range(grid_rows):
        for l in range(grid_cols):
            v = tex(m - disparity * (k - ck), n - disparity * (l - cl))  # (3, M, N)
            if noise:
                v = v + rng.normal(0.0, noise, size=v.shape)
            samples[k, l] = np.transpose(to_uint8(v), (2, 1, 0))
    if disparity_range is None:
        disparity_range = (-abs(disparity), abs(disparity))
    return LightField(samples, *disparity_range)


def shifted_copies(base, grid_rows, grid_cols, shift):
    """Integer translation of ``base`` (H, W, 3) by ``shift * (k_c, l_c)`` with edge clamping.

    Grid dimensions must be odd so the centred offsets are integers.
    """
    if grid_rows % 2 == 0 or grid_cols % 2 == 0:
        raise ValueError("grid dimensions must be odd for integer centred shifts")
    base = np.asarray(base, dtype=np.uint8)
    H, W, _ = base.shape
    ck, cl = (grid_rows - 1) // 2, (grid_cols - 1) // 2
    out = np.empty((grid_rows, grid_cols, H, W, 3), dtype=np.uint8)
    for k in range(grid_rows):
        for l in range(grid_cols):
            cols = np.clip(np.arange(W) - shift * (k - ck), 0, W - 1)
            rows = np.clip(np.arange(H) - shift * (l - cl), 0, H - 1)
            out[k, l] = base[rows][:, cols]
    return LightField(out, -abs(shift), abs(shift))
