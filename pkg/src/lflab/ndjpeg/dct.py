"""Separable orthonormal DCT over blocks of any dimensionality.

The forward transform is scaled by ``8 ** (-(d - 2) / 2)`` so coefficient
magnitudes stay in the 2-D range for d = 3 and d = 4.
"""

import numpy as np

from ..errors import ShapeError

EDGE = 8


def dct_matrix(n=EDGE):
    """Orthonormal DCT-II matrix ``C`` with ``X = C @ x``."""
    k = np.arange(n)[:, None]
    i = np.arange(n)[None, :]
    c = np.sqrt(2.0 / n) * np.cos(np.pi * (2 * i + 1) * k / (2 * n))
    c[0] /= np.sqrt(2.0)
    return c


_C = dct_matrix()


def gain(d):
    return EDGE ** (-(d - 2) / 2.0)


def _apply(x, m, first_axis):
    for axis in range(first_axis, x.ndim):
        x = np.moveaxis(np.tensordot(m, x, axes=(1, axis)), 0, axis)
    return x


def dct_blocks(blocks, d, direction="forward"):
    """Transform a stack of blocks, shape ``(n_blocks, 8, ..., 8)``."""
    blocks = np.asarray(blocks, dtype=np.float64)
    if blocks.shape[1:] != (EDGE,) * d:
        raise ShapeError(f"expected blocks of shape {(EDGE,) * d}, got {blocks.shape[1:]}")
    g = gain(d)
    if direction == "forward":
        out = _apply(blocks, _C, 1)
        return out * g if d != 2 else out
    if direction == "inverse":
        if d != 2:
            blocks = blocks / g
        return _apply(blocks, _C.T, 1)
    raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")


def dct(block, d, direction="forward"):
    """Transform one block given flat (length ``8**d``) or shaped."""
    block = np.asarray(block, dtype=np.float64)
    if block.size != EDGE**d:
        raise ShapeError(f"block must hold {EDGE ** d} samples for d={d}, got {block.size}")
    shape = block.shape
    return dct_blocks(block.reshape((1,) + (EDGE,) * d), d, direction)[0].reshape(shape)
