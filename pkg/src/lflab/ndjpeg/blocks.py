"""Edge padding and block partitioning of d-dimensional arrays."""

import numpy as np


def partition(arr, block_shape):
    """Pad ``arr`` to multiples of ``block_shape`` and cut it into blocks.

    Axes are padded by replicating their last hyperplane.  Returns the blocks,
    shape ``(n_blocks, *block_shape)`` in row-major order of block index, and
    the block-grid dimensions.
    """
    arr = np.asarray(arr)
    if arr.ndim != len(block_shape):
        raise ValueError(f"array has {arr.ndim} axes, block shape has {len(block_shape)}")
    grid = tuple(-(-s // e) for s, e in zip(arr.shape, block_shape))
    pad = [(0, g * e - s) for g, e, s in zip(grid, block_shape, arr.shape)]
    if any(p for _, p in pad):
        arr = np.pad(arr, pad, mode="edge")
    d = arr.ndim
    split = []
    for g, e in zip(grid, block_shape):
        split += [g, e]
    perm = tuple(range(0, 2 * d, 2)) + tuple(range(1, 2 * d, 2))
    blocks = arr.reshape(split).transpose(perm).reshape((-1,) + tuple(block_shape))
    return blocks, grid


def assemble(blocks, grid, shape):
    """Inverse of :func:`partition`: stitch blocks back and crop to ``shape``."""
    block_shape = blocks.shape[1:]
    d = len(block_shape)
    arr = blocks.reshape(tuple(grid) + tuple(block_shape))
    perm = []
    for i in range(d):
        perm += [i, d + i]
    arr = arr.transpose(perm).reshape(tuple(g * e for g, e in zip(grid, block_shape)))
    return arr[tuple(slice(0, s) for s in shape)]


def pad_and_partition(plane, d, edge=8):
    """Partition a ``d``-dimensional array into ``edge**d`` blocks."""
    plane = np.asarray(plane)
    if plane.ndim != d:
        raise ValueError(f"expected a {d}-dimensional array, got shape {plane.shape}")
    if min(plane.shape) < 1:
        raise ValueError(f"all dimensions must be >= 1, got {plane.shape}")
    return partition(plane, (edge,) * d)


def reassemble(blocks, grid, shape):
    return assemble(blocks, grid, shape)
