"""BT.601 full-range RGB <-> YCbCr on planar real-valued data."""

import numpy as np

from ..lightfield import PlanarField

_FORWARD = np.array(
    [
        [0.299, 0.587, 0.114],
        [-0.168736, -0.331264, 0.5],
        [0.5, -0.418688, -0.081312],
    ]
)
_OFFSET = np.array([0.0, 128.0, 128.0])
_INVERSE = np.linalg.inv(_FORWARD)


def rgb_to_ycbcr(x):
    """``x`` has channels on axis 0."""
    x = np.asarray(x, dtype=np.float64)
    out = np.tensordot(_FORWARD, x, axes=(1, 0))
    out += _OFFSET.reshape((3,) + (1,) * (x.ndim - 1))
    return out


def ycbcr_to_rgb(x):
    x = np.asarray(x, dtype=np.float64)
    centred = x - _OFFSET.reshape((3,) + (1,) * (x.ndim - 1))
    return np.tensordot(_INVERSE, centred, axes=(1, 0))


def color_transform(pf, direction="forward"):
    if direction == "forward":
        return PlanarField(rgb_to_ycbcr(pf.data))
    if direction == "inverse":
        return PlanarField(ycbcr_to_rgb(pf.data))
    raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")
