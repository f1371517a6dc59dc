"""Shift-sum refocusing with bilinear interpolation and clamp-to-edge sampling.

View ``(k, l)`` is sampled at ``(m + alpha*k_c, n + alpha*l_c)`` where
``k_c = k - (K-1)/2`` and ``l_c = l - (L-1)/2`` are offsets from the grid
centre, and the rendered image is the plain average over all views.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ParameterError, ShapeError
from .lightfield import LightField, PlanarField, View, to_planar, to_uint8


@dataclass(frozen=True)
class RefocusParams:
    alpha: float
    boundary: str = "clamp-to-edge"
    centering: str = "central-reference"

    def __post_init__(self):
        if not math.isfinite(self.alpha):
            raise ParameterError(f"alpha must be finite, got {self.alpha}")
        if self.boundary != "clamp-to-edge":
            raise ParameterError(f"unsupported boundary mode {self.boundary!r}")
        if self.centering != "central-reference":
            raise ParameterError(f"unsupported centering {self.centering!r}")


@dataclass(frozen=True, eq=False)
class RenderedView:
    """A refocused image; ``data`` has shape ``(3, M, N)`` (channel, m, n)."""

    data: np.ndarray
    alpha: float

    @property
    def width(self):
        return self.data.shape[1]

    @property
    def height(self):
        return self.data.shape[2]

    def to_view(self):
        """8-bit :class:`View` (round half away from zero, clamp)."""
        return View(np.transpose(to_uint8(self.data), (2, 1, 0)))


@dataclass(frozen=True)
class FocalStack:
    views: tuple

    def __post_init__(self):
        alphas = [v.alpha for v in self.views]
        if any(b <= a for a, b in zip(alphas, alphas[1:])):
            raise ParameterError("focal stack alphas must be strictly increasing")

    @property
    def alphas(self):
        return [v.alpha for v in self.views]

    def __len__(self):
        return len(self.views)

    def __iter__(self):
        return iter(self.views)

    def __getitem__(self, i):
        return self.views[i]


def _planar(field):
    if isinstance(field, LightField):
        return to_planar(field)
    if isinstance(field, PlanarField):
        return field
    raise ShapeError(f"expected a LightField or PlanarField, got {type(field).__name__}")


def render_refocused(field, params):
    """Render one refocused image; ``params`` is a RefocusParams or a bare alpha."""
    if not isinstance(params, RefocusParams):
        params = RefocusParams(float(params))
    pf = _planar(field)
    return RenderedView(kernels.refocus(pf.data, params.alpha), params.alpha)


def render_focal_stack(field, alphas):
    alphas = [float(a) for a in alphas]
    if not alphas:
        raise ParameterError("alphas must be non-empty")
    if any(b <= a for a, b in zip(alphas, alphas[1:])):
        raise ParameterError(f"alphas must be strictly increasing, got {alphas}")
    pf = _planar(field)
    return FocalStack(tuple(render_refocused(pf, RefocusParams(a)) for a in alphas))


def make_alpha_sweep(disparity_min, disparity_max, count):
    """``count`` evenly spaced focal parameters over the disparity range.

    ``count == 1`` returns ``[disparity_min]``.
    """
    if isinstance(count, bool) or int(count) != count or count < 1:
        raise ParameterError(f"count must be an integer >= 1, got {count!r}")
    if not disparity_min <= disparity_max:
        raise ParameterError(f"disparity_min {disparity_min} exceeds disparity_max {disparity_max}")
    count = int(count)
    if count == 1:
        return [float(disparity_min)]
    return [float(a) for a in np.linspace(disparity_min, disparity_max, count)]
