"""PSNR with the MSE pooled over all three colour components."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, ShapeError
from .lightfield import LightField, View, to_planar, to_uint8
from .refocus import RenderedView, render_refocused

INF = math.inf


@dataclass(frozen=True)
class RDPoint:
    mode: str
    quality: int
    bpp: float
    psnr_mean: float
    psnr_direct: float | None = None


def _samples(x):
    if isinstance(x, (View, LightField)):
        return x.samples.astype(np.int64)
    if isinstance(x, RenderedView):
        x = x.data
    x = np.asarray(x)
    if x.dtype == np.uint8:
        return x.astype(np.int64)
    return to_uint8(x).astype(np.int64)


def mse(a, b):
    a = _samples(a)
    b = _samples(b)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")
    diff = a - b
    return float(np.mean(diff * diff))


def psnr_from_mse(value):
    if value == 0:
        return INF
    return 10.0 * math.log10(255.0**2 / value)


def psnr(a, b):
    """PSNR in dB; identical inputs give ``math.inf``.

    Real-valued inputs are first rounded (half away from zero) and clamped
    to 8 bits.
    """
    return psnr_from_mse(mse(a, b))


def direct_psnr(original, decoded):
    if original.dims != decoded.dims:
        raise ShapeError(f"geometry mismatch: {original.dims} vs {decoded.dims}")
    return psnr(original, decoded)


def mean_focal_psnr(original, decoded, alphas):
    """Mean of per-focal-plane PSNRs between renders of both light fields.

    Returns ``(mean, per_alpha)``.
    """
    if original.dims != decoded.dims:
        raise ShapeError(f"geometry mismatch: {original.dims} vs {decoded.dims}")
    alphas = list(alphas)
    if not alphas:
        raise ParameterError("alphas must be non-empty")
    pa = to_planar(original)
    pb = to_planar(decoded)
    values = [psnr(render_refocused(pa, a), render_refocused(pb, a)) for a in alphas]
    if any(math.isinf(v) for v in values):
        return INF, values
    return float(np.mean(values)), values
