"""The N-dimensional JPEG pipeline: encode/decode whole light fields."""

from dataclasses import dataclass

import numpy as np

from ..errors import BitstreamError, ParameterError
from ..lightfield import LightField, PlanarField, from_planar, to_planar
from .blocks import assemble, partition
from .color import color_transform
from .container import CHANNELS, EncodedStream
from .dct import EDGE, dct_blocks
from .huffman import entropy_decode, entropy_encode
from .quant import build_quant_table, dequantize, quantize
from .zigzag import zigzag_order

CHANNEL_CLASS = ("luma", "chroma", "chroma")
MODES = {"jpeg2d": 2, "jpeg3d": 3, "jpeg4d": 4}


@dataclass(frozen=True)
class CodecConfig:
    dimensionality: int = 4
    quality: int = 50
    block_edge: int = EDGE
    chroma_mode: str = "4:4:4"

    def __post_init__(self):
        if self.dimensionality not in (2, 3, 4):
            raise ParameterError(f"dimensionality must be 2, 3 or 4, got {self.dimensionality}")
        if isinstance(self.quality, bool) or not isinstance(self.quality, (int, np.integer)):
            raise ParameterError(f"quality must be an integer, got {self.quality!r}")
        if not 1 <= self.quality <= 100:
            raise ParameterError(f"quality must be in 1..100, got {self.quality}")
        if self.block_edge != EDGE:
            raise ParameterError(f"block edge is fixed at {EDGE}")
        if self.chroma_mode != "4:4:4":
            raise ParameterError("only 4:4:4 chroma is supported")

    @property
    def mode(self):
        return f"jpeg{self.dimensionality}d"

    @classmethod
    def from_mode(cls, mode, quality):
        """Accepts ``jpeg3d`` as well as the short ``3d``."""
        key = mode if mode.startswith("jpeg") else f"jpeg{mode}"
        if key not in MODES:
            raise ParameterError(f"unknown mode {mode!r}; expected one of {sorted(MODES)}")
        return cls(MODES[key], quality)


def _layout(d, K, L, M, N):
    """Working-array shape and block shape for each coding mode."""
    if d == 2:
        return (K * L, M, N), (1, EDGE, EDGE)
    if d == 3:
        return (K * L, M, N), (EDGE, EDGE, EDGE)
    return (K, L, M, N), (EDGE,) * 4


def _block_count(d, dims):
    shape, block_shape = _layout(d, *dims)
    count = 1
    for s, e in zip(shape, block_shape):
        count *= -(-s // e)
    return count


def encode(lf, cfg):
    """Compress a :class:`LightField` into an :class:`EncodedStream`."""
    d = cfg.dimensionality
    K, L, M, N = lf.dims
    if max(lf.dims) > 0xFFFF:
        raise ParameterError(f"light-field dimensions {lf.dims} exceed the 16-bit header fields")
    ycc = color_transform(to_planar(lf), "forward").data - 128.0
    shape, block_shape = _layout(d, K, L, M, N)
    order = zigzag_order(d)
    payloads = []
    for ch, cls in zip(ycc, CHANNEL_CLASS):
        blocks, _ = partition(ch.reshape(shape), block_shape)
        blocks = blocks.reshape((-1,) + (EDGE,) * d)
        coeffs = dct_blocks(blocks, d, "forward")
        q = quantize(coeffs, build_quant_table(d, cfg.quality, cls))
        payloads.append(entropy_encode(q, order, cls))
    return EncodedStream(d, cfg.quality, K, L, M, N, tuple(payloads))


def decode(stream):
    """Reconstruct the :class:`LightField` held in ``stream`` (bytes or EncodedStream)."""
    if not isinstance(stream, EncodedStream):
        stream = EncodedStream.from_bytes(stream)
    d = stream.dimensionality
    K, L, M, N = stream.dims
    shape, block_shape = _layout(d, K, L, M, N)
    grid = tuple(-(-s // e) for s, e in zip(shape, block_shape))
    nb = _block_count(d, stream.dims)
    order = zigzag_order(d)
    planes = []
    for name, payload, cls in zip(CHANNELS, stream.payloads, CHANNEL_CLASS):
        try:
            q = entropy_decode(payload, nb, d, cls, order)
        except BitstreamError as exc:
            raise BitstreamError(f"{name} channel: {exc}") from None
        coeffs = dequantize(q, build_quant_table(d, stream.quality, cls))
        blocks = dct_blocks(coeffs, d, "inverse").reshape((nb,) + block_shape)
        planes.append(assemble(blocks, grid, shape).reshape(K, L, M, N))
    ycc = np.stack(planes) + 128.0
    return from_planar(color_transform(PlanarField(ycc), "inverse"))


def bits_per_pixel(stream, lf_dims):
    """Total container size in bits over ``K*L*M*N``.

    ``stream`` may be an :class:`EncodedStream`, raw bytes, or a byte count.
    """
    if isinstance(stream, EncodedStream):
        nbytes = len(stream)
    elif isinstance(stream, (bytes, bytearray, memoryview)):
        nbytes = len(stream)
    else:
        nbytes = int(stream)
    pixels = 1
    for v in lf_dims:
        if v < 1:
            raise ParameterError(f"dimensions must be positive, got {lf_dims}")
        pixels *= v
    return 8.0 * nbytes / pixels
