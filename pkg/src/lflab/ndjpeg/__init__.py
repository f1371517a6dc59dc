"""JPEG-style lossy codec for 2-, 3- and 4-dimensional light-field data."""

from .blocks import pad_and_partition, reassemble
from .codec import CodecConfig, bits_per_pixel, decode, encode
from .color import color_transform
from .container import EncodedStream
from .dct import dct, dct_blocks
from .huffman import Payload, entropy_decode, entropy_encode
from .quant import QuantTable, build_quant_table, dequantize, quantize
from .zigzag import ZigzagOrder, zigzag_order

__all__ = [
    "CodecConfig",
    "EncodedStream",
    "Payload",
    "QuantTable",
    "ZigzagOrder",
    "bits_per_pixel",
    "build_quant_table",
    "color_transform",
    "dct",
    "dct_blocks",
    "decode",
    "dequantize",
    "encode",
    "entropy_decode",
    "entropy_encode",
    "pad_and_partition",
    "quantize",
    "reassemble",
    "zigzag_order",
]
