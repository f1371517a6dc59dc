"""LFJ1 container: fixed 18-byte header, then three length-prefixed payloads."""

import struct
from dataclasses import dataclass

from ..errors import BitstreamError
from .huffman import Payload

MAGIC = b"LFJ1"
VERSION = 1
BLOCK_EDGE = 8
CHROMA_444 = 0
_HEADER = struct.Struct(">4sBBBBBBHHHH")
HEADER_SIZE = _HEADER.size
CHANNELS = ("Y", "Cb", "Cr")


@dataclass(frozen=True)
class EncodedStream:
    dimensionality: int
    quality: int
    grid_rows: int
    grid_cols: int
    width: int
    height: int
    payloads: tuple  # three Payload objects: Y, Cb, Cr

    def __post_init__(self):
        if self.dimensionality not in (2, 3, 4):
            raise BitstreamError(f"header: unsupported dimensionality {self.dimensionality}")
        if not 1 <= self.quality <= 100:
            raise BitstreamError(f"header: quality {self.quality} outside 1..100")
        for name in ("grid_rows", "grid_cols", "width", "height"):
            v = getattr(self, name)
            if not 1 <= v <= 0xFFFF:
                raise BitstreamError(f"header: {name} {v} outside 1..65535")
        if len(self.payloads) != len(CHANNELS):
            raise BitstreamError(f"expected {len(CHANNELS)} channel payloads, got {len(self.payloads)}")

    @property
    def dims(self):
        return (self.grid_rows, self.grid_cols, self.width, self.height)

    def to_bytes(self):
        parts = [
            _HEADER.pack(
                MAGIC,
                VERSION,
                self.dimensionality,
                self.quality,
                BLOCK_EDGE,
                CHROMA_444,
                0,
                self.grid_rows,
                self.grid_cols,
                self.width,
                self.height,
            )
        ]
        for p in self.payloads:
            parts.append(struct.pack(">I", p.bit_length))
            parts.append(p.data)
        return b"".join(parts)

    def __len__(self):
        return HEADER_SIZE + sum(4 + len(p.data) for p in self.payloads)

    @classmethod
    def from_bytes(cls, data):
        data = bytes(data)
        if len(data) < HEADER_SIZE:
            raise BitstreamError(f"header: need {HEADER_SIZE} bytes, got {len(data)}")
        magic, version, d, quality, edge, chroma, reserved, K, L, M, N = _HEADER.unpack_from(data)
        if magic != MAGIC:
            raise BitstreamError(f"header: bad magic {magic!r}")
        if version != VERSION:
            raise BitstreamError(f"header: unsupported version {version}")
        if edge != BLOCK_EDGE:
            raise BitstreamError(f"header: block edge {edge}, expected {BLOCK_EDGE}")
        if chroma != CHROMA_444:
            raise BitstreamError(f"header: chroma mode {chroma}, only 4:4:4 (0) is supported")
        if reserved != 0:
            raise BitstreamError(f"header: reserved byte is {reserved}, expected 0")
        pos = HEADER_SIZE
        payloads = []
        for ch in CHANNELS:
            if pos + 4 > len(data):
                raise BitstreamError(f"{ch} payload: missing bit-length field")
            (nbits,) = struct.unpack_from(">I", data, pos)
            pos += 4
            nbytes = (nbits + 7) // 8
            if pos + nbytes > len(data):
                raise BitstreamError(
                    f"{ch} payload: truncated, need {nbytes} bytes, have {len(data) - pos}"
                )
            payloads.append(Payload(data[pos : pos + nbytes], nbits))
            pos += nbytes
        if pos != len(data):
            raise BitstreamError(f"{len(data) - pos} trailing bytes after last payload")
        return cls(d, quality, K, L, M, N, tuple(payloads))
