"""Fixed Annex K Huffman tables and the DC-DPCM / run-size entropy coder.

The DC tables are the Annex K tables with one extra symbol, category 12,
appended as the next canonical code at the longest existing code length
(``111111111`` for luminance, ``11111111111`` for chrominance).  See
``docs/bitstream.md``.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .. import kernels
from ..errors import BitstreamError, ParameterError
from .dct import EDGE
from .quant import AC_LIMIT

# (BITS, HUFFVAL) per ITU-T T.81 Annex K.3; BITS[i] = number of codes of length i + 1
DC_LUMA_BITS = [0, 1, 5, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0]
DC_LUMA_VALS = list(range(12))
DC_CHROMA_BITS = [0, 3, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0]
DC_CHROMA_VALS = list(range(12))

AC_LUMA_BITS = [0, 2, 1, 3, 3, 2, 4, 3, 5, 5, 4, 4, 0, 0, 1, 0x7D]
AC_LUMA_VALS = [
    0x01, 0x02, 0x03, 0x00, 0x04, 0x11, 0x05, 0x12,
    0x21, 0x31, 0x41, 0x06, 0x13, 0x51, 0x61, 0x07,
    0x22, 0x71, 0x14, 0x32, 0x81, 0x91, 0xA1, 0x08,
    0x23, 0x42, 0xB1, 0xC1, 0x15, 0x52, 0xD1, 0xF0,
    0x24, 0x33, 0x62, 0x72, 0x82, 0x09, 0x0A, 0x16,
    0x17, 0x18, 0x19, 0x1A, 0x25, 0x26, 0x27, 0x28,
    0x29, 0x2A, 0x34, 0x35, 0x36, 0x37, 0x38, 0x39,
    0x3A, 0x43, 0x44, 0x45, 0x46, 0x47, 0x48, 0x49,
    0x4A, 0x53, 0x54, 0x55, 0x56, 0x57, 0x58, 0x59,
    0x5A, 0x63, 0x64, 0x65, 0x66, 0x67, 0x68, 0x69,
    0x6A, 0x73, 0x74, 0x75, 0x76, 0x77, 0x78, 0x79,
    0x7A, 0x83, 0x84, 0x85, 0x86, 0x87, 0x88, 0x89,
    0x8A, 0x92, 0x93, 0x94, 0x95, 0x96, 0x97, 0x98,
    0x99, 0x9A, 0xA2, 0xA3, 0xA4, 0xA5, 0xA6, 0xA7,
    0xA8, 0xA9, 0xAA, 0xB2, 0xB3, 0xB4, 0xB5, 0xB6,
    0xB7, 0xB8, 0xB9, 0xBA, 0xC2, 0xC3, 0xC4, 0xC5,
    0xC6, 0xC7, 0xC8, 0xC9, 0xCA, 0xD2, 0xD3, 0xD4,
    0xD5, 0xD6, 0xD7, 0xD8, 0xD9, 0xDA, 0xE1, 0xE2,
    0xE3, 0xE4, 0xE5, 0xE6, 0xE7, 0xE8, 0xE9, 0xEA,
    0xF1, 0xF2, 0xF3, 0xF4, 0xF5, 0xF6, 0xF7, 0xF8,
    0xF9, 0xFA,
]
AC_CHROMA_BITS = [0, 2, 1, 2, 4, 4, 3, 4, 7, 5, 4, 4, 0, 1, 2, 0x77]
AC_CHROMA_VALS = [
    0x00, 0x01, 0x02, 0x03, 0x11, 0x04, 0x05, 0x21,
    0x31, 0x06, 0x12, 0x41, 0x51, 0x07, 0x61, 0x71,
    0x13, 0x22, 0x32, 0x81, 0x08, 0x14, 0x42, 0x91,
    0xA1, 0xB1, 0xC1, 0x09, 0x23, 0x33, 0x52, 0xF0,
    0x15, 0x62, 0x72, 0xD1, 0x0A, 0x16, 0x24, 0x34,
    0xE1, 0x25, 0xF1, 0x17, 0x18, 0x19, 0x1A, 0x26,
    0x27, 0x28, 0x29, 0x2A, 0x35, 0x36, 0x37, 0x38,
    0x39, 0x3A, 0x43, 0x44, 0x45, 0x46, 0x47, 0x48,
    0x49, 0x4A, 0x53, 0x54, 0x55, 0x56, 0x57, 0x58,
    0x59, 0x5A, 0x63, 0x64, 0x65, 0x66, 0x67, 0x68,
    0x69, 0x6A, 0x73, 0x74, 0x75, 0x76, 0x77, 0x78,
    0x79, 0x7A, 0x82, 0x83, 0x84, 0x85, 0x86, 0x87,
    0x88, 0x89, 0x8A, 0x92, 0x93, 0x94, 0x95, 0x96,
    0x97, 0x98, 0x99, 0x9A, 0xA2, 0xA3, 0xA4, 0xA5,
    0xA6, 0xA7, 0xA8, 0xA9, 0xAA, 0xB2, 0xB3, 0xB4,
    0xB5, 0xB6, 0xB7, 0xB8, 0xB9, 0xBA, 0xC2, 0xC3,
    0xC4, 0xC5, 0xC6, 0xC7, 0xC8, 0xC9, 0xCA, 0xD2,
    0xD3, 0xD4, 0xD5, 0xD6, 0xD7, 0xD8, 0xD9, 0xDA,
    0xE2, 0xE3, 0xE4, 0xE5, 0xE6, 0xE7, 0xE8, 0xE9,
    0xEA, 0xF2, 0xF3, 0xF4, 0xF5, 0xF6, 0xF7, 0xF8,
    0xF9, 0xFA,
]

MAX_DC_CATEGORY = 12
MAX_DC_DIFF = (1 << MAX_DC_CATEGORY) - 1


def _extend_dc(bits, vals):
    """Append DC category 12 as the next canonical code at the longest length."""
    bits = list(bits)
    longest = max(i for i, b in enumerate(bits) if b)
    bits[longest] += 1
    return bits, vals + [MAX_DC_CATEGORY]


def canonical_codes(bits, vals):
    """Annex C code assignment: returns ``{symbol: (code, length)}``."""
    codes = {}
    code = 0
    k = 0
    for length in range(1, 17):
        for _ in range(bits[length - 1]):
            codes[vals[k]] = (code, length)
            code += 1
            k += 1
        code <<= 1
    return codes


@dataclass(frozen=True, eq=False)
class HuffmanTable:
    """One fixed table in encoder form (code/length per symbol) and decoder form."""

    bits: tuple
    vals: tuple
    code: np.ndarray
    length: np.ndarray
    maxcode: np.ndarray
    valptr: np.ndarray
    mincode: np.ndarray
    huffval: np.ndarray

    @classmethod
    def build(cls, bits, vals, size):
        codes = canonical_codes(bits, vals)
        code = np.zeros(size, dtype=np.int64)
        length = np.zeros(size, dtype=np.int64)
        for sym, (c, n) in codes.items():
            code[sym] = c
            length[sym] = n
        # Annex F.2.2.3 decoder tables, indexed by code length 1..16
        maxcode = np.full(17, -1, dtype=np.int64)
        valptr = np.zeros(17, dtype=np.int64)
        mincode = np.zeros(17, dtype=np.int64)
        c = 0
        k = 0
        for n in range(1, 17):
            count = bits[n - 1]
            if count:
                valptr[n] = k
                mincode[n] = c
                c += count
                k += count
                maxcode[n] = c - 1
            c <<= 1
        return cls(
            tuple(bits),
            tuple(vals),
            code,
            length,
            maxcode,
            valptr,
            mincode,
            np.array(vals, dtype=np.int64),
        )

    def encoder_arrays(self):
        return self.code, self.length

    def decoder_arrays(self):
        return self.maxcode, self.valptr, self.mincode, self.huffval

    def code_string(self, symbol):
        """Code of ``symbol`` as a '0'/'1' string (for docs and tests)."""
        n = int(self.length[symbol])
        if n == 0:
            raise KeyError(symbol)
        return format(int(self.code[symbol]), f"0{n}b")


@lru_cache(maxsize=None)
def tables(channel_class):
    """``(dc_table, ac_table)`` for ``'luma'`` or ``'chroma'``."""
    if channel_class == "luma":
        dc_bits, dc_vals = _extend_dc(DC_LUMA_BITS, DC_LUMA_VALS)
        ac = HuffmanTable.build(AC_LUMA_BITS, AC_LUMA_VALS, 256)
    elif channel_class == "chroma":
        dc_bits, dc_vals = _extend_dc(DC_CHROMA_BITS, DC_CHROMA_VALS)
        ac = HuffmanTable.build(AC_CHROMA_BITS, AC_CHROMA_VALS, 256)
    else:
        raise ValueError(f"channel class must be 'luma' or 'chroma', got {channel_class!r}")
    return HuffmanTable.build(dc_bits, dc_vals, MAX_DC_CATEGORY + 1), ac


@dataclass(frozen=True)
class Payload:
    """An entropy-coded bit sequence, padded to whole bytes with 1-bits."""

    data: bytes
    bit_length: int

    def __post_init__(self):
        if not 0 <= self.bit_length <= 8 * len(self.data) or len(self.data) != (self.bit_length + 7) // 8:
            raise BitstreamError(
                f"payload of {len(self.data)} bytes cannot hold {self.bit_length} bits"
            )


def _check_codable(flat):
    ac = flat[:, 1:]
    if ac.size and np.abs(ac).max() > AC_LIMIT:
        raise ParameterError(f"AC coefficient outside [-{AC_LIMIT}, {AC_LIMIT}]")
    diff = np.diff(flat[:, 0], prepend=0)
    if diff.size and np.abs(diff).max() > MAX_DC_DIFF:
        raise ParameterError(
            f"DC difference exceeds {MAX_DC_DIFF} (category > {MAX_DC_CATEGORY})"
        )


def entropy_encode(blocks, order, channel_class):
    """Code integer blocks ``(n_blocks, 8, ..., 8)`` in natural index order."""
    blocks = np.asarray(blocks)
    nb = blocks.shape[0]
    flat = blocks.reshape(nb, -1)
    if flat.shape[1] != len(order):
        raise ParameterError(f"blocks hold {flat.shape[1]} coefficients, order has {len(order)}")
    scanned = np.ascontiguousarray(flat[:, order.flat], dtype=np.int32)
    _check_codable(scanned)
    dc, ac = tables(channel_class)
    data, nbits = kernels.huffman_encode(scanned, *dc.encoder_arrays(), *ac.encoder_arrays())
    return Payload(bytes(data), int(nbits))


def entropy_decode(bits, block_count, d, channel_class, order=None):
    """Inverse of :func:`entropy_encode`; the whole payload must be consumed."""
    from .zigzag import zigzag_order

    if order is None:
        order = zigzag_order(d)
    n = EDGE**d
    dc, ac = tables(channel_class)
    payload = np.frombuffer(bits.data, dtype=np.uint8)
    scanned, status, offset = kernels.huffman_decode(
        payload, bits.bit_length, block_count, n, dc.decoder_arrays(), ac.decoder_arrays()
    )
    if status != kernels.DECODE_OK:
        raise BitstreamError(kernels.DECODE_MESSAGES[status], offset)
    if offset != bits.bit_length:
        raise BitstreamError(
            f"{bits.bit_length - offset} unused bits after {block_count} blocks", offset
        )
    out = np.empty((block_count, n), dtype=np.int64)
    out[:, order.flat] = scanned
    return out.reshape((block_count,) + (EDGE,) * d)
