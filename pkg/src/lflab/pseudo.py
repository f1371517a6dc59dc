"""Pseudo-sequence interchange: view scan orders and YUV4MPEG2 export/import.

External video codecs are never run from here; these files are what one
would hand to them.
"""

import re

import numpy as np

from .errors import FormatError, ParameterError
from .lightfield import LightField, to_uint8
from .ndjpeg.color import rgb_to_ycbcr, ycbcr_to_rgb

SCAN_ORDERS = ("raster", "spiral")

# right, down, left, up in (row, col) steps
_SPIRAL_STEPS = ((0, 1), (1, 0), (0, -1), (-1, 0))


def scan_sequence(K, L, order="raster"):
    """Grid coordinates ``(row, col)`` in the requested visiting order.

    The spiral starts at the centre cell, steps right first and turns after
    arms of length 1, 1, 2, 2, 3, 3, ...; cells outside the grid are skipped.
    """
    if K < 1 or L < 1:
        raise ParameterError(f"grid must be at least 1x1, got {K}x{L}")
    if order == "raster":
        return [(r, c) for r in range(K) for c in range(L)]
    if order != "spiral":
        raise ParameterError(f"scan order must be one of {SCAN_ORDERS}, got {order!r}")
    r, c = (K - 1) // 2, (L - 1) // 2
    out = [(r, c)]
    arm = 1
    turn = 0
    while len(out) < K * L:
        for _ in range(2):
            dr, dc = _SPIRAL_STEPS[turn % 4]
            for _ in range(arm):
                r += dr
                c += dc
                if 0 <= r < K and 0 <= c < L:
                    out.append((r, c))
            turn += 1
        arm += 1
    return out


def export_y4m(lf, order="raster"):
    """Serialise the views as a 4:4:4 YUV4MPEG2 stream in scan order."""
    K, L, M, N = lf.dims
    header = f"YUV4MPEG2 W{M} H{N} F25:1 Ip A1:1 C444\n".encode("ascii")
    chunks = [header]
    for r, c in scan_sequence(K, L, order):
        rgb = np.moveaxis(lf.samples[r, c].astype(np.float64), 2, 0)  # (3, H, W)
        chunks.append(b"FRAME\n")
        chunks.append(to_uint8(rgb_to_ycbcr(rgb)).tobytes())
    return b"".join(chunks)


_TAG = re.compile(rb"^([A-Z])(\S*)$")


def _parse_header(line):
    tokens = line.split(b" ")
    if tokens[0] != b"YUV4MPEG2":
        raise FormatError(f"Y4M header: bad signature {tokens[0][:16]!r}")
    tags = {}
    for tok in tokens[1:]:
        if not tok:
            continue
        m = _TAG.match(tok)
        if not m:
            raise FormatError(f"Y4M header: malformed tag {tok!r}")
        tags[m.group(1)] = m.group(2)
    try:
        width = int(tags[b"W"])
        height = int(tags[b"H"])
    except (KeyError, ValueError):
        raise FormatError("Y4M header: missing or invalid W/H") from None
    if width < 1 or height < 1:
        raise FormatError(f"Y4M header: invalid size {width}x{height}")
    colour = tags.get(b"C", b"420jpeg")
    if colour not in (b"444", b"444p"):
        raise FormatError(f"Y4M header: colour space C{colour.decode(errors='replace')} is not 4:4:4")
    return width, height


def import_y4m(data, K, L, order="raster", disparity_min=0.0, disparity_max=0.0):
    """Rebuild a light field from a stream written by :func:`export_y4m`."""
    data = bytes(data)
    eol = data.find(b"\n")
    if eol < 0:
        raise FormatError("Y4M header: missing newline")
    width, height = _parse_header(data[:eol])
    frame_size = 3 * width * height
    coords = scan_sequence(K, L, order)
    samples = np.empty((K, L, height, width, 3), dtype=np.uint8)
    pos = eol + 1
    count = 0
    while pos < len(data):
        nl = data.find(b"\n", pos)
        if nl < 0 or not data.startswith(b"FRAME", pos) or nl - pos > 5 and data[pos + 5] != 0x20:
            raise FormatError(f"Y4M frame {count}: missing FRAME marker")
        pos = nl + 1
        if pos + frame_size > len(data):
            raise FormatError(f"Y4M frame {count}: truncated")
        if count >= K * L:
            raise FormatError(f"Y4M: more than {K * L} frames for a {K}x{L} grid")
        ycc = np.frombuffer(data, np.uint8, frame_size, pos).reshape(3, height, width)
        rgb = to_uint8(ycbcr_to_rgb(ycc.astype(np.float64)))
        r, c = coords[count]
        samples[r, c] = np.moveaxis(rgb, 0, 2)
        pos += frame_size
        count += 1
    if count != K * L:
        raise FormatError(f"Y4M: found {count} frames, expected {K * L} for a {K}x{L} grid")
    return LightField(samples, disparity_min, disparity_max)
