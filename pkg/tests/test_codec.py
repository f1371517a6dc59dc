import struct

import numpy as np
import pytest

from lflab.errors import BitstreamError, ParameterError
from lflab.lightfield import LightField, PlanarField, to_planar
from lflab.metrics import direct_psnr
from lflab.ndjpeg import (
    CodecConfig,
    EncodedStream,
    bits_per_pixel,
    color_transform,
    decode,
    encode,
    entropy_decode,
)

from conftest import random_lf


def test_color_transform_anchors():
    px = PlanarField(np.array([0.0, 0.0, 0.0, 255.0, 255.0, 255.0]).reshape(2, 3).T.reshape(3, 1, 1, 1, 2))
    ycc = color_transform(px, "forward").data.reshape(3, 2)
    np.testing.assert_allclose(ycc[:, 0], [0, 128, 128], atol=1e-9)
    np.testing.assert_allclose(ycc[:, 1], [255, 128, 128], atol=1e-9)


def test_color_transform_inverse(rng):
    pf = PlanarField(rng.uniform(0, 255, size=(3, 2, 2, 5, 5)))
    back = color_transform(color_transform(pf, "forward"), "inverse")
    np.testing.assert_allclose(back.data, pf.data, rtol=0, atol=1e-9)


def test_constant_8x8_view_is_dc_only():
    lf = LightField(np.full((1, 1, 8, 8, 3), 200, dtype=np.uint8))
    stream = encode(lf, CodecConfig(2, 50))
    for payload, cls in zip(stream.payloads, ("luma", "chroma", "chroma")):
        blocks = entropy_decode(payload, 1, 2, cls)
        assert blocks.shape == (1, 8, 8)
        ac = blocks.reshape(-1)[1:]
        assert not ac.any()


@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("q", [1, 37, 90])
def test_mid_gray_is_exact(d, q):
    lf = LightField(np.full((3, 2, 9, 11, 3), 128, dtype=np.uint8))
    assert decode(encode(lf, CodecConfig(d, q))) == lf


def test_single_view_modes_agree_at_identity_tables(rng):
    lf = random_lf(rng, 1, 1, W=16, H=12)
    outs = [decode(encode(lf, CodecConfig(d, 100))) for d in (2, 3, 4)]
    assert outs[0] == outs[1] == outs[2]


def test_2d_near_lossless_at_100(rng):
    lf = random_lf(rng, 2, 2, W=24, H=16)
    assert direct_psnr(lf, decode(encode(lf, CodecConfig(2, 100)))) >= 50.0


@pytest.mark.parametrize("d", [2, 3, 4])
def test_header_dims_survive(rng, d):
    lf = random_lf(rng, 3, 5, W=13, H=7)
    stream = encode(lf, CodecConfig(d, 60))
    assert stream.dims == lf.dims
    assert decode(stream.to_bytes()).dims == lf.dims


def test_container_layout(rng):
    lf = random_lf(rng, 2, 3, W=10, H=9)
    raw = encode(lf, CodecConfig(3, 42)).to_bytes()
    assert raw[:4] == b"LFJ1"
    assert struct.unpack(">BBBBBBHHHH", raw[4:18]) == (1, 3, 42, 8, 0, 0, 2, 3, 10, 9)
    stream = EncodedStream.from_bytes(raw)
    pos = 18
    for p in stream.payloads:
        (nbits,) = struct.unpack_from(">I", raw, pos)
        assert nbits == p.bit_length
        pos += 4 + (nbits + 7) // 8
    assert pos == len(raw) == len(stream)
    assert stream.to_bytes() == raw


@pytest.mark.parametrize(
    "mutate, message",
    [
        (lambda b: b"LFJ2" + b[4:], "magic"),
        (lambda b: b[:4] + b"\x02" + b[5:], "version"),
        (lambda b: b[:5] + b"\x05" + b[6:], "dimensionality"),
        (lambda b: b[:7] + b"\x10" + b[8:], "block edge"),
        (lambda b: b[:8] + b"\x01" + b[9:], "chroma"),
        (lambda b: b[:10], "header"),
        (lambda b: b[:-1], "truncated"),
        (lambda b: b + b"\x00", "trailing"),
    ],
)
def test_corrupt_container(rng, mutate, message):
    raw = encode(random_lf(rng), CodecConfig(2, 50)).to_bytes()
    with pytest.raises(BitstreamError, match=message):
        decode(mutate(raw))


def test_corrupt_payload_reports_channel(rng):
    stream = encode(random_lf(rng), CodecConfig(2, 50))
    y = stream.payloads[0]
    bad = EncodedStream(2, 50, *stream.dims, (type(y)(y.data[:1], 8),) + stream.payloads[1:])
    with pytest.raises(BitstreamError, match="Y channel"):
        decode(bad)


def test_bits_per_pixel_arithmetic():
    assert bits_per_pixel(b"\x00" * 1000, (8, 8, 100, 100)) == pytest.approx(0.0125)
    assert bits_per_pixel(1000, (8, 8, 100, 50)) == pytest.approx(0.025)


def test_bits_per_pixel_counts_header(rng):
    lf = random_lf(rng)
    s = encode(lf, CodecConfig(4, 50))
    assert bits_per_pixel(s, lf.dims) == 8 * len(s.to_bytes()) / lf.pixel_count


@pytest.mark.parametrize("d", [2, 3, 4])
def test_rate_and_quality_monotone(small_baseline_lf, d):
    lf = small_baseline_lf
    qualities = list(range(10, 100, 10))
    bpp, quality = [], []
    for q in qualities:
        s = encode(lf, CodecConfig(d, q))
        bpp.append(bits_per_pixel(s, lf.dims))
        quality.append(direct_psnr(lf, decode(s)))
    drops = sum(b < a for a, b in zip(bpp, bpp[1:]))
    assert drops <= max(1, len(bpp) // 100)
    assert all(b >= a - 0.1 for a, b in zip(quality[::2], quality[2::2]))


def test_2d_mode_is_per_view(rng):
    lf = random_lf(rng, 2, 2, W=12, H=10)
    whole = decode(encode(lf, CodecConfig(2, 35)))
    for r in range(2):
        for c in range(2):
            single = LightField(lf.samples[r : r + 1, c : c + 1])
            alone = decode(encode(single, CodecConfig(2, 35)))
            assert alone.view(0, 0) == whole.view(r, c)


def test_config_validation():
    with pytest.raises(ParameterError):
        CodecConfig(5, 50)
    with pytest.raises(ParameterError):
        CodecConfig(2, 0)
    with pytest.raises(ParameterError):
        CodecConfig(2, 101)
    assert CodecConfig.from_mode("4d", 10) == CodecConfig(4, 10)
    assert CodecConfig.from_mode("jpeg3d", 10).mode == "jpeg3d"
    with pytest.raises(ParameterError):
        CodecConfig.from_mode("5d", 10)


def test_planar_boundary(rng):
    lf = random_lf(rng, 2, 2, W=8, H=8)
    # decoding at near-lossless 2D reproduces the planar data within rounding noise
    out = decode(encode(lf, CodecConfig(2, 100)))
    assert np.abs(to_planar(out).data - to_planar(lf).data).max() <= 3
