import io
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from PIL import Image

from lflab.errors import FormatError, LoadError, NumericError
from lflab.lightfield import (
    LightField,
    Manifest,
    PlanarField,
    View,
    from_planar,
    load_light_field,
    read_ppm,
    save_light_field,
    to_planar,
    write_ppm,
)

from conftest import random_lf


def test_read_smallest_ppm():
    v = read_ppm(b"P6 1 1 255 " + bytes([10, 20, 30]))
    assert (v.width, v.height) == (1, 1)
    assert v.samples[0, 0].tolist() == [10, 20, 30]


def test_read_header_dims():
    v = read_ppm(b"P6 2 1 255\n" + bytes(6))
    assert (v.width, v.height) == (2, 1)


def test_comments_match_pillow():
    raster = bytes(range(36))
    with_comments = b"P6\n# made by hand\n3 # width\n4\n#maxval next\n255\n" + raster
    ours = read_ppm(with_comments)
    plain = read_ppm(b"P6\n3 4\n255\n" + raster)
    pil = np.asarray(Image.open(io.BytesIO(with_comments)).convert("RGB"))
    assert ours == plain
    np.testing.assert_array_equal(ours.samples, pil)


@pytest.mark.parametrize(
    "data, field",
    [
        (b"P5 1 1 255 abc", "magic"),
        (b"P6 1 1 65535 abcdef", "maxval"),
        (b"P6 2 2 255 abc", "payload"),
        (b"P6 x 2 255 abc", "width"),
        (b"P6 1", "height"),
    ],
)
def test_malformed_ppm_names_field(data, field):
    with pytest.raises(FormatError, match=field):
        read_ppm(data)


def test_write_ppm_exact_bytes():
    v = View(np.zeros((1, 1, 3), dtype=np.uint8))
    out = write_ppm(v)
    assert out == b"P6\n1 1\n255\n\x00\x00\x00"
    assert len(out) == 11 + 3


def test_random_2x2_round_trip(rng):
    v = View(rng.integers(0, 256, size=(2, 2, 3), dtype=np.uint8))
    assert read_ppm(write_ppm(v)) == v


@settings(max_examples=60, deadline=None)
@given(arrays(np.uint8, st.tuples(st.integers(1, 9), st.integers(1, 9), st.just(3))))
def test_ppm_round_trip_property(samples):
    v = View(samples)
    assert read_ppm(write_ppm(v)) == v


def _write_grid(tmp_path, lf, pattern="v_{row}_{col}.ppm", **overrides):
    fields = dict(
        name="t",
        grid_rows=lf.grid_rows,
        grid_cols=lf.grid_cols,
        width=lf.width,
        height=lf.height,
        file_pattern=pattern,
        disparity_min=lf.disparity_min,
        disparity_max=lf.disparity_max,
    )
    fields.update(overrides)
    for r in range(lf.grid_rows):
        for c in range(lf.grid_cols):
            (tmp_path / pattern.format(row=r, col=c)).write_bytes(write_ppm(lf.view(r, c)))
    path = tmp_path / "manifest.json"
    path.write_text(json.dumps(fields))
    return path


def test_load_degenerate_grid(tmp_path, rng):
    lf = random_lf(rng, 1, 1)
    loaded = load_light_field(_write_grid(tmp_path, lf))
    assert (loaded.grid_rows, loaded.grid_cols) == (1, 1)
    assert loaded == lf


def test_load_row_major(tmp_path, rng):
    lf = random_lf(rng, 2, 2, lo=-1, hi=1)
    loaded = load_light_field(_write_grid(tmp_path, lf, "img{row:02}-{col:02}.ppm"))
    assert loaded.views[1] == lf.view(0, 1)
    assert (loaded.disparity_min, loaded.disparity_max) == (-1.0, 1.0)
    # deterministic
    assert load_light_field(tmp_path / "manifest.json") == loaded


def test_black_fence_geometry(tmp_path):
    """Table 1 geometry: 15 x 15 views of 625 x 434."""
    view = write_ppm(View(np.zeros((434, 625, 3), dtype=np.uint8)))
    for r in range(15):
        for c in range(15):
            (tmp_path / f"{r:02}_{c:02}.ppm").write_bytes(view)
    m = Manifest("black_fence", 15, 15, 625, 434, "{row:02}_{col:02}.ppm", -1.0, 1.0)
    (tmp_path / "m.json").write_text(m.to_json())
    lf = load_light_field(tmp_path / "m.json")
    assert lf.dims == (15, 15, 625, 434)


def test_load_errors_name_coordinates(tmp_path, rng):
    lf = random_lf(rng, 2, 2)
    path = _write_grid(tmp_path, lf)
    (tmp_path / "v_1_0.ppm").unlink()
    with pytest.raises(LoadError, match=r"\(1, 0\)"):
        load_light_field(path)
    (tmp_path / "v_1_0.ppm").write_bytes(write_ppm(View(np.zeros((1, 1, 3), np.uint8))))
    with pytest.raises(LoadError, match=r"\(1, 0\).*does not match"):
        load_light_field(path)


def test_pattern_collision(tmp_path, rng):
    lf = random_lf(rng, 1, 1)
    _write_grid(tmp_path, lf, "same.ppm")
    m = Manifest("x", 2, 2, lf.width, lf.height, "v_{row}.ppm")
    (tmp_path / "m.json").write_text(m.to_json())
    with pytest.raises(LoadError, match=r"\(0, 1\)"):
        load_light_field(tmp_path / "m.json")


def test_manifest_key_checks():
    good = Manifest("n", 1, 2, 3, 4, "{row}_{col}.ppm", -1, 1)
    assert Manifest.from_json(good.to_json()) == good
    obj = json.loads(good.to_json())
    del obj["width"]
    with pytest.raises(FormatError, match="missing"):
        Manifest.from_json(json.dumps(obj))
    with pytest.raises(FormatError):
        Manifest("n", 1, 1, 1, 1, "{row}_{view}.ppm").view_path(0, 0)


def test_save_then_load(tmp_path, rng):
    lf = random_lf(rng, 3, 2, lo=-0.5, hi=2)
    assert load_light_field(save_light_field(lf, tmp_path / "out")) == lf


def test_planar_endpoints_and_rounding():
    lf = LightField(np.full((1, 1, 1, 1, 3), 255, dtype=np.uint8))
    pf = to_planar(lf)
    assert pf.data.dtype == np.float64 and pf.data.max() == 255.0
    assert from_planar(pf) == lf
    vals = np.array([127.5, -3.2, 300.0]).reshape(3, 1, 1, 1, 1)
    assert from_planar(PlanarField(vals)).samples.ravel().tolist() == [128, 0, 255]


def test_planar_index_order(rng):
    lf = random_lf(rng, 2, 3, W=5, H=4)
    pf = to_planar(lf)
    assert pf.dims == (2, 3, 5, 4)
    # (c, k, l, m, n) <-> samples[k, l, n, m, c]
    assert pf.data[2, 1, 2, 4, 3] == lf.samples[1, 2, 3, 4, 2]


def test_from_planar_rejects_nan():
    bad = np.zeros((3, 1, 1, 1, 1))
    bad[0, 0, 0, 0, 0] = np.nan
    with pytest.raises(NumericError):
        from_planar(PlanarField(bad))


@settings(max_examples=40, deadline=None)
@given(arrays(np.uint8, st.tuples(*[st.integers(1, 3)] * 4, st.just(3))))
def test_planar_round_trip_property(samples):
    lf = LightField(samples)
    assert from_planar(to_planar(lf)) == lf
