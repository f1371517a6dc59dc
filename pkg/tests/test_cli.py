import numpy as np
import pytest

from lflab.cli import main
from lflab.lightfield import load_light_field, read_ppm, save_light_field

from conftest import random_lf


@pytest.fixture
def manifest(tmp_path, rng):
    return save_light_field(random_lf(rng, 3, 3, W=16, H=8), tmp_path / "src", "lf")


def test_encode_then_decode(manifest, tmp_path):
    out = tmp_path / "lf.lfj"
    assert main(["encode", "--manifest", str(manifest), "--mode", "4d", "--quality", "50", "--out", str(out)]) == 0
    assert out.read_bytes()[:4] == b"LFJ1"
    assert main(["decode", "--in", str(out), "--out-dir", str(tmp_path / "dec")]) == 0
    decoded = load_light_field(tmp_path / "dec" / "manifest.json")
    assert decoded.dims == load_light_field(manifest).dims


def test_refocus_alpha_zero_is_average(manifest, tmp_path):
    assert main(["refocus", "--manifest", str(manifest), "--alpha", "0", "--out-dir", str(tmp_path / "f")]) == 0
    img = read_ppm((tmp_path / "f" / "focal_000.ppm").read_bytes())
    lf = load_light_field(manifest)
    mean = lf.samples.astype(np.float64).mean(axis=(0, 1))
    expected = np.where(mean >= 0, np.floor(mean + 0.5), np.ceil(mean - 0.5))
    assert np.array_equal(img.samples, expected.astype(np.uint8))


def test_refocus_default_sweep(tmp_path, rng):
    lf = random_lf(rng, 3, 3, W=16, H=8)
    manifest = save_light_field(type(lf)(lf.samples, -1.0, 1.0), tmp_path / "src", "lf")
    assert main(["refocus", "--manifest", str(manifest), "--alpha-count", "3", "--out-dir", str(tmp_path / "f")]) == 0
    assert sorted(p.name for p in (tmp_path / "f").iterdir()) == [
        "focal_000.ppm", "focal_001.ppm", "focal_002.ppm",
    ]


def test_sweep_fifteen_rows(manifest, tmp_path):
    out = tmp_path / "rd.csv"
    argv = ["sweep", "--manifest", str(manifest), "--modes", "2d,3d,4d",
            "--qualities", "10,30,50,70,90", "--alpha-count", "2", "--out", str(out)]
    assert main(argv) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "mode,quality,bpp,psnr_mean" and len(lines) == 16


def test_exp0_stdout(manifest, capsys):
    assert main(["exp0", "--manifest", str(manifest), "--qualities", "50", "--alpha-count", "2"]) == 0
    assert capsys.readouterr().out.startswith("quality,bpp,psnr_direct,psnr_rendered_mean\n50,")


def test_y4m_round_trip(manifest, tmp_path):
    y4m = tmp_path / "lf.y4m"
    assert main(["y4m-export", "--manifest", str(manifest), "--out", str(y4m)]) == 0
    argv = ["y4m-import", "--in", str(y4m), "--rows", "3", "--cols", "3", "--out-dir", str(tmp_path / "imp")]
    assert main(argv) == 0
    back = load_light_field(tmp_path / "imp" / "manifest.json")
    diff = back.samples.astype(int) - load_light_field(manifest).samples.astype(int)
    assert np.abs(diff).max() <= 1


def test_unknown_flag_exits_2(manifest, capsys):
    assert main(["encode", "--manifest", str(manifest), "--bogus"]) == 2


def test_missing_file_exits_2(tmp_path, capsys):
    code = main(["encode", "--manifest", str(tmp_path / "nope.json"), "--mode", "4d",
                 "--quality", "50", "--out", str(tmp_path / "x")])
    assert code == 2
    err = capsys.readouterr().err
    assert err.count("\n") == 1 and "nope.json" in err


def test_bad_stream_exits_1(tmp_path, capsys):
    bad = tmp_path / "bad.lfj"
    bad.write_bytes(b"NOPE" + bytes(30))
    assert main(["decode", "--in", str(bad), "--out-dir", str(tmp_path / "d")]) == 1
    assert "magic" in capsys.readouterr().err


def test_quality_out_of_range_exits_2(manifest, tmp_path):
    code = main(["encode", "--manifest", str(manifest), "--mode", "4d", "--quality", "101", "--out", str(tmp_path / "x")])
    assert code == 2


def test_refocus_degenerate_range_renders_once(manifest, tmp_path):
    assert main(["refocus", "--manifest", str(manifest), "--alpha-count", "4", "--out-dir", str(tmp_path / "f")]) == 0
    assert [p.name for p in (tmp_path / "f").iterdir()] == ["focal_000.ppm"]
