"""Rate-distortion sweeps and the direct-vs-rendered PSNR comparison, as CSV."""

import io
import logging
from dataclasses import dataclass, field
from pathlib import Path

from .errors import LFError, ParameterError
from .lightfield import load_light_field
from .metrics import RDPoint, direct_psnr, mean_focal_psnr
from .ndjpeg import CodecConfig, bits_per_pixel, decode, encode
from .refocus import make_alpha_sweep

log = logging.getLogger(__name__)

MODES = ("jpeg2d", "jpeg3d", "jpeg4d")
DEFAULT_ALPHA_COUNT = 5


def normalize_mode(mode):
    key = mode.strip().lower()
    if not key.startswith("jpeg"):
        key = "jpeg" + key
    if key not in MODES:
        raise ParameterError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")
    return key


@dataclass
class SweepConfig:
    modes: list = field(default_factory=lambda: list(MODES))
    qualities: list = field(default_factory=lambda: [10, 30, 50, 70, 90])
    alpha_count: int = DEFAULT_ALPHA_COUNT
    output: Path | None = None

    def __post_init__(self):
        if not self.modes:
            raise ParameterError("at least one mode is required")
        if not self.qualities:
            raise ParameterError("at least one quality is required")
        self.modes = [normalize_mode(m) for m in self.modes]
        for q in self.qualities:
            if not 1 <= int(q) <= 100:
                raise ParameterError(f"quality {q} outside 1..100")
        self.qualities = [int(q) for q in self.qualities]
        if self.alpha_count < 1:
            raise ParameterError("alpha_count must be >= 1")


def fmt(x):
    """6 significant digits, '.' decimal; infinity as ``inf``."""
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".6g")


def _csv(header, rows):
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) if not isinstance(v, str) else v for v in row) + "\n")
    return buf.getvalue()


def rd_point(lf, mode, quality, alphas, with_direct=False):
    cfg = CodecConfig.from_mode(mode, quality)
    try:
        stream = encode(lf, cfg)
        decoded = decode(stream.to_bytes())
    except LFError as exc:
        raise type(exc)(f"{mode} q={quality}: {exc}") from exc
    bpp = bits_per_pixel(stream, lf.dims)
    mean, _ = mean_focal_psnr(lf, decoded, alphas)
    direct = direct_psnr(lf, decoded) if with_direct else None
    log.info("%s q=%d: %.4f bpp, %.3f dB", mode, quality, bpp, mean)
    return RDPoint(normalize_mode(mode), int(quality), bpp, mean, direct)


def rd_points(lf, modes, qualities, alphas, with_direct=False):
    """One :class:`RDPoint` per (mode, quality), sorted by mode then quality."""
    modes = sorted({normalize_mode(m) for m in modes})
    return [
        rd_point(lf, m, q, alphas, with_direct)
        for m in modes
        for q in sorted({int(q) for q in qualities})
    ]


def rd_table(points):
    return _csv(("mode", "quality", "bpp", "psnr_mean"), [(p.mode, p.quality, p.bpp, p.psnr_mean) for p in points])


def rd_sweep(manifest, cfg):
    """Run the sweep for the light field behind ``manifest``; returns CSV text.

    The CSV is also written to ``cfg.output`` when set.
    """
    lf = load_light_field(manifest)
    alphas = make_alpha_sweep(lf.disparity_min, lf.disparity_max, cfg.alpha_count)
    text = rd_table(rd_points(lf, cfg.modes, cfg.qualities, alphas))
    if cfg.output is not None:
        Path(cfg.output).write_text(text, encoding="utf-8")
    return text


def experiment0_rows(lf, qualities, alpha_count=DEFAULT_ALPHA_COUNT):
    alphas = make_alpha_sweep(lf.disparity_min, lf.disparity_max, alpha_count)
    rows = []
    for q in qualities:
        p = rd_point(lf, "jpeg4d", q, alphas, with_direct=True)
        rows.append((p.quality, p.bpp, p.psnr_direct, p.psnr_mean))
    return rows


def experiment0(manifest, qualities, alpha_count=DEFAULT_ALPHA_COUNT, output=None):
    """Direct light-field PSNR next to mean rendered PSNR, 4-D mode, per quality."""
    if not qualities:
        raise ParameterError("at least one quality is required")
    lf = load_light_field(manifest)
    text = _csv(
        ("quality", "bpp", "psnr_direct", "psnr_rendered_mean"),
        experiment0_rows(lf, [int(q) for q in qualities], alpha_count),
    )
    if output is not None:
        Path(output).write_text(text, encoding="utf-8")
    return text
