"""Light-field containers and their on-disk form (binary PPM views + JSON manifest).

A light field ``L(k, l, m, n)`` is a ``K x L`` grid of RGB views.  Grid order
is row-major with ``row = k`` and ``col = l``.  Views are 8-bit, stored as
``(height, width, 3)`` arrays; ``m`` runs along the width (``M``) and ``n``
along the height (``N``).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import FormatError, LoadError, MissingFileError, NumericError, ShapeError

__all__ = [
    "View",
    "LightField",
    "Manifest",
    "PlanarField",
    "read_ppm",
    "write_ppm",
    "read_manifest",
    "write_manifest",
    "load_light_field",
    "save_light_field",
    "to_planar",
    "from_planar",
    "round_half_away",
    "to_uint8",
]


def _frozen(arr):
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class View:
    """One sub-aperture image: ``samples`` has shape ``(height, width, 3)``, uint8."""

    samples: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.samples)
        if s.dtype != np.uint8:
            raise ShapeError(f"view samples must be uint8, got {s.dtype}")
        if s.ndim != 3 or s.shape[2] != 3 or s.shape[0] < 1 or s.shape[1] < 1:
            raise ShapeError(f"view samples must have shape (height, width, 3), got {s.shape}")
        object.__setattr__(self, "samples", _frozen(s))

    @classmethod
    def from_bytes(cls, width, height, data):
        """Build a view from a flat, row-major, channel-interleaved buffer."""
        buf = np.frombuffer(bytes(data), dtype=np.uint8)
        if buf.size != width * height * 3:
            raise ShapeError(f"expected {width * height * 3} samples, got {buf.size}")
        return cls(buf.reshape(height, width, 3))

    @property
    def width(self):
        return self.samples.shape[1]

    @property
    def height(self):
        return self.samples.shape[0]

    def __eq__(self, other):
        if not isinstance(other, View):
            return NotImplemented
        return np.array_equal(self.samples, other.samples)

    def __repr__(self):
        return f"View({self.width}x{self.height})"


@dataclass(frozen=True, eq=False)
class LightField:
    """A ``grid_rows x grid_cols`` grid of equally sized views.

    ``samples`` has shape ``(K, L, height, width, 3)`` and dtype uint8.
    """

    samples: np.ndarray
    disparity_min: float = 0.0
    disparity_max: float = 0.0

    def __post_init__(self):
        s = np.asarray(self.samples)
        if s.dtype != np.uint8:
            raise ShapeError(f"light-field samples must be uint8, got {s.dtype}")
        if s.ndim != 5 or s.shape[4] != 3 or min(s.shape) < 1:
            raise ShapeError(f"light-field samples must have shape (K, L, H, W, 3), got {s.shape}")
        if not self.disparity_min <= self.disparity_max:
            raise ShapeError(
                f"disparity_min {self.disparity_min} exceeds disparity_max {self.disparity_max}"
            )
        object.__setattr__(self, "samples", _frozen(s))
        object.__setattr__(self, "disparity_min", float(self.disparity_min))
        object.__setattr__(self, "disparity_max", float(self.disparity_max))

    @classmethod
    def from_views(cls, views, grid_rows, grid_cols, disparity_min=0.0, disparity_max=0.0):
        """Assemble from a row-major sequence of :class:`View`."""
        views = list(views)
        if len(views) != grid_rows * grid_cols:
            raise ShapeError(f"expected {grid_rows * grid_cols} views, got {len(views)}")
        first = views[0]
        for i, v in enumerate(views):
            if (v.width, v.height) != (first.width, first.height):
                r, c = divmod(i, grid_cols)
                raise ShapeError(
                    f"view ({r}, {c}) is {v.width}x{v.height}, expected {first.width}x{first.height}"
                )
        data = np.stack([v.samples for v in views]).reshape(
            grid_rows, grid_cols, first.height, first.width, 3
        )
        return cls(data, disparity_min, disparity_max)

    @property
    def grid_rows(self):
        return self.samples.shape[0]

    @property
    def grid_cols(self):
        return self.samples.shape[1]

    @property
    def width(self):
        return self.samples.shape[3]

    @property
    def height(self):
        return self.samples.shape[2]

    @property
    def dims(self):
        """``(K, L, M, N)`` with ``M`` the view width and ``N`` the height."""
        return (self.grid_rows, self.grid_cols, self.width, self.height)

    @property
    def pixel_count(self):
        K, L, M, N = self.dims
        return K * L * M * N

    def view(self, row, col):
        return View(self.samples[row, col])

    @property
    def views(self):
        """All views in row-major grid order."""
        return tuple(self.view(r, c) for r in range(self.grid_rows) for c in range(self.grid_cols))

    def __eq__(self, other):
        if not isinstance(other, LightField):
            return NotImplemented
        return (
            self.disparity_min == other.disparity_min
            and self.disparity_max == other.disparity_max
            and np.array_equal(self.samples, other.samples)
        )

    def __repr__(self):
        K, L, M, N = self.dims
        return (
            f"LightField({K}x{L} views of {M}x{N}, "
            f"disparity {self.disparity_min:g}..{self.disparity_max:g})"
        )


@dataclass(frozen=True, eq=False)
class PlanarField:
    """Real-valued working copy of a light field.

    ``data`` has shape ``(3, K, L, M, N)``: one plane per channel, indexed
    ``(k, l, m, n)`` in row-major order.
    """

    data: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.data, dtype=np.float64)
        if d.ndim != 5 or d.shape[0] != 3 or min(d.shape) < 1:
            raise ShapeError(f"planar data must have shape (3, K, L, M, N), got {d.shape}")
        object.__setattr__(self, "data", d)

    @property
    def dims(self):
        return tuple(self.data.shape[1:])


# -- PPM ---------------------------------------------------------------------

_WS = b" \t\n\r\v\f"


def _next_token(data, pos, field):
    n = len(data)
    while pos < n:
        c = data[pos : pos + 1]
        if c in (b" ", b"\t", b"\n", b"\r", b"\v", b"\f"):
            pos += 1
        elif c == b"#":
            while pos < n and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
        else:
            break
    start = pos
    while pos < n and data[pos] not in _WS and data[pos : pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise FormatError(f"PPM {field}: unexpected end of header")
    return data[start:pos], pos


def _header_int(data, pos, field):
    tok, pos = _next_token(data, pos, field)
    if not tok.isdigit():
        raise FormatError(f"PPM {field}: expected a decimal integer, got {tok[:16]!r}")
    return int(tok), pos


def read_ppm(data):
    """Decode a binary P6 PPM with maxval 255."""
    data = bytes(data)
    if data[:2] != b"P6":
        raise FormatError(f"PPM magic: expected b'P6', got {data[:2]!r}")
    pos = 2
    if pos < len(data) and data[pos] not in _WS and data[pos : pos + 1] != b"#":
        raise FormatError("PPM magic: missing whitespace after P6")
    width, pos = _header_int(data, pos, "width")
    height, pos = _header_int(data, pos, "height")
    maxval, pos = _header_int(data, pos, "maxval")
    if width < 1:
        raise FormatError(f"PPM width: must be positive, got {width}")
    if height < 1:
        raise FormatError(f"PPM height: must be positive, got {height}")
    if maxval != 255:
        raise FormatError(f"PPM maxval: only 255 is supported, got {maxval}")
    if pos >= len(data) or data[pos] not in _WS:
        raise FormatError("PPM payload: missing whitespace before raster")
    pos += 1
    need = width * height * 3
    raster = data[pos : pos + need]
    if len(raster) < need:
        raise FormatError(f"PPM payload: truncated, expected {need} bytes, got {len(raster)}")
    return View.from_bytes(width, height, raster)


def write_ppm(view):
    header = f"P6\n{view.width} {view.height}\n255\n".encode("ascii")
    return header + view.samples.tobytes()


# -- manifest ----------------------------------------------------------------

_PLACEHOLDER = re.compile(r"\{(row|col)(?::(0?)(\d+))?\}")


def _expand(pattern, row, col):
    def sub(m):
        value = row if m.group(1) == "row" else col
        if m.group(3) is None:
            return str(value)
        fill = "0" if m.group(2) else " "
        return str(value).rjust(int(m.group(3)), fill)

    out = _PLACEHOLDER.sub(sub, pattern)
    if "{" in out or "}" in out:
        raise FormatError(f"manifest file_pattern: unsupported placeholder in {pattern!r}")
    return out


@dataclass(frozen=True)
class Manifest:
    name: str
    grid_rows: int
    grid_cols: int
    width: int
    height: int
    file_pattern: str
    disparity_min: float = 0.0
    disparity_max: float = 0.0

    KEYS = (
        "name",
        "grid_rows",
        "grid_cols",
        "width",
        "height",
        "file_pattern",
        "disparity_min",
        "disparity_max",
    )

    def __post_init__(self):
        for key in ("grid_rows", "grid_cols", "width", "height"):
            value = getattr(self, key)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise FormatError(f"manifest {key}: expected a positive integer, got {value!r}")
        if not self.disparity_min <= self.disparity_max:
            raise FormatError("manifest disparity_min exceeds disparity_max")

    def view_path(self, row, col):
        return _expand(self.file_pattern, row, col)

    def view_paths(self):
        """Relative path for every grid cell, row-major; rejects collisions."""
        seen = {}
        paths = []
        for r in range(self.grid_rows):
            for c in range(self.grid_cols):
                p = self.view_path(r, c)
                if p in seen:
                    raise LoadError(
                        f"view ({r}, {c}): file_pattern expands to {p!r}, already used by view {seen[p]}"
                    )
                seen[p] = (r, c)
                paths.append(p)
        return paths

    def to_json(self):
        return json.dumps({k: getattr(self, k) for k in self.KEYS}, indent=2) + "\n"

    @classmethod
    def from_json(cls, text):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"manifest: invalid JSON ({exc})") from None
        if not isinstance(obj, dict):
            raise FormatError("manifest: top level must be a JSON object")
        missing = [k for k in cls.KEYS if k not in obj]
        if missing:
            raise FormatError(f"manifest: missing keys {missing}")
        extra = sorted(set(obj) - set(cls.KEYS))
        if extra:
            raise FormatError(f"manifest: unknown keys {extra}")
        for key in ("disparity_min", "disparity_max"):
            if isinstance(obj[key], bool) or not isinstance(obj[key], (int, float)):
                raise FormatError(f"manifest {key}: expected a number, got {obj[key]!r}")
        if not isinstance(obj["name"], str) or not isinstance(obj["file_pattern"], str):
            raise FormatError("manifest: name and file_pattern must be strings")
        return cls(
            **{k: obj[k] for k in cls.KEYS if not k.startswith("disparity")},
            disparity_min=float(obj["disparity_min"]),
            disparity_max=float(obj["disparity_max"]),
        )


def read_manifest(path):
    return Manifest.from_json(Path(path).read_text(encoding="utf-8"))


def write_manifest(manifest, path):
    Path(path).write_text(manifest.to_json(), encoding="utf-8")


def load_light_field(manifest_path):
    """Read a manifest and every view it names into a :class:`LightField`."""
    manifest_path = Path(manifest_path)
    if not manifest_path.is_file():
        raise MissingFileError(f"manifest not found: {manifest_path}")
    manifest = read_manifest(manifest_path)
    base = manifest_path.parent
    paths = manifest.view_paths()
    K, L = manifest.grid_rows, manifest.grid_cols
    data = np.empty((K, L, manifest.height, manifest.width, 3), dtype=np.uint8)
    for i, rel in enumerate(paths):
        r, c = divmod(i, L)
        p = base / rel
        try:
            raw = p.read_bytes()
        except FileNotFoundError:
            raise MissingFileError(f"view ({r}, {c}): missing file {p}") from None
        try:
            view = read_ppm(raw)
        except FormatError as exc:
            raise LoadError(f"view ({r}, {c}): {exc}") from None
        if (view.width, view.height) != (manifest.width, manifest.height):
            raise LoadError(
                f"view ({r}, {c}): size {view.width}x{view.height} does not match "
                f"manifest {manifest.width}x{manifest.height}"
            )
        data[r, c] = view.samples
    return LightField(data, manifest.disparity_min, manifest.disparity_max)


def save_light_field(lf, directory, name="lightfield", file_pattern="view_{row:02}_{col:02}.ppm"):
    """Write ``lf`` as PPM views plus ``manifest.json``; returns the manifest path."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    manifest = Manifest(
        name=name,
        grid_rows=lf.grid_rows,
        grid_cols=lf.grid_cols,
        width=lf.width,
        height=lf.height,
        file_pattern=file_pattern,
        disparity_min=lf.disparity_min,
        disparity_max=lf.disparity_max,
    )
    for i, rel in enumerate(manifest.view_paths()):
        r, c = divmod(i, lf.grid_cols)
        out = directory / rel
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_bytes(write_ppm(lf.view(r, c)))
    path = directory / "manifest.json"
    write_manifest(manifest, path)
    return path


# -- planar conversion -------------------------------------------------------


def round_half_away(x):
    """Round to nearest integer, ties away from zero (``np.round`` ties to even)."""
    x = np.asarray(x, dtype=np.float64)
    return np.copysign(np.floor(np.abs(x) + 0.5), x)


def to_uint8(x):
    """Round half away from zero and clamp real samples into ``[0, 255]``."""
    x = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(x)):
        raise NumericError("non-finite sample cannot be converted to 8 bits")
    return np.clip(round_half_away(x), 0, 255).astype(np.uint8)


def to_planar(lf):
    # (K, L, H, W, 3) -> (3, K, L, W, H), i.e. (c, k, l, m, n)
    return PlanarField(np.transpose(lf.samples, (4, 0, 1, 3, 2)).astype(np.float64))


def from_planar(pf, disparity_min=0.0, disparity_max=0.0):
    samples = np.transpose(to_uint8(pf.data), (1, 2, 4, 3, 0))
    return LightField(samples, disparity_min, disparity_max)
