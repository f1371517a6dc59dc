"""Command-line entry point: ``lflab <subcommand> ...``.

Exit status is 0 on success, 2 for usage errors (bad flags, missing input
files) and 1 for processing errors; failures print one line to stderr.
"""

import argparse
import logging
import sys
from pathlib import Path

from . import harness
from .errors import LFError
from .lightfield import load_light_field, save_light_field, write_ppm
from .ndjpeg import CodecConfig, EncodedStream, decode, encode
from .pseudo import SCAN_ORDERS, export_y4m, import_y4m
from .refocus import make_alpha_sweep, render_focal_stack


class UsageError(Exception):
    pass


def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _mode_list(text):
    modes = [t for t in text.split(",") if t.strip()]
    try:
        return [harness.normalize_mode(m) for m in modes]
    except LFError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _input(path):
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such file: {p}")
    return p


def cmd_encode(args):
    lf = load_light_field(_input(args.manifest))
    stream = encode(lf, CodecConfig.from_mode(args.mode, args.quality))
    Path(args.out).write_bytes(stream.to_bytes())


def cmd_decode(args):
    stream = EncodedStream.from_bytes(_input(args.input).read_bytes())
    lf = decode(stream)
    if args.disparity_min is not None or args.disparity_max is not None:
        lo = args.disparity_min if args.disparity_min is not None else 0.0
        hi = args.disparity_max if args.disparity_max is not None else lo
        lf = type(lf)(lf.samples, lo, hi)
    save_light_field(lf, args.out_dir, name=args.name)


def cmd_refocus(args):
    lf = load_light_field(_input(args.manifest))
    if args.alpha:
        alphas = args.alpha
    else:
        # a zero-width disparity range yields repeated alphas; render each once
        alphas = sorted(set(make_alpha_sweep(lf.disparity_min, lf.disparity_max, args.alpha_count)))
    stack = render_focal_stack(lf, alphas)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for i, view in enumerate(stack):
        (out / f"focal_{i:03d}.ppm").write_bytes(write_ppm(view.to_view()))


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_sweep(args):
    cfg = harness.SweepConfig(args.modes, args.qualities, args.alpha_count, None)
    _emit(harness.rd_sweep(_input(args.manifest), cfg), args.out)


def cmd_exp0(args):
    _emit(harness.experiment0(_input(args.manifest), args.qualities, args.alpha_count), args.out)


def cmd_y4m_export(args):
    lf = load_light_field(_input(args.manifest))
    Path(args.out).write_bytes(export_y4m(lf, args.order))


def cmd_y4m_import(args):
    lf = import_y4m(
        _input(args.input).read_bytes(),
        args.rows,
        args.cols,
        args.order,
        args.disparity_min,
        max(args.disparity_min, args.disparity_max),
    )
    save_light_field(lf, args.out_dir, name=args.name)


def build_parser():
    p = argparse.ArgumentParser(prog="lflab", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("encode", help="compress a light field to an LFJ1 stream")
    s.add_argument("--manifest", required=True)
    s.add_argument("--mode", required=True, choices=["2d", "3d", "4d", "jpeg2d", "jpeg3d", "jpeg4d"])
    s.add_argument("--quality", required=True, type=int, choices=range(1, 101), metavar="1..100")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_encode)

    s = sub.add_parser("decode", help="decode an LFJ1 stream to PPM views + manifest")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--out-dir", required=True)
    s.add_argument("--name", default="decoded")
    s.add_argument("--disparity-min", type=float)
    s.add_argument("--disparity-max", type=float)
    s.set_defaults(func=cmd_decode)

    s = sub.add_parser("refocus", help="render a focal stack as PPM files")
    s.add_argument("--manifest", required=True)
    s.add_argument("--alpha", type=float, action="append", help="focal parameter; repeat for a stack")
    s.add_argument("--alpha-count", type=int, default=harness.DEFAULT_ALPHA_COUNT,
                   help="sweep size over the manifest disparity range when --alpha is absent")
    s.add_argument("--out-dir", required=True)
    s.set_defaults(func=cmd_refocus)

    for name, func, help_ in (
        ("sweep", cmd_sweep, "rate-distortion sweep as CSV"),
        ("exp0", cmd_exp0, "direct vs rendered PSNR (4-D mode) as CSV"),
    ):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--manifest", required=True)
        if name == "sweep":
            s.add_argument("--modes", type=_mode_list, default=list(harness.MODES))
        s.add_argument("--qualities", type=_int_list, default=[10, 30, 50, 70, 90])
        s.add_argument("--alpha-count", type=int, default=harness.DEFAULT_ALPHA_COUNT)
        s.add_argument("--out", help="CSV path (default: stdout)")
        s.set_defaults(func=func)

    s = sub.add_parser("y4m-export", help="write the views as a YUV4MPEG2 pseudo-sequence")
    s.add_argument("--manifest", required=True)
    s.add_argument("--order", choices=SCAN_ORDERS, default="spiral")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_y4m_export)

    s = sub.add_parser("y4m-import", help="rebuild a light field from a YUV4MPEG2 pseudo-sequence")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--rows", type=int, required=True)
    s.add_argument("--cols", type=int, required=True)
    s.add_argument("--order", choices=SCAN_ORDERS, default="spiral")
    s.add_argument("--out-dir", required=True)
    s.add_argument("--name", default="imported")
    s.add_argument("--disparity-min", type=float, default=0.0)
    s.add_argument("--disparity-max", type=float, default=0.0)
    s.set_defaults(func=cmd_y4m_import)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        args.func(args)
    except (UsageError, FileNotFoundError) as exc:
        print(f"lflab {args.command}: {exc}", file=sys.stderr)
        return 2
    except (LFError, OSError, ValueError) as exc:
        print(f"lflab {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
