"""Time the numba kernels against their pure-numpy / interpreted fallbacks.

    python3 benchmarks/bench_backends.py [--grid 8] [--size 64] [--repeat 3]

Both variants are called directly, so the LFLAB_BACKEND setting does not
matter here.  Each kernel is run once before timing so JIT compilation is
excluded.
"""

import argparse
import time

import numpy as np

from lflab import kernels
from lflab.lightfield import to_planar
from lflab.ndjpeg import (
    CodecConfig,
    build_quant_table,
    color_transform,
    dct_blocks,
    encode,
    quantize,
    zigzag_order,
)
from lflab.ndjpeg.blocks import partition
from lflab.ndjpeg.codec import _layout
from lflab.ndjpeg.huffman import tables
from lflab.synthetic import translated_plane


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def scanned_luma_blocks(lf, quality):
    """Quantized 4-D luma blocks of ``lf`` in scan order, as the encoder sees them."""
    luma = color_transform(to_planar(lf), "forward").data[0] - 128.0
    shape, block_shape = _layout(4, *lf.dims)
    blocks, _ = partition(luma.reshape(shape), block_shape)
    blocks = blocks.reshape((-1,) + block_shape)
    q = quantize(dct_blocks(blocks, 4), build_quant_table(4, quality, "luma"))
    flat = q.reshape(q.shape[0], -1)
    return np.ascontiguousarray(flat[:, zigzag_order(4).flat], dtype=np.int32)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", type=int, default=8)
    ap.add_argument("--size", type=int, default=64)
    ap.add_argument("--quality", type=int, default=75)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if not kernels._accel.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    lf = translated_plane(args.grid, args.grid, args.size, args.size, 0.5, seed=1)
    planes = np.ascontiguousarray(to_planar(lf).data)
    print(f"light field {args.grid}x{args.grid} views of {args.size}x{args.size}, q={args.quality}")

    rows = []
    rows.append((
        "refocus",
        best_of(lambda: kernels.refocus_numpy(planes, 0.37), args.repeat),
        best_of(lambda: kernels.refocus_numba(planes, 0.37), args.repeat),
    ))

    blocks = scanned_luma_blocks(lf, args.quality)
    dc, ac = tables("luma")
    enc_args = (blocks, *dc.encoder_arrays(), *ac.encoder_arrays())
    rows.append((
        "huffman encode",
        best_of(lambda: kernels.huffman_encode_numpy(*enc_args), args.repeat),
        best_of(lambda: kernels.huffman_encode_numba(*enc_args), args.repeat),
    ))

    data, nbits = kernels.huffman_encode_numba(*enc_args)
    nb, n = blocks.shape
    dec_args = (data, nbits, nb, n, *dc.decoder_arrays(), *ac.decoder_arrays())
    table_args = (data, nbits, nb, n, dc.decoder_arrays(), ac.decoder_arrays())
    rows.append((
        "huffman decode",
        best_of(lambda: kernels._huffman_decode_table(*table_args), args.repeat),
        best_of(lambda: kernels.huffman_decode_numba(*dec_args), args.repeat),
    ))

    full = CodecConfig(4, args.quality)
    t_total = best_of(lambda: encode(lf, full), args.repeat)

    print(f"{'kernel':<16}{'fallback s':>12}{'numba s':>12}{'speedup':>10}")
    for name, slow, fast in rows:
        print(f"{name:<16}{slow:>12.4f}{fast:>12.4f}{slow / fast:>9.1f}x")
    print(f"full 4-D encode with the active backend: {t_total:.4f} s ({nbits} luma bits)")


if __name__ == "__main__":
    main()
