"""Hot inner loops, each with a numba path and a numpy (or interpreted) path.

Dispatch follows :data:`lflab._accel.USE_NUMBA`.  Every ``*_numpy`` /
``*_numba`` pair is exercised against each other in the test-suite and
timed side by side in ``benchmarks/bench_backends.py``.
"""

import numpy as np

from . import _accel

# status codes returned by huffman_decode; compiled code cannot raise
DECODE_OK = 0
DECODE_BAD_PREFIX = 1
DECODE_RUN_PAST_END = 2
DECODE_MISSING_EOB = 3
DECODE_TRUNCATED = 4
DECODE_BAD_SYMBOL = 5

DECODE_MESSAGES = {
    DECODE_BAD_PREFIX: "invalid Huffman prefix",
    DECODE_RUN_PAST_END: "zero run extends past end of block",
    DECODE_MISSING_EOB: "missing end-of-block",
    DECODE_TRUNCATED: "payload truncated",
    DECODE_BAD_SYMBOL: "invalid run/size symbol",
}


# -- shift-sum refocusing ----------------------------------------------------


def _axis_taps(size, shift):
    """Clamped bilinear taps for sampling ``i + shift``, i in [0, size)."""
    x = np.arange(size, dtype=np.float64) + shift
    x = np.minimum(np.maximum(x, 0.0), size - 1.0)
    i0 = np.floor(x).astype(np.int64)
    i1 = np.minimum(i0 + 1, size - 1)
    return i0, i1, x - i0


def refocus_numpy(planes, alpha):
    """Shift-sum render of ``planes`` (C, K, L, M, N) at focal parameter alpha."""
    C, K, L, M, N = planes.shape
    acc = np.zeros((C, M, N), dtype=np.float64)
    ck = (K - 1) / 2.0
    cl = (L - 1) / 2.0
    for k in range(K):
        m0, m1, fm = _axis_taps(M, alpha * (k - ck))
        gm = (1.0 - fm)[None, :, None]
        fm = fm[None, :, None]
        for l in range(L):
            n0, n1, fn = _axis_taps(N, alpha * (l - cl))
            gn = (1.0 - fn)[None, None, :]
            fn = fn[None, None, :]
            v = planes[:, k, l]
            a = v[:, m0]
            b = v[:, m1]
            acc += gm * (gn * a[:, :, n0] + fn * a[:, :, n1]) + fm * (gn * b[:, :, n0] + fn * b[:, :, n1])
    return acc / (K * L)


def _refocus_loops(planes, alpha):
    C, K, L, M, N = planes.shape
    out = np.empty((C, M, N), dtype=np.float64)
    ck = (K - 1) / 2.0
    cl = (L - 1) / 2.0
    count = K * L
    for c in range(C):
        for m in range(M):
            for n in range(N):
                s = 0.0
                for k in range(K):
                    x = m + alpha * (k - ck)
                    x = min(max(x, 0.0), M - 1.0)
                    m0 = int(np.floor(x))
                    m1 = min(m0 + 1, M - 1)
                    fm = x - m0
                    gm = 1.0 - fm
                    for l in range(L):
                        y = n + alpha * (l - cl)
                        y = min(max(y, 0.0), N - 1.0)
                        n0 = int(np.floor(y))
                        n1 = min(n0 + 1, N - 1)
                        fn = y - n0
                        gn = 1.0 - fn
                        s += gm * (gn * planes[c, k, l, m0, n0] + fn * planes[c, k, l, m0, n1]) + fm * (
                            gn * planes[c, k, l, m1, n0] + fn * planes[c, k, l, m1, n1]
                        )
                out[c, m, n] = s / count
    return out


refocus_numba = _accel.compile_kernel(_refocus_loops)


def refocus(planes, alpha):
    planes = np.ascontiguousarray(planes, dtype=np.float64)
    if _accel.USE_NUMBA:
        return refocus_numba(planes, float(alpha))
    return refocus_numpy(planes, float(alpha))


# -- Huffman entropy coding ----------------------------------------------------
#
# Blocks arrive as an int32 array (n_blocks, n_coeffs) already in scan order.
# Code tables are (code, length) pairs indexed by DC category (0..12) and by
# the AC run/size byte.


def _category(v):
    a = abs(v)
    s = 0
    while a:
        a >>= 1
        s += 1
    return s


if _accel.HAVE_NUMBA:
    _category = _accel.compile_kernel(_category)


def _huffman_encode_loops(blocks, dc_code, dc_len, ac_code, ac_len):
    nb, n = blocks.shape
    cap = 1024
    out = np.zeros(cap, dtype=np.uint8)
    acc = np.int64(0)  # pending bits, right-aligned
    nacc = 0
    nbytes = 0
    pred = 0
    # worst case per block: DC + EOB + one (ZRL..., symbol) per coefficient
    block_bound = (64 + n * 27 + 7) // 8 + 8
    for b in range(nb):
        if nbytes + block_bound > cap:
            while nbytes + block_bound > cap:
                cap *= 2
            grown = np.zeros(cap, dtype=np.uint8)
            grown[:nbytes] = out[:nbytes]
            out = grown
        dc = np.int64(blocks[b, 0])
        diff = dc - pred
        pred = dc
        s = _category(diff)
        extra = diff if diff >= 0 else diff + (np.int64(1) << s) - 1
        acc = (acc << dc_len[s]) | dc_code[s]
        nacc += dc_len[s]
        acc = (acc << s) | extra
        nacc += s
        while nacc >= 8:
            nacc -= 8
            out[nbytes] = (acc >> nacc) & 0xFF
            nbytes += 1
        acc &= (np.int64(1) << nacc) - 1
        run = 0
        for i in range(1, n):
            v = np.int64(blocks[b, i])
            if v == 0:
                run += 1
                continue
            while run >= 16:
                acc = (acc << ac_len[0xF0]) | ac_code[0xF0]
                nacc += ac_len[0xF0]
                while nacc >= 8:
                    nacc -= 8
                    out[nbytes] = (acc >> nacc) & 0xFF
                    nbytes += 1
                acc &= (np.int64(1) << nacc) - 1
                run -= 16
            s = _category(v)
            sym = (run << 4) | s
            extra = v if v >= 0 else v + (np.int64(1) << s) - 1
            acc = (acc << ac_len[sym]) | ac_code[sym]
            nacc += ac_len[sym]
            acc = (acc << s) | extra
            nacc += s
            while nacc >= 8:
                nacc -= 8
                out[nbytes] = (acc >> nacc) & 0xFF
                nbytes += 1
            acc &= (np.int64(1) << nacc) - 1
            run = 0
        acc = (acc << ac_len[0x00]) | ac_code[0x00]
        nacc += ac_len[0x00]
        while nacc >= 8:
            nacc -= 8
            out[nbytes] = (acc >> nacc) & 0xFF
            nbytes += 1
        acc &= (np.int64(1) << nacc) - 1
    nbits = nbytes * 8 + nacc
    if nacc:
        pad = 8 - nacc
        out[nbytes] = ((acc << pad) | ((1 << pad) - 1)) & 0xFF
        nbytes += 1
    return out[:nbytes].copy(), nbits


huffman_encode_numba = _accel.compile_kernel(_huffman_encode_loops)


def _extra_bits(v, s):
    return np.where(v >= 0, v, v + (np.int64(1) << s) - 1)


def huffman_encode_numpy(blocks, dc_code, dc_len, ac_code, ac_len):
    """Vectorised equivalent of the compiled encoder."""
    blocks = np.asarray(blocks, dtype=np.int64)
    nb, n = blocks.shape
    if nb == 0:
        return np.zeros(0, dtype=np.uint8), 0
    dc = blocks[:, 0]
    diff = np.diff(dc, prepend=0)
    dc_cat = _categories(diff)
    dc_val = (dc_code[dc_cat].astype(np.int64) << dc_cat) | _extra_bits(diff, dc_cat)
    dc_bits = dc_len[dc_cat].astype(np.int64) + dc_cat

    ac = blocks[:, 1:]
    bi, pos = np.nonzero(ac)
    vals = ac[bi, pos]
    # position of the previous nonzero in the same block, -1 at block start
    prev = np.empty_like(pos)
    if pos.size:
        prev[0] = -1
        prev[1:] = np.where(bi[1:] == bi[:-1], pos[:-1], -1)
    run = pos - prev - 1
    zrl = run // 16
    cat = _categories(vals)
    sym = ((run % 16) << 4) | cat
    sym_val = (ac_code[sym].astype(np.int64) << cat) | _extra_bits(vals, cat)
    sym_bits = ac_len[sym].astype(np.int64) + cat

    # token layout per block: DC, then (zrl x ZRL, symbol) per nonzero, then EOB
    per_nz = zrl + 1
    nz_per_block = np.bincount(bi, weights=per_nz, minlength=nb).astype(np.int64)
    tokens_per_block = nz_per_block + 2
    block_start = np.concatenate(([0], np.cumsum(tokens_per_block)[:-1]))
    total = int(tokens_per_block.sum())
    tok_val = np.empty(total, dtype=np.int64)
    tok_bits = np.empty(total, dtype=np.int64)

    tok_val[block_start] = dc_val
    tok_bits[block_start] = dc_bits
    eob = block_start + tokens_per_block - 1
    tok_val[eob] = ac_code[0x00]
    tok_bits[eob] = ac_len[0x00]

    if pos.size:
        csum = np.cumsum(per_nz)
        first_in_block = np.concatenate(([True], bi[1:] != bi[:-1]))
        # cumulative token count before each nonzero within its block
        before = csum - per_nz
        block_offset = np.maximum.accumulate(np.where(first_in_block, before, 0))
        sym_slot = block_start[bi] + 1 + (before - block_offset) + zrl
        tok_val[sym_slot] = sym_val
        tok_bits[sym_slot] = sym_bits
        nzrl = int(zrl.sum())
        if nzrl:
            zrl_slot = np.repeat(sym_slot - zrl, zrl) + (
                np.arange(nzrl) - np.repeat(np.cumsum(zrl) - zrl, zrl)
            )
            tok_val[zrl_slot] = ac_code[0xF0]
            tok_bits[zrl_slot] = ac_len[0xF0]

    width = int(tok_bits.max())
    shifts = tok_bits[:, None] - 1 - np.arange(width)[None, :]
    bits = ((tok_val[:, None] >> np.maximum(shifts, 0)) & 1).astype(np.uint8)
    bits = bits[shifts >= 0]
    nbits = bits.size
    pad = (-nbits) % 8
    if pad:
        bits = np.concatenate((bits, np.ones(pad, dtype=np.uint8)))
    return np.packbits(bits), nbits


def _categories(v):
    a = np.abs(v)
    out = np.zeros(a.shape, dtype=np.int64)
    nz = a > 0
    out[nz] = np.floor(np.log2(a[nz])).astype(np.int64) + 1
    return out


def huffman_encode(blocks, dc_code, dc_len, ac_code, ac_len):
    """Entropy-code ``blocks``; returns ``(payload uint8 array, bit length)``.

    The payload is padded to a byte boundary with 1-bits.
    """
    blocks = np.ascontiguousarray(blocks, dtype=np.int32)
    if _accel.USE_NUMBA:
        return huffman_encode_numba(blocks, dc_code, dc_len, ac_code, ac_len)
    return huffman_encode_numpy(blocks, dc_code, dc_len, ac_code, ac_len)


def _huffman_decode_loops(
    payload, nbits, nb, n, dc_maxcode, dc_valptr, dc_mincode, dc_vals, ac_maxcode, ac_valptr, ac_mincode, ac_vals
):
    out = np.zeros((nb, n), dtype=np.int32)
    pos = 0
    pred = 0
    for b in range(nb):
        # DC
        code = 0
        length = 0
        sym = -1
        while length < 16:
            if pos >= nbits:
                return out, DECODE_TRUNCATED, pos
            code = (code << 1) | int((payload[pos >> 3] >> (7 - (pos & 7))) & 1)
            pos += 1
            length += 1
            if code <= dc_maxcode[length]:
                sym = dc_vals[dc_valptr[length] + code - dc_mincode[length]]
                break
        if sym < 0:
            return out, DECODE_BAD_PREFIX, pos
        s = sym
        if pos + s > nbits:
            return out, DECODE_TRUNCATED, pos
        v = 0
        for _ in range(s):
            v = (v << 1) | int((payload[pos >> 3] >> (7 - (pos & 7))) & 1)
            pos += 1
        if s and v < (1 << (s - 1)):
            v = v - (1 << s) + 1
        pred += v
        out[b, 0] = pred
        # AC
        k = 1
        while True:
            code = 0
            length = 0
            sym = -1
            start = pos
            while length < 16:
                if pos >= nbits:
                    return out, DECODE_TRUNCATED, pos
                code = (code << 1) | int((payload[pos >> 3] >> (7 - (pos & 7))) & 1)
                pos += 1
                length += 1
                if code <= ac_maxcode[length]:
                    sym = ac_vals[ac_valptr[length] + code - ac_mincode[length]]
                    break
            if sym < 0:
                return out, DECODE_BAD_PREFIX, pos
            r = sym >> 4
            s = sym & 15
            if s == 0:
                if r == 0:
                    break
                if r != 15:
                    return out, DECODE_BAD_SYMBOL, start
                if k >= n:
                    return out, DECODE_MISSING_EOB, start
                k += 16
                if k >= n:
                    return out, DECODE_RUN_PAST_END, start
                continue
            if k >= n:
                return out, DECODE_MISSING_EOB, start
            k += r
            if k >= n:
                return out, DECODE_RUN_PAST_END, start
            if pos + s > nbits:
                return out, DECODE_TRUNCATED, pos
            v = 0
            for _ in range(s):
                v = (v << 1) | int((payload[pos >> 3] >> (7 - (pos & 7))) & 1)
                pos += 1
            if v < (1 << (s - 1)):
                v = v - (1 << s) + 1
            out[b, k] = v
            k += 1
    return out, DECODE_OK, pos


huffman_decode_numba = _accel.compile_kernel(_huffman_decode_loops)


_LOOKAHEAD = {}


def _lookahead_table(maxcode, valptr, mincode, vals):
    """Symbol and code length for every 16-bit lookahead window (length 0: no code)."""
    key = tuple(np.asarray(a, dtype=np.int64).tobytes() for a in (maxcode, valptr, mincode, vals))
    if key not in _LOOKAHEAD:
        _LOOKAHEAD[key] = _build_lookahead(maxcode, valptr, mincode, vals)
    return _LOOKAHEAD[key]


def _build_lookahead(maxcode, valptr, mincode, vals):
    w = np.arange(1 << 16, dtype=np.int64)
    sym = np.full(w.size, -1, dtype=np.int64)
    length = np.zeros(w.size, dtype=np.int64)
    for n in range(1, 17):
        code = w >> (16 - n)
        hit = (length == 0) & (code <= maxcode[n])
        sym[hit] = vals[valptr[n] + code[hit] - mincode[n]]
        length[hit] = n
    return sym.tolist(), length.tolist()


def _windows(payload, nbits):
    """The 16 bits starting at every bit position, padded with 1-bits."""
    bits = np.concatenate([np.unpackbits(payload)[:nbits], np.ones(16, dtype=np.uint8)])
    win = np.zeros(nbits + 1, dtype=np.int64)
    for j in range(16):
        win |= bits[j : j + nbits + 1].astype(np.int64) << (15 - j)
    return win.tolist()


def _huffman_decode_table(payload, nbits, nb, n, dc_tables, ac_tables):
    """Interpreted decoder stepping one symbol at a time; same results as the bit loop."""
    dc_sym, dc_len = _lookahead_table(*dc_tables)
    ac_sym, ac_len = _lookahead_table(*ac_tables)
    win = _windows(payload, nbits)
    out = np.zeros((nb, n), dtype=np.int32)
    pos = 0
    pred = 0

    def symbol(sym_t, len_t, pos):
        w = win[pos]
        length = len_t[w]
        avail = nbits - pos
        if length and length <= avail:
            return sym_t[w], pos + length, DECODE_OK
        if avail < 16:
            return -1, nbits, DECODE_TRUNCATED
        return -1, pos + 16, DECODE_BAD_PREFIX

    for b in range(nb):
        s, pos, status = symbol(dc_sym, dc_len, pos)
        if status:
            return out, status, pos
        if pos + s > nbits:
            return out, DECODE_TRUNCATED, pos
        v = win[pos] >> (16 - s) if s else 0
        pos += s
        if s and v < (1 << (s - 1)):
            v = v - (1 << s) + 1
        pred += v
        out[b, 0] = pred
        k = 1
        while True:
            start = pos
            sym, pos, status = symbol(ac_sym, ac_len, pos)
            if status:
                return out, status, pos
            r = sym >> 4
            s = sym & 15
            if s == 0:
                if r == 0:
                    break
                if r != 15:
                    return out, DECODE_BAD_SYMBOL, start
                if k >= n:
                    return out, DECODE_MISSING_EOB, start
                k += 16
                if k >= n:
                    return out, DECODE_RUN_PAST_END, start
                continue
            if k >= n:
                return out, DECODE_MISSING_EOB, start
            k += r
            if k >= n:
                return out, DECODE_RUN_PAST_END, start
            if pos + s > nbits:
                return out, DECODE_TRUNCATED, pos
            v = win[pos] >> (16 - s)
            pos += s
            if v < (1 << (s - 1)):
                v = v - (1 << s) + 1
            out[b, k] = v
            k += 1
    return out, DECODE_OK, pos


def huffman_decode(payload, nbits, nb, n, dc_tables, ac_tables):
    """Decode ``nb`` blocks of ``n`` coefficients.

    Returns ``(blocks, status, bit_offset)``; ``status`` is one of the
    ``DECODE_*`` constants.  A prefix-code parser does not vectorise, so
    without numba a table-driven interpreted loop runs instead.
    """
    payload = np.ascontiguousarray(payload, dtype=np.uint8)
    if _accel.USE_NUMBA:
        return huffman_decode_numba(payload, int(nbits), int(nb), int(n), *dc_tables, *ac_tables)
    return _huffman_decode_table(payload, int(nbits), int(nb), int(n), dc_tables, ac_tables)
