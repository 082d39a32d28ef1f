"""Pure-Python/numpy implementations of the hot kernels.

Every kernel works in integers so results are bit-identical to the compiled
backend in ``_ckernels.pyx``.
"""
import numpy as np

BACKEND = "python"


def dseq_digits(q, r, n):
    out = np.empty(n, dtype=np.int64)
    x = 1
    for i in range(n):
        x *= r
        out[i] = x // q
        x %= q
    return out


def register_rows(t, r, n):
    digits = np.empty(n, dtype=np.int64)
    carries = np.empty(n, dtype=np.int64)
    a, u = 1, 0
    for i in range(n):
        digits[i] = a
        carries[i] = u
        a, u = (t * a + u) % r, (t * a + u) // r
    return digits, carries


def cyclic_autocorr_sums(chips):
    c = np.asarray(chips, dtype=np.int64)
    p = c.shape[0]
    out = np.empty(p, dtype=np.int64)
    for s in range(p):
        out[s] = np.dot(c, np.roll(c, -s))
    return out


def highpass9(img, bw=0, bh=0):
    """``9*I - (3x3 box sum of I)``, neighbours clamped to the enclosing tile.

    Tiles are ``bw x bh`` from the top-left corner; 0 means the whole axis.
    """
    a = np.asarray(img, dtype=np.int64)
    h, w = a.shape
    bw = bw or w
    bh = bh or h
    out = np.empty((h, w), dtype=np.int64)
    for y0 in range(0, h, bh):
        for x0 in range(0, w, bw):
            t = a[y0:y0 + bh, x0:x0 + bw]
            th, tw = t.shape
            pad = np.pad(t, 1, mode="edge")
            box = np.zeros((th, tw), dtype=np.int64)
            for dy in range(3):
                for dx in range(3):
                    box += pad[dy:dy + th, dx:dx + tw]
            out[y0:y0 + th, x0:x0 + tw] = 9 * t - box
    return out


def _tile(chips, shift, bw, bh):
    p = chips.shape[0]
    return chips[(np.arange(bw * bh) + shift) % p].reshape(bh, bw)


def block_correlation_sums(hp, chips, shifts, bw, bh, cols):
    hp = np.asarray(hp, dtype=np.int64)
    chips = np.asarray(chips, dtype=np.int64)
    out = np.empty(len(shifts), dtype=np.int64)
    for i, s in enumerate(shifts):
        y0, x0 = (i // cols) * bh, (i % cols) * bw
        out[i] = np.sum(hp[y0:y0 + bh, x0:x0 + bw] * _tile(chips, int(s), bw, bh))
    return out


def embed_blocks(cover, active, chips, shifts, bw, bh, cols, k):
    out = np.asarray(cover, dtype=np.int64).copy()
    chips = np.asarray(chips, dtype=np.int64)
    for i, s in enumerate(shifts):
        if not active[i]:
            continue
        y0, x0 = (i // cols) * bh, (i % cols) * bw
        out[y0:y0 + bh, x0:x0 + bw] += k * _tile(chips, int(s), bw, bh)
    return np.clip(out, 0, 255).astype(np.uint8)
