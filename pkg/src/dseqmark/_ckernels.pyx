# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contracts as ``_pykernels``."""
import numpy as np

from libc.stdint cimport int64_t, int8_t, uint8_t

BACKEND = "cython"


def dseq_digits(int64_t q, int64_t r, Py_ssize_t n):
    out = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] o = out
    cdef int64_t x = 1
    cdef Py_ssize_t i
    for i in range(n):
        x *= r
        o[i] = x // q
        x %= q
    return out


def register_rows(int64_t t, int64_t r, Py_ssize_t n):
    digits = np.empty(n, dtype=np.int64)
    carries = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] d = digits
    cdef int64_t[::1] c = carries
    cdef int64_t a = 1, u = 0, v
    cdef Py_ssize_t i
    for i in range(n):
        d[i] = a
        c[i] = u
        v = t * a + u
        a = v % r
        u = v // r
    return digits, carries


def cyclic_autocorr_sums(chips):
    cdef const int8_t[::1] c = np.ascontiguousarray(chips, dtype=np.int8)
    cdef Py_ssize_t p = c.shape[0], s, i, j
    out = np.empty(p, dtype=np.int64)
    cdef int64_t[::1] o = out
    cdef int64_t acc
    for s in range(p):
        acc = 0
        j = s
        for i in range(p):
            acc += c[i] * c[j]
            j += 1
            if j == p:
                j = 0
        o[s] = acc
    return out


def highpass9(img, Py_ssize_t bw=0, Py_ssize_t bh=0):
    cdef const uint8_t[:, ::1] a = np.ascontiguousarray(img, dtype=np.uint8)
    cdef Py_ssize_t h = a.shape[0], w = a.shape[1], y, x, dy, dx, yy, xx
    cdef Py_ssize_t ylo, yhi, xlo, xhi
    if bw <= 0:
        bw = w
    if bh <= 0:
        bh = h
    out = np.empty((h, w), dtype=np.int64)
    cdef int64_t[:, ::1] o = out
    cdef int64_t box
    for y in range(h):
        ylo = (y // bh) * bh
        yhi = ylo + bh - 1
        if yhi >= h:
            yhi = h - 1
        for x in range(w):
            xlo = (x // bw) * bw
            xhi = xlo + bw - 1
            if xhi >= w:
                xhi = w - 1
            box = 0
            for dy in range(-1, 2):
                yy = y + dy
                if yy < ylo:
                    yy = ylo
                elif yy > yhi:
                    yy = yhi
                for dx in range(-1, 2):
                    xx = x + dx
                    if xx < xlo:
                        xx = xlo
                    elif xx > xhi:
                        xx = xhi
                    box += a[yy, xx]
            o[y, x] = 9 * a[y, x] - box
    return out


def block_correlation_sums(hp, chips, shifts, Py_ssize_t bw, Py_ssize_t bh,
                           Py_ssize_t cols):
    cdef const int64_t[:, ::1] m = np.ascontiguousarray(hp, dtype=np.int64)
    cdef const int8_t[::1] c = np.ascontiguousarray(chips, dtype=np.int8)
    cdef const int64_t[::1] sh = np.ascontiguousarray(shifts, dtype=np.int64)
    cdef Py_ssize_t n = sh.shape[0], p = c.shape[0], i, y, x, y0, x0, j
    out = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] o = out
    cdef int64_t acc
    for i in range(n):
        y0 = (i // cols) * bh
        x0 = (i % cols) * bw
        j = sh[i] % p
        acc = 0
        for y in range(bh):
            for x in range(bw):
                acc += m[y0 + y, x0 + x] * c[j]
                j += 1
                if j == p:
                    j = 0
        o[i] = acc
    return out


def embed_blocks(cover, active, chips, shifts, Py_ssize_t bw, Py_ssize_t bh,
                 Py_ssize_t cols, int64_t k):
    out = np.array(cover, dtype=np.uint8, copy=True, order="C")
    cdef uint8_t[:, ::1] o = out
    cdef const uint8_t[::1] act = np.ascontiguousarray(active, dtype=np.uint8)
    cdef const int8_t[::1] c = np.ascontiguousarray(chips, dtype=np.int8)
    cdef const int64_t[::1] sh = np.ascontiguousarray(shifts, dtype=np.int64)
    cdef Py_ssize_t n = sh.shape[0], p = c.shape[0], i, y, x, y0, x0, j
    cdef int64_t v
    for i in range(n):
        if not act[i]:
            continue
        y0 = (i // cols) * bh
        x0 = (i % cols) * bw
        j = sh[i] % p
        for y in range(bh):
            for x in range(bw):
                v = o[y0 + y, x0 + x] + k * c[j]
                if v < 0:
                    v = 0
                elif v > 255:
                    v = 255
                o[y0 + y, x0 + x] = <uint8_t>v
                j += 1
                if j == p:
                    j = 0
    return out
