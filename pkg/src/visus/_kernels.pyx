# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-pixel kernels; same surface as ``visus._fallback``."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t

cnp.import_array()

cdef enum:
    BASE = 40


cdef inline bint _is_pattern(uint8_t r, uint8_t g, uint8_t b) noexcept nogil:
    cdef int n_eq = (r == BASE) + (g == BASE) + (b == BASE)
    if n_eq < 2:
        return False
    return BASE <= r <= BASE + 3 and BASE <= g <= BASE + 3 and BASE <= b <= BASE + 3


def carrier_indices(const uint8_t[:, :, ::1] img):
    cdef Py_ssize_t h = img.shape[0], w = img.shape[1], i, j, k = 0
    out = np.empty(h * w, dtype=np.int64)
    cdef int64_t[::1] o = out
    with nogil:
        for i in range(h):
            for j in range(w):
                if img[i, j, 0] < BASE and img[i, j, 1] < BASE and img[i, j, 2] < BASE:
                    o[k] = i * w + j
                    k += 1
    return out[:k].copy()


def pattern_indices(const uint8_t[:, :, ::1] img):
    cdef Py_ssize_t h = img.shape[0], w = img.shape[1], i, j, k = 0
    out = np.empty(h * w, dtype=np.int64)
    cdef int64_t[::1] o = out
    with nogil:
        for i in range(h):
            for j in range(w):
                if _is_pattern(img[i, j, 0], img[i, j, 1], img[i, j, 2]):
                    o[k] = i * w + j
                    k += 1
    return out[:k].copy()


def pattern_symbols(const uint8_t[:, :, ::1] img):
    cdef Py_ssize_t h = img.shape[0], w = img.shape[1], i, j, k = 0
    out = np.empty(h * w, dtype=np.uint8)
    cdef uint8_t[::1] o = out
    cdef uint8_t r, g, b
    with nogil:
        for i in range(h):
            for j in range(w):
                r = img[i, j, 0]
                g = img[i, j, 1]
                b = img[i, j, 2]
                if _is_pattern(r, g, b):
                    o[k] = <uint8_t>(<int>r + g + b - 3 * BASE)
                    k += 1
    return out[:k].copy()


def sanitize(const uint8_t[:, :, ::1] img):
    out = np.array(img, dtype=np.uint8, copy=True)
    cdef uint8_t[:, :, ::1] o = out
    cdef Py_ssize_t h = img.shape[0], w = img.shape[1], i, j
    cdef int odd
    with nogil:
        for i in range(h):
            for j in range(w):
                if not _is_pattern(o[i, j, 0], o[i, j, 1], o[i, j, 2]):
                    continue
                if o[i, j, 2] != BASE:
                    odd = 2
                elif o[i, j, 1] != BASE:
                    odd = 1
                elif o[i, j, 0] != BASE:
                    odd = 0
                else:
                    odd = 2
                o[i, j, odd] = BASE - 1 if o[i, j, odd] == BASE else BASE + 4
    return out


def write_symbols(const uint8_t[:, :, ::1] img, indices, symbols):
    out = np.array(img, dtype=np.uint8, copy=True)
    cdef uint8_t[:, ::1] o = out.reshape(-1, 3)
    cdef const int64_t[::1] idx = np.ascontiguousarray(indices, dtype=np.int64)
    cdef const uint8_t[::1] sym = np.ascontiguousarray(symbols, dtype=np.uint8)
    cdef Py_ssize_t n = idx.shape[0], t
    if sym.shape[0] != n:
        raise ValueError("indices and symbols differ in length")
    with nogil:
        for t in range(n):
            o[idx[t], 0] = BASE + sym[t]
            o[idx[t], 1] = BASE
            o[idx[t], 2] = BASE
    return out


def mask_channels(const uint8_t[:, :, ::1] img, int mask):
    out = np.empty_like(np.asarray(img))
    cdef uint8_t[::1] o = out.reshape(-1)
    cdef const uint8_t[::1] src = np.asarray(img).reshape(-1)
    cdef Py_ssize_t n = src.shape[0], t
    cdef uint8_t m = <uint8_t>mask
    with nogil:
        for t in range(n):
            o[t] = src[t] & m
    return out


def or_stack(arrays):
    out = np.array(arrays[0], dtype=np.uint8, copy=True)
    cdef uint8_t[::1] o = out.reshape(-1)
    cdef const uint8_t[::1] src
    cdef Py_ssize_t n = o.shape[0], t
    for a in arrays[1:]:
        src = np.ascontiguousarray(a, dtype=np.uint8).reshape(-1)
        if src.shape[0] != n:
            raise ValueError("arrays differ in size")
        with nogil:
            for t in range(n):
                o[t] |= src[t]
    return out


def channel_stats(const uint8_t[:, :, ::1] orig, const uint8_t[:, :, ::1] mod):
    """Per-channel integer sums, shape (3, 6); column order as in the fallback."""
    cdef Py_ssize_t h = orig.shape[0], w = orig.shape[1], i, j
    cdef int c
    cdef int64_t x, y, d, ad
    out = np.zeros((3, 6), dtype=np.int64)
    cdef int64_t[:, ::1] s = out
    with nogil:
        for i in range(h):
            for j in range(w):
                for c in range(3):
                    x = orig[i, j, c]
                    y = mod[i, j, c]
                    d = x - y
                    ad = d if d >= 0 else -d
                    if ad > s[c, 0]:
                        s[c, 0] = ad
                    s[c, 1] += ad
                    s[c, 2] += x
                    s[c, 3] += x * x
                    s[c, 4] += d * d
                    s[c, 5] += x * y
    return out


def histogram(const uint8_t[:, :, ::1] img):
    out = np.zeros((256, 3), dtype=np.int64)
    cdef int64_t[:, ::1] hist = out
    cdef Py_ssize_t h = img.shape[0], w = img.shape[1], i, j
    with nogil:
        for i in range(h):
            for j in range(w):
                hist[img[i, j, 0], 0] += 1
                hist[img[i, j, 1], 1] += 1
                hist[img[i, j, 2], 2] += 1
    return out
