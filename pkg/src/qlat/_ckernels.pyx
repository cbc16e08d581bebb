# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same signatures and witness order as ``_pykernels``."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

DEF MAXN = 32


cdef inline void _digits(long i, int n, int size, int* out) noexcept nogil:
    cdef int k
    for k in range(n - 1, -1, -1):
        out[k] = i % size
        i = i // size


cdef inline void _strides(int n, int size, long* st) noexcept nogil:
    cdef int k
    cdef long s = 1
    for k in range(n - 1, -1, -1):
        st[k] = s
        s *= size


cdef inline long _ipow(int b, int e) noexcept nogil:
    cdef long r = 1
    cdef int t
    for t in range(e):
        r *= b
    return r


def _check_n(int n):
    if n < 0 or n > MAXN:
        raise ValueError(f"arity {n} outside 0..{MAXN}")


def dnf_table(const int[::1] alpha, int n, int size, const int[:, ::1] meet,
              const int[:, ::1] join, int top):
    _check_n(n)
    cdef long total = _ipow(size, n)
    out = np.empty(total, dtype=np.int32)
    cdef int[::1] o = out
    cdef int d[MAXN]
    cdef long i
    cdef int mask, k, acc, term
    with nogil:
        for i in range(total):
            _digits(i, n, size, d)
            acc = 0
            for mask in range(1 << n):
                term = alpha[mask]
                for k in range(n):
                    if (mask >> k) & 1:
                        term = meet[term, d[k]]
                acc = join[acc, term]
            o[i] = acc
    return out


def compose_table(const int[::1] ptable, const int[::1] phi, int n, int xsize, int ysize):
    _check_n(n)
    cdef long total = _ipow(xsize, n)
    out = np.empty(total, dtype=np.int32)
    cdef int[::1] o = out
    cdef int d[MAXN]
    cdef long i, j
    cdef int k
    with nogil:
        for i in range(total):
            _digits(i, n, xsize, d)
            j = 0
            for k in range(n):
                j = j * ysize + phi[d[k]]
            o[i] = ptable[j]
    return out


def median_witness(const int[::1] v, int n, int xsize, int xbot, int xtop,
                   const int[::1] phi, const int[:, ::1] m, const int[:, ::1] j):
    _check_n(n)
    cdef long total = _ipow(xsize, n)
    cdef int d[MAXN]
    cdef long st[MAXN]
    cdef long i, base
    cdef int k, a, b, c
    _strides(n, xsize, st)
    with nogil:
        for i in range(total):
            _digits(i, n, xsize, d)
            for k in range(n):
                base = i - d[k] * st[k]
                a = v[base + xbot * st[k]]
                c = v[base + xtop * st[k]]
                b = phi[d[k]]
                if j[j[m[a, b], m[b, c]], m[c, a]] != v[i]:
                    with gil:
                        return int(i), k
    return -1, -1


def order_witness(const int[::1] v, int n, int xsize, const unsigned char[:, ::1] xleq,
                  const unsigned char[:, ::1] yleq):
    _check_n(n)
    cdef long total = _ipow(xsize, n)
    cdef int d[MAXN]
    cdef long st[MAXN]
    cdef long i, y
    cdef int k, c
    _strides(n, xsize, st)
    with nogil:
        for i in range(total):
            _digits(i, n, xsize, d)
            for k in range(n):
                for c in range(xsize):
                    if c != d[k] and xleq[d[k], c]:
                        y = i + (c - d[k]) * st[k]
                        if not yleq[v[i], v[y]]:
                            with gil:
                                return int(i), int(y)
    return -1, -1


def homogeneity_witness(const int[::1] v, int n, int xsize, const int[:, ::1] xop,
                        const int[:, ::1] yop, const int[::1] phi,
                        const unsigned char[::1] cmask):
    _check_n(n)
    cdef long total = _ipow(xsize, n)
    cdef int d[MAXN]
    cdef long i, y
    cdef int k, c
    with nogil:
        for i in range(total):
            _digits(i, n, xsize, d)
            for c in range(xsize):
                if not cmask[c]:
                    continue
                y = 0
                for k in range(n):
                    y = y * xsize + xop[d[k], c]
                if v[y] != yop[v[i], phi[c]]:
                    with gil:
                        return int(i), c
    return -1, -1


def horizontal_witness(const int[::1] v, int n, int xsize, const int[:, ::1] xop,
                       const int[:, ::1] yop, const unsigned char[:, ::1] xleq,
                       bint ge, int clip_to):
    _check_n(n)
    cdef long total = _ipow(xsize, n)
    cdef int d[MAXN]
    cdef long i, shifted, clipped
    cdef int k, c, xi
    cdef bint hit
    with nogil:
        for i in range(total):
            _digits(i, n, xsize, d)
            for c in range(xsize):
                shifted = 0
                clipped = 0
                for k in range(n):
                    xi = d[k]
                    shifted = shifted * xsize + xop[xi, c]
                    hit = xleq[c, xi] if ge else xleq[xi, c]
                    clipped = clipped * xsize + (clip_to if hit else xi)
                if v[i] != yop[v[shifted], v[clipped]]:
                    with gil:
                        return int(i), c
    return -1, -1


def comonotone_witness(const int[::1] v, int n, int xsize, const int[::1] key,
                       const unsigned char[:, ::1] kleq, const int[:, ::1] perms,
                       const int[:, ::1] xop, const int[:, ::1] yop):
    _check_n(n)
    cdef long total = _ipow(xsize, n)
    cdef int nperm = perms.shape[0]
    if nperm > 63:
        raise ValueError("at most 63 permutations supported")
    masks_arr = np.zeros(total, dtype=np.int64)
    digits_arr = np.zeros((total, n), dtype=np.int32)
    cdef long long[::1] masks = masks_arr
    cdef int[:, ::1] dg = digits_arr
    cdef int d[MAXN]
    cdef long i, i2, y
    cdef int k, p, t
    cdef long long mask, common
    cdef bint ok
    with nogil:
        for i in range(total):
            _digits(i, n, xsize, d)
            mask = 0
            for k in range(n):
                dg[i, k] = d[k]
            for p in range(nperm):
                ok = True
                for t in range(n - 1):
                    if not kleq[key[d[perms[p, t]]], key[d[perms[p, t + 1]]]]:
                        ok = False
                        break
                if ok:
                    mask |= (<long long>1) << p
            masks[i] = mask
        for i in range(total):
            for i2 in range(total):
                common = masks[i] & masks[i2]
                if common == 0:
                    continue
                y = 0
                for k in range(n):
                    y = y * xsize + xop[dg[i, k], dg[i2, k]]
                if v[y] != yop[v[i], v[i2]]:
                    p = 0
                    while not ((common >> p) & 1):
                        p += 1
                    with gil:
                        return int(i), int(i2), p
    return -1, -1, -1
