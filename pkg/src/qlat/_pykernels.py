"""Pure-Python kernels. Reference semantics for the compiled ``_ckernels``.

Every function walks tuple indices in cursor order (last coordinate fastest)
and returns the first counterexample it meets, or ``-1`` sentinels.
Arrays are int32 tables; order matrices are uint8.
"""
import numpy as np


def _digits(i, n, size):
    out = [0] * n
    for k in range(n - 1, -1, -1):
        i, out[k] = divmod(i, size)
    return out


def _strides(n, size):
    return [size ** (n - 1 - k) for k in range(n)]


def dnf_table(alpha, n, size, meet, join, top):
    alpha = [int(a) for a in alpha]
    meet = meet.tolist()
    join = join.tolist()
    total = size**n
    out = np.empty(total, dtype=np.int32)
    for i in range(total):
        d = _digits(i, n, size)
        acc = 0
        for mask in range(1 << n):
            term = alpha[mask]
            for k in range(n):
                if mask >> k & 1:
                    term = meet[term][d[k]]
            acc = join[acc][term]
        out[i] = acc
    return out


def compose_table(ptable, phi, n, xsize, ysize):
    ptable = ptable.tolist()
    phi = phi.tolist()
    total = xsize**n
    out = np.empty(total, dtype=np.int32)
    for i in range(total):
        j = 0
        for xi in _digits(i, n, xsize):
            j = j * ysize + phi[xi]
        out[i] = ptable[j]
    return out


def median_witness(values, n, xsize, xbot, xtop, phi, ymeet, yjoin):
    v = values.tolist()
    phi = phi.tolist()
    m = ymeet.tolist()
    j = yjoin.tolist()
    st = _strides(n, xsize)
    for i in range(xsize**n):
        d = _digits(i, n, xsize)
        for k in range(n):
            base = i - d[k] * st[k]
            a = v[base + xbot * st[k]]
            c = v[base + xtop * st[k]]
            b = phi[d[k]]
            if j[j[m[a][b]][m[b][c]]][m[c][a]] != v[i]:
                return i, k
    return -1, -1


def order_witness(values, n, xsize, xleq, yleq):
    v = values.tolist()
    xl = xleq.tolist()
    yl = yleq.tolist()
    st = _strides(n, xsize)
    for i in range(xsize**n):
        d = _digits(i, n, xsize)
        for k in range(n):
            for c in range(xsize):
                if c != d[k] and xl[d[k]][c]:
                    y = i + (c - d[k]) * st[k]
                    if not yl[v[i]][v[y]]:
                        return i, y
    return -1, -1


def homogeneity_witness(values, n, xsize, xop, yop, phi, cmask):
    v = values.tolist()
    xo = xop.tolist()
    yo = yop.tolist()
    phi = phi.tolist()
    cs = [c for c in range(xsize) if cmask[c]]
    for i in range(xsize**n):
        d = _digits(i, n, xsize)
        for c in cs:
            y = 0
            for xi in d:
                y = y * xsize + xo[xi][c]
            if v[y] != yo[v[i]][phi[c]]:
                return i, c
    return -1, -1


def horizontal_witness(values, n, xsize, xop, yop, xleq, ge, clip_to):
    v = values.tolist()
    xo = xop.tolist()
    yo = yop.tolist()
    xl = xleq.tolist()
    for i in range(xsize**n):
        d = _digits(i, n, xsize)
        for c in range(xsize):
            shifted = 0
            clipped = 0
            for xi in d:
                shifted = shifted * xsize + xo[xi][c]
                hit = xl[c][xi] if ge else xl[xi][c]
                clipped = clipped * xsize + (clip_to if hit else xi)
            if v[i] != yo[v[shifted]][v[clipped]]:
                return i, c
    return -1, -1


def comonotone_witness(values, n, xsize, key, kleq, perms, xop, yop):
    v = values.tolist()
    key = key.tolist()
    kl = kleq.tolist()
    xo = xop.tolist()
    yo = yop.tolist()
    perms = perms.tolist()
    total = xsize**n
    digits = [_digits(i, n, xsize) for i in range(total)]
    masks = []
    for d in digits:
        kd = [key[x] for x in d]
        mask = 0
        for p, sigma in enumerate(perms):
            if all(kl[kd[sigma[t]]][kd[sigma[t + 1]]] for t in range(n - 1)):
                mask |= 1 << p
        masks.append(mask)
    for i in range(total):
        for i2 in range(total):
            common = masks[i] & masks[i2]
            if not common:
                continue
            y = 0
            for a, b in zip(digits[i], digits[i2]):
                y = y * xsize + xo[a][b]
            if v[y] != yo[v[i]][v[i2]]:
                return i, i2, (common & -common).bit_length() - 1
    return -1, -1, -1
