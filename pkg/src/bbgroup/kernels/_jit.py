"""numba kernels for matrices over small fields.

Every public kernel takes the unpacked table tuple
``(kind, p, q, n, w, exp, log, add, neg, ppow)`` after its own arguments.
"""

import numpy as np
from numba import njit

PRIME, CHAR2, TABLE = 0, 1, 2


@njit(cache=True, inline="always")
def _fmul(a, b, kind, p, q, exp, log):
    if a == 0 or b == 0:
        return 0
    if kind == PRIME:
        return (a * b) % p
    return exp[log[a] + log[b]]


@njit(cache=True, inline="always")
def _fadd(a, b, kind, p, add):
    if kind == PRIME:
        s = a + b
        return s - p if s >= p else s
    if kind == CHAR2:
        return a ^ b
    return add[a, b]


@njit(cache=True, inline="always")
def _fneg(a, kind, p, neg):
    if kind == PRIME:
        return 0 if a == 0 else p - a
    if kind == CHAR2:
        return a
    return neg[a]


@njit(cache=True)
def _finv(a, kind, p, q, exp, log):
    if kind == PRIME:
        # extended Euclid
        r0, r1 = p, a
        s0, s1 = 0, 1
        while r1 != 0:
            t = r0 // r1
            r0, r1 = r1, r0 - t * r1
            s0, s1 = s1, s0 - t * s1
        return s0 % p
    return exp[(q - 1 - log[a]) % (q - 1)]


@njit(cache=True)
def decode(buf, d, kind, p, q, n, w, exp, log, add, neg, ppow):
    out = np.empty((d, d), dtype=np.int64)
    pos = 0
    for i in range(d):
        for j in range(d):
            idx = 0
            for c in range(n):
                v = 0
                for _ in range(w):
                    v = v * 256 + buf[pos]
                    pos += 1
                idx += v * ppow[c]
            out[i, j] = idx
    return out


@njit(cache=True)
def encode(m, kind, p, q, n, w, exp, log, add, neg, ppow):
    d = m.shape[0]
    out = np.empty(d * d * n * w, dtype=np.uint8)
    pos = 0
    for i in range(d):
        for j in range(d):
            idx = m[i, j]
            for c in range(n):
                v = idx % p
                idx //= p
                for b in range(w - 1, -1, -1):
                    out[pos + b] = v & 255
                    v >>= 8
                pos += w
    return out


@njit(cache=True)
def matmul(a, b, kind, p, q, n, w, exp, log, add, neg, ppow):
    d = a.shape[0]
    return batch_matmul(a.reshape((1, d, d)), b, kind, p, q, n, w, exp, log, add, neg, ppow)[0]


@njit(cache=True)
def matinv(a, kind, p, q, n, w, exp, log, add, neg, ppow):
    """Gauss-Jordan inverse; returns an all -1 matrix when singular."""
    d = a.shape[0]
    m = a.copy()
    inv = np.zeros((d, d), dtype=np.int64)
    for i in range(d):
        inv[i, i] = 1
    for col in range(d):
        piv = -1
        for r in range(col, d):
            if m[r, col] != 0:
                piv = r
                break
        if piv < 0:
            return np.full((d, d), -1, dtype=np.int64)
        if piv != col:
            for c in range(d):
                m[col, c], m[piv, c] = m[piv, c], m[col, c]
                inv[col, c], inv[piv, c] = inv[piv, c], inv[col, c]
        s = _finv(m[col, col], kind, p, q, exp, log)
        for c in range(d):
            m[col, c] = _fmul(m[col, c], s, kind, p, q, exp, log)
            inv[col, c] = _fmul(inv[col, c], s, kind, p, q, exp, log)
        for r in range(d):
            if r != col and m[r, col] != 0:
                f = _fneg(m[r, col], kind, p, neg)
                for c in range(d):
                    m[r, c] = _fadd(m[r, c], _fmul(f, m[col, c], kind, p, q, exp, log), kind, p, add)
                    inv[r, c] = _fadd(inv[r, c], _fmul(f, inv[col, c], kind, p, q, exp, log), kind, p, add)
    return inv


@njit(cache=True)
def mul_bytes(x, y, d, kind, p, q, n, w, exp, log, add, neg, ppow):
    a = decode(x, d, kind, p, q, n, w, exp, log, add, neg, ppow)
    b = decode(y, d, kind, p, q, n, w, exp, log, add, neg, ppow)
    c = matmul(a, b, kind, p, q, n, w, exp, log, add, neg, ppow)
    return encode(c, kind, p, q, n, w, exp, log, add, neg, ppow)


@njit(cache=True)
def inv_bytes(x, d, kind, p, q, n, w, exp, log, add, neg, ppow):
    a = decode(x, d, kind, p, q, n, w, exp, log, add, neg, ppow)
    b = matinv(a, kind, p, q, n, w, exp, log, add, neg, ppow)
    if b[0, 0] < 0:
        return np.zeros(0, dtype=np.uint8)
    return encode(b, kind, p, q, n, w, exp, log, add, neg, ppow)


@njit(cache=True)
def eq_bytes(x, y, d, scalars, kind, p, q, n, w, exp, log, add, neg, ppow):
    """True when ``x == lam * y`` for some ``lam`` in ``scalars``."""
    a = decode(x, d, kind, p, q, n, w, exp, log, add, neg, ppow)
    b = decode(y, d, kind, p, q, n, w, exp, log, add, neg, ppow)
    for s in range(scalars.shape[0]):
        lam = scalars[s]
        ok = True
        for i in range(d):
            for j in range(d):
                if a[i, j] != _fmul(lam, b[i, j], kind, p, q, exp, log):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


# The field kind is dispatched once, outside the loops; a branch on it in the
# inner loop costs close to an order of magnitude.


@njit(cache=True)
def _batch_prime(mats, b, p):
    m, d = mats.shape[0], mats.shape[1]
    out = np.empty((m, d, d), dtype=np.int64)
    for t in range(m):
        for i in range(d):
            for j in range(d):
                # each reduced product is < 2^31, so a row of them cannot overflow
                acc = 0
                for k in range(d):
                    acc += (mats[t, i, k] * b[k, j]) % p
                out[t, i, j] = acc % p
    return out


@njit(cache=True)
def _batch_logtable(mats, b, exp, log, add, char2):
    m, d = mats.shape[0], mats.shape[1]
    out = np.empty((m, d, d), dtype=np.int64)
    for t in range(m):
        for i in range(d):
            for j in range(d):
                acc = 0
                for k in range(d):
                    x, y = mats[t, i, k], b[k, j]
                    if x != 0 and y != 0:
                        z = exp[log[x] + log[y]]
                        acc = acc ^ z if char2 else add[acc, z]
                out[t, i, j] = acc
    return out


@njit(cache=True)
def batch_matmul(mats, b, kind, p, q, n, w, exp, log, add, neg, ppow):
    if kind == PRIME:
        return _batch_prime(mats, b, p)
    return _batch_logtable(mats, b, exp, log, add, kind == CHAR2)


@njit(cache=True)
def batch_keys(mats, scalars, kind, p, q, n, w, exp, log, add, neg, ppow):
    """Least base-q integer key of ``lam * M`` over ``lam`` in ``scalars``."""
    m, d = mats.shape[0], mats.shape[1]
    out = np.empty(m, dtype=np.int64)
    for t in range(m):
        best = -1
        for s in range(scalars.shape[0]):
            lam = scalars[s]
            key = 0
            for i in range(d):
                for j in range(d):
                    key = key * q + _fmul(lam, mats[t, i, j], kind, p, q, exp, log)
            if best < 0 or key < best:
                best = key
        out[t] = best
    return out
