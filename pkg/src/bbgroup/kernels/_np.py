"""Vectorized numpy versions of the kernels in ``_jit``; same signatures."""

import numpy as np

PRIME, CHAR2, TABLE = 0, 1, 2


def _fmul(a, b, kind, p, q, exp, log):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if kind == PRIME:
        return (a * b) % p
    out = exp[log[a] + log[b]]
    return np.where((a == 0) | (b == 0), 0, out)


def _fadd(a, b, kind, p, add):
    if kind == PRIME:
        return (a + b) % p
    if kind == CHAR2:
        return np.bitwise_xor(a, b)
    return add[a, b]


def _fneg(a, kind, p, neg):
    if kind == PRIME:
        return (-a) % p
    if kind == CHAR2:
        return a
    return neg[a]


def _finv(a, kind, p, q, exp, log):
    if kind == PRIME:
        return pow(int(a), -1, p)
    return int(exp[(q - 1 - log[a]) % (q - 1)])


def decode(buf, d, kind, p, q, n, w, exp, log, add, neg, ppow):
    raw = np.asarray(buf, dtype=np.int64).reshape(d * d, n, w)
    scale = 256 ** np.arange(w - 1, -1, -1, dtype=np.int64)
    coeffs = (raw * scale).sum(-1)
    return (coeffs * ppow).sum(-1).reshape(d, d)


def encode(m, kind, p, q, n, w, exp, log, add, neg, ppow):
    flat = np.asarray(m, dtype=np.int64).reshape(-1)
    coeffs = (flat[:, None] // ppow[None, :]) % p
    shifts = 8 * np.arange(w - 1, -1, -1, dtype=np.int64)
    return ((coeffs[:, :, None] >> shifts) & 255).astype(np.uint8).reshape(-1)


def _reduce_sum(prod, axis, kind, p, add):
    parts = np.moveaxis(prod, axis, 0)
    acc = parts[0]
    for part in parts[1:]:
        acc = _fadd(acc, part, kind, p, add)
    return acc


def matmul(a, b, kind, p, q, n, w, exp, log, add, neg, ppow):
    prod = _fmul(a[:, :, None], b[None, :, :], kind, p, q, exp, log)
    return _reduce_sum(prod, 1, kind, p, add)


def matinv(a, kind, p, q, n, w, exp, log, add, neg, ppow):
    d = a.shape[0]
    m = np.array(a, dtype=np.int64)
    inv = np.eye(d, dtype=np.int64)
    for col in range(d):
        nz = np.nonzero(m[col:, col])[0]
        if nz.size == 0:
            return np.full((d, d), -1, dtype=np.int64)
        piv = col + int(nz[0])
        if piv != col:
            m[[col, piv]] = m[[piv, col]]
            inv[[col, piv]] = inv[[piv, col]]
        s = _finv(m[col, col], kind, p, q, exp, log)
        m[col] = _fmul(m[col], s, kind, p, q, exp, log)
        inv[col] = _fmul(inv[col], s, kind, p, q, exp, log)
        for r in range(d):
            if r != col and m[r, col] != 0:
                f = _fneg(m[r, col], kind, p, neg)
                m[r] = _fadd(m[r], _fmul(f, m[col], kind, p, q, exp, log), kind, p, add)
                inv[r] = _fadd(inv[r], _fmul(f, inv[col], kind, p, q, exp, log), kind, p, add)
    return inv


def mul_bytes(x, y, d, kind, p, q, n, w, exp, log, add, neg, ppow):
    t = (kind, p, q, n, w, exp, log, add, neg, ppow)
    c = matmul(decode(x, d, *t), decode(y, d, *t), *t)
    return encode(c, *t)


def inv_bytes(x, d, kind, p, q, n, w, exp, log, add, neg, ppow):
    t = (kind, p, q, n, w, exp, log, add, neg, ppow)
    b = matinv(decode(x, d, *t), *t)
    if b[0, 0] < 0:
        return np.zeros(0, dtype=np.uint8)
    return encode(b, *t)


def eq_bytes(x, y, d, scalars, kind, p, q, n, w, exp, log, add, neg, ppow):
    t = (kind, p, q, n, w, exp, log, add, neg, ppow)
    a = decode(x, d, *t)
    b = decode(y, d, *t)
    scaled = _fmul(scalars[:, None, None], b[None, :, :], kind, p, q, exp, log)
    return bool((scaled == a[None]).all(axis=(1, 2)).any())


def batch_matmul(mats, b, kind, p, q, n, w, exp, log, add, neg, ppow):
    prod = _fmul(mats[:, :, :, None], b[None, None, :, :], kind, p, q, exp, log)
    return _reduce_sum(prod, 2, kind, p, add)


def batch_keys(mats, scalars, kind, p, q, n, w, exp, log, add, neg, ppow):
    m, d = mats.shape[0], mats.shape[1]
    weights = np.array([q ** (d * d - 1 - i) for i in range(d * d)], dtype=np.int64)
    flat = mats.reshape(m, d * d)
    best = None
    for lam in scalars:
        keys = (_fmul(int(lam), flat, kind, p, q, exp, log) * weights).sum(-1)
        best = keys if best is None else np.minimum(best, keys)
    return best
