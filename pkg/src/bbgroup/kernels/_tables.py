"""Lookup tables for small fields, shared by both kernel backends.

Elements are indexed by ``sum(c_i * p**i)`` over their coefficient tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..ffield import ExplicitField

PRIME, CHAR2, TABLE = 0, 1, 2

MAX_PRIME = 2**31
MAX_CHAR2 = 2**16
MAX_TABLE = 1024


@dataclass(frozen=True, eq=False)
class FieldTables:
    kind: int
    p: int
    q: int
    n: int
    width: int
    exp: np.ndarray  # exp[k] = index of g**k, length 2(q-1)
    log: np.ndarray  # log[index]; log[0] unused
    add: np.ndarray  # 2-D addition table (TABLE kind only)
    neg: np.ndarray  # negation table (TABLE kind only)
    ppow: np.ndarray  # p**i for i < n


def supports(F: ExplicitField) -> bool:
    if F.n == 1:
        return F.p < MAX_PRIME
    if F.p == 2:
        return F.q <= MAX_CHAR2
    return F.q <= MAX_TABLE


def _gf2_mul(a: int, b: int, mod: int, n: int) -> int:
    out = 0
    top = 1 << n
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= mod
    return out


@lru_cache(maxsize=None)
def field_tables(F: ExplicitField) -> FieldTables:
    if not supports(F):
        raise ValueError(f"{F!r} is too large for table arithmetic")
    dummy1 = np.zeros(1, dtype=np.int64)
    dummy2 = np.zeros((1, 1), dtype=np.int64)
    ppow = np.array([F.p**i for i in range(F.n)], dtype=np.int64)
    if F.n == 1:
        return FieldTables(PRIME, F.p, F.p, 1, F.width, dummy1, dummy1, dummy2, dummy1, ppow)

    q = F.q
    g = F.to_index(F.primitive_element)
    exp = np.zeros(2 * (q - 1), dtype=np.int64)
    log = np.zeros(q, dtype=np.int64)
    if F.p == 2:
        mod = sum(c << i for i, c in enumerate(F.modulus))
        x = 1
        for k in range(q - 1):
            exp[k] = x
            log[x] = k
            x = _gf2_mul(x, g, mod, F.n)
        exp[q - 1 :] = exp[: q - 1]
        return FieldTables(CHAR2, 2, q, F.n, F.width, exp, log, dummy2, dummy1, ppow)

    ge = F.from_index(g)
    x = F.one
    for k in range(q - 1):
        i = F.to_index(x)
        exp[k] = i
        log[i] = k
        x = F.mul(x, ge)
    exp[q - 1 :] = exp[: q - 1]
    idx = np.arange(q, dtype=np.int64)
    digits = (idx[:, None] // ppow[None, :]) % F.p  # (q, n)
    summed = (digits[:, None, :] + digits[None, :, :]) % F.p
    add = (summed * ppow).sum(-1).astype(np.int64)
    neg = (((F.p - digits) % F.p) * ppow).sum(-1).astype(np.int64)
    return FieldTables(TABLE, F.p, q, F.n, F.width, exp, log, add, neg, ppow)
