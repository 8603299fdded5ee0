"""Closure enumeration of matrix groups from white-box generators."""

from __future__ import annotations

import numpy as np

from .. import kernels
from .whitebox import Matrix, WhiteBox


def _closure_tables(W: WhiteBox, gens: list[Matrix], limit: int) -> int:
    F, d = W.field, W.dim
    ops = kernels.SmallMatrixOps(F, d, W.scalars)
    g_arr = [np.array([[F.to_index(a) for a in row] for row in g], dtype=np.int64) for g in gens]
    ident = np.eye(d, dtype=np.int64)[None]
    frontier = ident
    seen = ops.batch_keys(frontier)
    while frontier.shape[0]:
        cand = np.concatenate([ops.batch_matmul(frontier, g) for g in g_arr])
        keys = ops.batch_keys(cand)
        keys, first = np.unique(keys, return_index=True)
        fresh = ~np.isin(keys, seen, assume_unique=True)
        frontier = cand[first[fresh]]
        seen = np.union1d(seen, keys[fresh])
        if seen.size > limit:
            raise OverflowError(f"closure exceeds {limit} elements")
    return int(seen.size)


def _closure_python(W: WhiteBox, gens: list[Matrix], limit: int) -> int:
    ident = W.inv(gens[0])
    ident = W.mul(ident, gens[0])
    seen = {W.key(ident)}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                h = W.mul(m, g)
                k = W.key(h)
                if k not in seen:
                    seen.add(k)
                    nxt.append(h)
        if len(seen) > limit:
            raise OverflowError(f"closure exceeds {limit} elements")
        frontier = nxt
    return len(seen)


def closure_size(W: WhiteBox, gens: list[bytes] | list[Matrix], limit: int = 2_000_000) -> int:
    """Order of the group generated by ``gens`` (modulo the identified scalars).

    Generators may be strings of W's box or already projected matrices.
    """
    mats = [W.project(g) if isinstance(g, bytes) else g for g in gens]
    if not mats:
        return 1
    if kernels.supports(W.field) and kernels.SmallMatrixOps(W.field, W.dim, W.scalars).keys_fit():
        return _closure_tables(W, mats, limit)
    return _closure_python(W, mats, limit)


def element_census(W: WhiteBox, gens: list[bytes] | list[Matrix], limit: int = 100_000) -> set[tuple]:
    """Canonical keys of every element of the generated group (small groups)."""
    mats = [W.project(g) if isinstance(g, bytes) else g for g in gens]
    ident = W.mul(W.inv(mats[0]), mats[0])
    seen = {W.key(ident): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in mats:
                h = W.mul(m, g)
                k = W.key(h)
                if k not in seen:
                    seen[k] = h
                    nxt.append(h)
        if len(seen) > limit:
            raise OverflowError(f"closure exceeds {limit} elements")
        frontier = nxt
    return set(seen)
