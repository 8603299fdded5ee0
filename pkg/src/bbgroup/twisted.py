"""Involutive automorphisms made concrete: involutions of SL_2(2^n) from a
virtual Weyl element, clean-action reification, inverse-transpose maps, and
unitary subgroups of SL_n(q^2).
"""

from __future__ import annotations

import math
from typing import Sequence

from .bbcore import BlackBox, GeneratedBox, bb_generated
from .cyclic import is_involution, order_exact
from .datum import CurtisTitsDatum, gcd_power
from .errors import BudgetExhaustedError
from .morphisms import EnrichedBox, amalgamate, conjugation, inversion
from .numtheory import FactoredInteger, split_two_part

__all__ = ["kk_involution", "kk_from_pair", "reify_clean", "inverse_transpose", "su_subgroup"]


def kk_from_pair(X: BlackBox, g: bytes, h: bytes, E: FactoredInteger | int) -> bytes | None:
    """Involution built from two odd-order elements, or None if they commute.

    With ``c = g h g^-1 h^-1`` and the virtual involution w inverting both g
    and h, ``gh w`` squares to c, so ``c`` has a square root ``r = c^((m+1)/2)``
    in ``<c>`` (m = |c| odd) and ``w = (gh)^-1 r``.  When ``|c| = 2`` the
    elements share a Borel subgroup and c itself is an involution.
    """
    if X.commutes(g, h):
        return None
    c = X.commutator(g, h)
    m = order_exact(X, c, E)
    if m == 2:
        return c
    if m % 2 == 0:
        return None
    root = X.pow(c, (m + 1) // 2)
    return X.mul(X.inv(X.mul(g, h)), root)


def kk_involution(X: BlackBox, E: FactoredInteger | int, budget: int = 100) -> bytes:
    """An involution of a box encrypting SL_2(2^n)."""
    s, _ = split_two_part(int(E))
    one = X.identity()
    for _ in range(budget):
        g, h = X.rand(), X.rand()
        for a in (g, h):
            if is_involution(X, a):
                return a
        g, h = X.pow(g, 1 << s), X.pow(h, 1 << s)
        if X.eq(g, one) or X.eq(h, one):
            continue
        i = kk_from_pair(X, g, h, E)
        if i is not None and is_involution(X, i):
            return i
    raise BudgetExhaustedError(f"no involution found in {budget} attempts")


def reify_clean(X: BlackBox, locals_: Sequence[tuple[Sequence[bytes], int]], seed: int | None = None) -> EnrichedBox:
    """Amalgamate an involutive automorphism acting by +1 (centralizing) or
    -1 (inverting) on each local subgroup."""
    if not locals_:
        raise ValueError("reification needs at least one local")
    ident = lambda x: x  # noqa: E731
    inv = inversion(X)
    parts = []
    for gens, sign in locals_:
        if sign not in (1, -1):
            raise ValueError(f"clean action sign must be +1 or -1, got {sign}")
        parts.append((gens, ident if sign == 1 else inv))
    return amalgamate(X, parts, 2, seed=seed)


def inverse_transpose(X: BlackBox, datum: CurtisTitsDatum, seed: int | None = None) -> EnrichedBox:
    """Amalgamate conjugation by w_i on each root subgroup K_i."""
    if datum.rank == 0:
        raise ValueError("datum has rank 0")
    locals_ = [(nd.K_gens, conjugation(X, nd.w)) for nd in datum.nodes]
    return amalgamate(X, locals_, 2, seed=seed)


def su_subgroup(
    X: BlackBox,
    datum: CurtisTitsDatum,
    q: int,
    seed: int | None = None,
    printed_exponents: bool = False,
) -> GeneratedBox:
    """Box over a conjugate of SU_n(q) inside a box over SL_n(q^2).

    Each node contributes ``t_split^(o / gcd(o, q + 1))`` and
    ``t_twisted^(o' / gcd(o', eps q - 1))`` where ``q = eps mod 4``: the
    fixed points of inverse-transpose composed with the q-Frobenius inside
    the two tori.  ``printed_exponents`` uses ``eps q + 1`` on the split
    torus instead; for q = 3 mod 4 that cuts out SL_n(q), not SU_n(q).
    """
    if q % 2 == 0:
        raise ValueError(f"odd q required, got {q}")
    if datum.rank == 0:
        raise ValueError("datum has rank 0")
    eps = 1 if q % 4 == 1 else -1
    split_target = eps * q + 1 if printed_exponents else q + 1
    seeds = []
    for i, nd in enumerate(datum.nodes):
        for t, o in ((nd.t_split, nd.o_split), (nd.t_twisted, nd.o_twisted)):
            if not X.is_identity(X.pow(t, o)):
                raise ValueError(f"node {i}: declared torus order {o} does not annihilate its generator")
        seeds.append(X.pow(nd.t_split, gcd_power(nd.o_split, split_target)))
        seeds.append(X.pow(nd.t_twisted, gcd_power(nd.o_twisted, eps * q - 1)))
    return bb_generated(X, seeds, seed=seed)


def su_exponent(n: int, q: int) -> int:
    """An exponent of SU_n(q): ``p^ceil(log_p n) * lcm(q^i - (-1)^i)`` over 2 <= i <= n."""
    p = q
    for r in range(2, q + 1):
        if q % r == 0:
            p = r
            break
    ppart = 1
    while ppart < n:
        ppart *= p
    acc = 1
    for i in range(1, n + 1):
        acc = math.lcm(acc, q**i - (-1) ** i)
    return ppart * acc
