"""Orders, square roots and involutions inside cyclic subgroups of a box.

``rho`` is the square-root oracle: Tonelli-Shanks run inside ``<x>`` using
only oracle operations and an exactly computed ``|x|``.  ``zeta_sample``
produces elements of an involution centralizer.
"""

from __future__ import annotations

from .bbcore import BlackBox
from .errors import NotInvolutionError, OrderError
from .numtheory import FactoredInteger, factorize, split_two_part

__all__ = [
    "split_two_part",
    "order_exact",
    "rho",
    "odd_sqrt",
    "involution_from",
    "zeta_sample",
    "factored_exponent",
    "is_involution",
]

_MEMO_LIMIT = 1 << 16


def factored_exponent(X: BlackBox) -> FactoredInteger:
    """The box's global exponent, factored (cached on the box)."""
    fe = getattr(X, "_factored_exponent", None)
    if fe is None:
        parent = getattr(X, "parent", None)
        if parent is not None and parent.exponent == X.exponent:
            fe = factored_exponent(parent)
        else:
            fe = factorize(X.require_exponent())
        X._factored_exponent = fe
    return fe


def _as_factored(E: FactoredInteger | int) -> FactoredInteger:
    return E if isinstance(E, FactoredInteger) else factorize(E)


def order_exact(X: BlackBox, x: bytes, E: FactoredInteger | int) -> int:
    """Least divisor d of E with ``x^d`` equal to the identity.

    Orders are memoized per box, keyed by the exact string and exponent.
    """
    E = _as_factored(E)
    memo = X.__dict__.setdefault("_order_memo", {})
    key = (x, E.value)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if not X.is_identity(X.pow(x, E.value)):
        raise OrderError("x^E is not the identity; the exponent is wrong")
    d = E.value
    for r, a in E.factors:
        for _ in range(a):
            if X.is_identity(X.pow(x, d // r)):
                d //= r
            else:
                break
    if len(memo) >= _MEMO_LIMIT:
        memo.clear()
    memo[key] = d
    return d


def odd_sqrt(X: BlackBox, x: bytes, y: bytes, m: int) -> bytes:
    """The unique square root of y in ``<x>`` when ``|x| = m`` is odd."""
    if m % 2 == 0:
        raise ValueError(f"odd_sqrt needs an odd order, got even order {m}")
    return X.pow(y, (m + 1) // 2)


def rho(X: BlackBox, x: bytes, y: bytes, E: FactoredInteger | int) -> list[bytes]:
    """All square roots of y inside ``<x>`` (0, 1 or 2 strings).

    Assumes y lies in ``<x>``; otherwise the result is meaningless.
    """
    n = order_exact(X, x, E)
    s, m = split_two_part(n)
    if s == 0:
        return [X.pow(y, (m + 1) // 2)]
    one = X.identity()
    # in a cyclic group of even order n, y is a square iff y^(n/2) = 1
    if not X.eq(X.pow(y, n // 2), one):
        return []
    c = X.pow(x, m)
    r = X.pow(y, (m + 1) // 2)
    t = X.pow(y, m)
    M = s
    while not X.eq(t, one):
        i, tt = 0, t
        while not X.eq(tt, one):
            tt = X.mul(tt, tt)
            i += 1
        b = c
        for _ in range(M - i - 1):
            b = X.mul(b, b)
        M = i
        c = X.mul(b, b)
        t = X.mul(t, c)
        r = X.mul(r, b)
    return [r, X.mul(r, X.pow(x, n // 2))]


def involution_from(X: BlackBox, x: bytes, E: FactoredInteger | int) -> bytes | None:
    """An involution in ``<x>``, or None when ``|x|`` is odd."""
    _, m = split_two_part(int(E))
    z = X.pow(x, m)
    one = X.identity()
    if X.eq(z, one):
        return None
    while True:
        z2 = X.mul(z, z)
        if X.eq(z2, one):
            return z
        z = z2


def is_involution(X: BlackBox, i: bytes) -> bool:
    one = X.identity()
    return not X.eq(i, one) and X.eq(X.mul(i, i), one)


def zeta_sample(X: BlackBox, i: bytes, E: FactoredInteger | int) -> bytes:
    """An element of the centralizer of the involution i.

    With g random and ``t = i * i^g``: if ``|t| = 2k+1`` return ``g t^k``,
    if ``|t| = 2k`` return the involution ``t^k``.
    """
    if not is_involution(X, i):
        raise NotInvolutionError("zeta_sample needs an involution")
    g = X.rand()
    t = X.mul(i, X.conj(i, g))
    n = order_exact(X, t, E)
    if n % 2:
        return X.mul(g, X.pow(t, n // 2))
    return X.pow(t, n // 2)
