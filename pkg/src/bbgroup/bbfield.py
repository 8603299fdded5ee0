"""Black box fields of known characteristic p.

Strings are fixed-length bytes with oracles for random elements, addition,
multiplication, inversion and equality.  The prime subfield is always
reachable from the unit; for small p it can be read back by a scan.
"""

from __future__ import annotations

import random
from typing import Callable

from .errors import StringLengthError
from .ffield import ExplicitField

__all__ = [
    "BlackBoxField",
    "WrappedField",
    "bbf_wrap",
    "bbf_prime_embed",
    "bbf_small_dlog",
    "bbf_extend",
]


class BlackBoxField:
    """Oracle interface; subclasses supply the operations."""

    length: int
    p: int
    rng: random.Random

    def rand(self) -> bytes:
        raise NotImplementedError

    def add(self, x: bytes, y: bytes) -> bytes:
        raise NotImplementedError

    def neg(self, x: bytes) -> bytes:
        raise NotImplementedError

    def mul(self, x: bytes, y: bytes) -> bytes:
        raise NotImplementedError

    def inv(self, x: bytes) -> bytes:
        raise NotImplementedError

    def eq(self, x: bytes, y: bytes) -> bool:
        raise NotImplementedError

    def zero(self) -> bytes:
        raise NotImplementedError

    def one(self) -> bytes:
        raise NotImplementedError

    def check(self, *xs: bytes) -> None:
        for x in xs:
            if len(x) != self.length:
                raise StringLengthError(f"string of length {len(x)} handed to a field of length {self.length}")


class WrappedField(BlackBoxField):
    """Black box field backed by an explicit field; strings are element encodings."""

    def __init__(self, F: ExplicitField, seed: int | None = None):
        self.field = F
        self.p = F.p
        self.length = F.n * F.width
        self.rng = random.Random(seed)
        self._zero = F.encode(F.zero)
        self._one = F.encode(F.one)

    def _d(self, x: bytes):
        self.check(x)
        return self.field.decode(x)

    def rand(self) -> bytes:
        return self.field.encode(self.field.random(self.rng))

    def add(self, x: bytes, y: bytes) -> bytes:
        return self.field.encode(self.field.add(self._d(x), self._d(y)))

    def neg(self, x: bytes) -> bytes:
        return self.field.encode(self.field.neg(self._d(x)))

    def mul(self, x: bytes, y: bytes) -> bytes:
        return self.field.encode(self.field.mul(self._d(x), self._d(y)))

    def inv(self, x: bytes) -> bytes:
        return self.field.encode(self.field.inv(self._d(x)))

    def eq(self, x: bytes, y: bytes) -> bool:
        self.check(x, y)
        return x == y

    def zero(self) -> bytes:
        return self._zero

    def one(self) -> bytes:
        return self._one


def bbf_wrap(F: ExplicitField, seed: int | None = None) -> WrappedField:
    return WrappedField(F, seed)


def bbf_prime_embed(K: BlackBoxField, m: int) -> bytes:
    """The image of ``m mod p`` under the canonical map F_p -> K (double-and-add on the unit)."""
    m %= K.p
    acc, base = K.zero(), K.one()
    while m:
        if m & 1:
            acc = K.add(acc, base)
        m >>= 1
        if m:
            base = K.add(base, base)
    return acc


def bbf_small_dlog(K: BlackBoxField, x: bytes) -> int:
    """The m in [0, p) with ``m * 1 == x``, by a linear scan."""
    K.check(x)
    acc = K.zero()
    one = K.one()
    for m in range(K.p):
        if K.eq(acc, x):
            return m
        acc = K.add(acc, one)
    raise ValueError("element is not in the prime subfield")


def bbf_extend(
    K: BlackBoxField, L: BlackBoxField, prime_map: Callable[[bytes], bytes]
) -> Callable[[bytes], bytes]:
    """Extend a prime-subfield morphism K_0 -> L to all of K.

    Only the case of two wraps of the same explicit field is supported, where
    the extension is the identity on strings.
    """
    if (
        isinstance(K, WrappedField)
        and isinstance(L, WrappedField)
        and K.field == L.field
        and L.eq(prime_map(K.one()), L.one())
    ):
        return lambda x: x
    raise NotImplementedError("extension of prime-subfield morphisms is only available between identical wraps")
