"""Integer helpers: 2-part splitting, Miller-Rabin, and trial-division factoring."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable

from .errors import IncompleteFactorizationError

TRIAL_DIVISION_LIMIT = 10**6

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def split_two_part(e: int) -> tuple[int, int]:
    """Return ``(s, m)`` with ``e == 2**s * m`` and ``m`` odd."""
    if e < 1:
        raise ValueError(f"split_two_part needs e >= 1, got {e}")
    s = (e & -e).bit_length() - 1
    return s, e >> s


def _strong_witness(a: int, n: int, s: int, m: int) -> bool:
    """True when ``a`` proves ``n`` composite."""
    x = pow(a, m, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
        if x == 1:
            return True
    return True


def miller_rabin(n: int, rounds: int = 20, rng: random.Random | None = None) -> str:
    """Strong pseudoprime test for odd ``n >= 3``.

    Returns ``"composite"`` (always correct) or ``"probably-prime"``.
    The odd part of ``n - 1`` comes from :func:`split_two_part`; each round
    walks the squaring chain of a random base inside the unit group mod n.
    """
    if n % 2 == 0:
        raise ValueError(f"miller_rabin needs an odd n, got {n}")
    if n < 3:
        raise ValueError(f"miller_rabin needs n >= 3, got {n}")
    if n == 3:
        return "probably-prime"
    rng = rng or random.Random(n)
    s, m = split_two_part(n - 1)
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        if _strong_witness(a, n, s, m):
            return "composite"
    return "probably-prime"


def is_probable_prime(n: int, rounds: int = 32) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    s, m = split_two_part(n - 1)
    # fixed small bases are deterministic below 3.3e24; random ones cover the rest
    for a in _SMALL_PRIMES:
        if _strong_witness(a, n, s, m):
            return False
    if n.bit_length() > 80:
        rng = random.Random(n)
        for _ in range(rounds):
            if _strong_witness(rng.randrange(2, n - 1), n, s, m):
                return False
    return True


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer together with its prime factorization."""

    value: int
    factors: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        prod = 1
        for p, a in self.factors:
            prod *= p**a
        if prod != self.value:
            raise IncompleteFactorizationError(
                f"factors multiply to {prod}, not {self.value}"
            )

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __int__(self):
        return self.value

    def __str__(self):
        if self.value == 1:
            return "1"
        return "·".join(f"{p}^{a}" if a > 1 else str(p) for p, a in self.factors)

    @classmethod
    def parse(cls, text: str) -> "FactoredInteger":
        """Parse ``a^b·c^d`` (``*`` also accepted as separator)."""
        text = text.strip().replace("*", "·")
        if text == "1":
            return cls(1, ())
        acc: dict[int, int] = {}
        for part in text.split("·"):
            base, _, exp = part.partition("^")
            acc[int(base)] = acc.get(int(base), 0) + (int(exp) if exp else 1)
        value = math.prod(p**a for p, a in acc.items())
        return cls(value, tuple(sorted(acc.items())))

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> "FactoredInteger":
        return cls(math.prod(p**a for p, a in d.items()), tuple(sorted(d.items())))


def factorize(n: int, hints: Iterable[int] = (), limit: int = TRIAL_DIVISION_LIMIT) -> FactoredInteger:
    """Factor ``n`` by dividing out ``hints`` then trial division up to ``limit``.

    A leftover cofactor is accepted only if it passes Miller-Rabin; otherwise
    :class:`IncompleteFactorizationError` is raised.
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    acc: dict[int, int] = {}
    rest = n

    def take(p: int):
        nonlocal rest
        while rest % p == 0:
            acc[p] = acc.get(p, 0) + 1
            rest //= p

    for h in hints:
        if h > 1 and rest % h == 0:
            if not is_probable_prime(h):
                raise ValueError(f"hint {h} is not prime")
            take(h)
    take(2)
    d = 3
    while d <= limit and d * d <= rest:
        if rest % d == 0:
            take(d)
        d += 2
    if rest > 1:
        if not is_probable_prime(rest):
            raise IncompleteFactorizationError(
                f"cofactor {rest} of {n} is composite and beyond trial division"
            )
        acc[rest] = acc.get(rest, 0) + 1
    return FactoredInteger.from_dict(acc)


def lcm_factored(*parts: FactoredInteger) -> FactoredInteger:
    acc: dict[int, int] = {}
    for f in parts:
        for p, a in f.factors:
            acc[p] = max(acc.get(p, 0), a)
    return FactoredInteger.from_dict(acc)


def mul_factored(*parts: FactoredInteger) -> FactoredInteger:
    acc: dict[int, int] = {}
    for f in parts:
        for p, a in f.factors:
            acc[p] = acc.get(p, 0) + a
    return FactoredInteger.from_dict(acc)


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q == p**k`` by trial division; for small q only."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    if is_probable_prime(q):
        return q, 1
    f = factorize(q)
    if len(f.factors) != 1:
        raise ValueError(f"{q} is not a prime power")
    return f.factors[0]
