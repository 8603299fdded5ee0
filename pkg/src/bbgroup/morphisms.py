"""Morphisms as sampled graph subgroups, and automorphisms carried by
k-tuples whose cyclic shift is the automorphism.

A graph box lives inside ``X x Y``; each sample is a pair ``(x, phi(x))``.
An enriched box lives inside ``X^k``: generator tuples
``(g, a(g), ..., a^{k-1}(g))`` generate a copy of ``<g ...>`` on which
rotating the components encrypts ``a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .bbcore import BlackBox, DirectProductBox, GeneratedBox, bb_direct_product, bb_generated

Evaluator = Callable[[bytes], bytes]

__all__ = [
    "Morphism",
    "EnrichedBox",
    "morphism_from_pairs",
    "enrich",
    "shift_apply",
    "amalgamate",
    "project_first",
    "power_map",
    "inversion",
    "conjugation",
]


@dataclass
class Morphism:
    source: BlackBox
    target: BlackBox
    graph: GeneratedBox
    evaluator: Evaluator | None = None

    @property
    def product(self) -> DirectProductBox:
        return self.graph.parent

    def sample(self) -> tuple[bytes, bytes]:
        """A random pair ``(x, phi(x))`` from the graph."""
        x, y = self.product.split(self.graph.rand())
        return x, y


def morphism_from_pairs(
    X: BlackBox, Y: BlackBox, pairs: Sequence[tuple[bytes, bytes]], seed: int | None = None
) -> Morphism:
    if not pairs:
        raise ValueError("morphism needs at least one generator pair")
    P = bb_direct_product(X, Y)
    graph = bb_generated(P, [x + y for x, y in pairs], seed=seed)
    return Morphism(X, Y, graph)


class EnrichedBox(BlackBox):
    """A box over k-tuples in ``X^k`` with cyclic shift as extra operation.

    All oracle operations delegate to the bundled generated box, so an
    enriched box can itself be fed to any algorithm taking a box.
    """

    def __init__(self, base: BlackBox, k: int, bundled: GeneratedBox, tuples: list[list[bytes]]):
        self.base = base
        self.k = k
        self.bundled = bundled
        self.tuples = tuples
        self.power = bundled.parent
        self.parent = bundled
        self.length = bundled.length
        self.exponent = bundled.exponent
        self.rng = bundled.rng
        self.flags: dict[str, str] = {}

    def rand(self) -> bytes:
        return self.bundled.rand()

    def mul(self, x: bytes, y: bytes) -> bytes:
        return self.bundled.mul(x, y)

    def inv(self, x: bytes) -> bytes:
        return self.bundled.inv(x)

    def eq(self, x: bytes, y: bytes) -> bool:
        return self.bundled.eq(x, y)

    def identity(self) -> bytes:
        return self.bundled.identity()

    def pow(self, x: bytes, e: int) -> bytes:
        return self.bundled.pow(x, e)

    def clone(self, seed: int | None = None) -> "EnrichedBox":
        out = EnrichedBox(self.base, self.k, self.bundled.clone(seed), self.tuples)
        out.flags = dict(self.flags)
        return out

    def components(self, y: bytes) -> list[bytes]:
        return self.power.split(y)

    def shift(self, y: bytes) -> bytes:
        self.check(y)
        if self.k == 1:
            return y
        cut = self.base.length
        return y[cut:] + y[:cut]

    def first(self, y: bytes) -> bytes:
        self.check(y)
        return y[: self.base.length]

    def generators(self) -> list[bytes]:
        return [b"".join(t) for t in self.tuples]


def enrich(X: BlackBox, k: int, tuples: Sequence[Sequence[bytes]], seed: int | None = None) -> EnrichedBox:
    if k < 1:
        raise ValueError(f"automorphism order k must be >= 1, got {k}")
    if not tuples:
        raise ValueError("enrichment needs at least one tuple")
    tuples = [list(t) for t in tuples]
    for t in tuples:
        if len(t) != k:
            raise ValueError(f"tuple of length {len(t)} for k = {k}")
        X.check(*t)
    P = bb_direct_product(*([X] * k))
    bundled = bb_generated(P, [b"".join(t) for t in tuples], seed=seed)
    return EnrichedBox(X, k, bundled, tuples)


def shift_apply(E: EnrichedBox, y: bytes) -> bytes:
    return E.shift(y)


def project_first(E: EnrichedBox, y: bytes) -> bytes:
    return E.first(y)


def amalgamate(
    X: BlackBox,
    locals_: Sequence[tuple[Sequence[bytes], Evaluator]],
    k: int,
    seed: int | None = None,
    check_order: bool = True,
) -> EnrichedBox:
    """Bundle the orbit tuples of every local generator and enrich.

    With ``check_order`` each orbit must close up after k steps, i.e. the
    local evaluator has order dividing k on its generators.
    """
    if not locals_:
        raise ValueError("amalgamation needs at least one local")
    tuples = []
    for gens, ev in locals_:
        for g in gens:
            orbit = [g]
            for _ in range(k - 1):
                orbit.append(ev(orbit[-1]))
            if check_order and not X.eq(ev(orbit[-1]), g):
                raise ValueError("local evaluator does not have order dividing k on its generators")
            tuples.append(orbit)
    return enrich(X, k, tuples, seed=seed)


# pointwise evaluators for structurally given maps


def power_map(X: BlackBox, e: int) -> Evaluator:
    return lambda x: X.pow(x, e)


def inversion(X: BlackBox) -> Evaluator:
    return X.inv


def conjugation(X: BlackBox, h: bytes) -> Evaluator:
    """``x -> h^-1 x h``."""
    hi = X.inv(h)
    return lambda x: X.mul(hi, X.mul(x, h))
