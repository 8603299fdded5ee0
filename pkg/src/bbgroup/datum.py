"""Root SL_2 data (Curtis-Tits data) for boxes, with a builder for SL_n(Q).

Each node carries generators of a root subgroup K_i, a split torus T_i, a
torus T_{w_i} centralizing the Weyl element, and the Weyl element w_i.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .bbcore import BlackBox, MatrixBox, bb_matrix, identity_matrix, sl_generators
from .cyclic import order_exact
from .errors import FieldError, IncompleteFactorizationError
from .ffield import ExplicitField, FieldElement
from .numtheory import FactoredInteger, factorize

Matrix = list[list[FieldElement]]


@dataclass
class DatumNode:
    K_gens: list[bytes]
    t_split: bytes
    o_split: int
    t_twisted: bytes
    o_twisted: int
    w: bytes
    o_split_factored: FactoredInteger | None = None
    o_twisted_factored: FactoredInteger | None = None


@dataclass
class CurtisTitsDatum:
    q: int
    nodes: list[DatumNode] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.nodes)

    def validate(self, X: BlackBox) -> list[str]:
        """Oracle checks of the node invariants; returns a list of problems."""
        problems = []
        for i, nd in enumerate(self.nodes):
            if not X.eq(X.conj(nd.t_split, nd.w), X.inv(nd.t_split)):
                problems.append(f"node {i}: w does not invert the split torus")
            for name, t, o, of in (
                ("split", nd.t_split, nd.o_split, nd.o_split_factored),
                ("twisted", nd.t_twisted, nd.o_twisted, nd.o_twisted_factored),
            ):
                if not X.is_identity(X.pow(t, o)):
                    problems.append(f"node {i}: {name} torus order {o} does not annihilate")
                elif of is not None and order_exact(X, t, of) != o:
                    problems.append(f"node {i}: {name} torus order is smaller than {o}")
        return problems


# ---------------------------------------------------------------------------
# standard datum for SL_n(Q)


def _embed(F: ExplicitField, n: int, i: int, block: Matrix) -> Matrix:
    m = identity_matrix(F, n)
    for a in range(2):
        for b in range(2):
            m[i + a][i + b] = block[a][b]
    return m


def _try_factor(n: int, hints: Iterable[int]) -> FactoredInteger | None:
    try:
        return factorize(n, hints=tuple(hints))
    except IncompleteFactorizationError:
        return None


def _cyclic_generator(X: MatrixBox, make, o: int, of: FactoredInteger | None, rng: random.Random, tries: int = 64):
    """Draw ``make(rng)`` until it has exact order o (or give up and keep the last)."""
    s = None
    for _ in range(tries):
        s = make(rng)
        if s is None:
            continue
        if of is None:
            return s
        if order_exact(X, s, of) == o:
            return s
    if s is None:
        raise RuntimeError("could not draw a torus element")
    return s


def standard_datum(X: MatrixBox, hints: Iterable[int] = (), seed: int = 0) -> CurtisTitsDatum:
    """Datum for a box over SL_n(Q) in its natural matrix representation.

    Node i sits on the 2 x 2 block at rows/columns i, i+1.  ``hints`` are
    extra primes for factoring Q - 1 and Q + 1.
    """
    F, n = X.field, X.dim
    if n < 2:
        raise ValueError("a datum needs dimension >= 2")
    if F.p == 2:
        raise ValueError("the standard datum is built for odd characteristic")
    Q = F.q
    hints = list(hints)
    rng = random.Random(seed)
    o_split = Q - 1
    o_tw = Q - 1 if Q % 4 == 1 else Q + 1
    of_split = _try_factor(o_split, hints)
    of_tw = _try_factor(o_tw, hints)
    one, zero = F.one, F.zero
    nodes = []
    for i in range(n - 1):

        def split(r, i=i):
            a = F.random_nonzero(r)
            return X.encode(_embed(F, n, i, [[a, zero], [zero, F.inv(a)]]))

        def twisted(r, i=i):
            # a I + b w with a^2 + b^2 = 1, via the rational parametrization
            m = F.random(r)
            den = F.add(one, F.mul(m, m))
            if not any(den):
                return None
            di = F.inv(den)
            a = F.mul(F.sub(one, F.mul(m, m)), di)
            b = F.mul(F.smul(2, m), di)
            return X.encode(_embed(F, n, i, [[a, b], [F.neg(b), a]]))

        t_split = _cyclic_generator(X, split, o_split, of_split, rng)
        t_tw = _cyclic_generator(X, twisted, o_tw, of_tw, rng)
        x = _embed(F, n, i, [[one, one], [zero, one]])
        y = _embed(F, n, i, [[one, zero], [one, one]])
        w = _embed(F, n, i, [[zero, one], [F.neg(one), zero]])
        nodes.append(
            DatumNode(
                K_gens=[X.encode(x), X.encode(y), t_split],
                t_split=t_split,
                o_split=o_split,
                t_twisted=t_tw,
                o_twisted=o_tw,
                w=X.encode(w),
                o_split_factored=of_split,
                o_twisted_factored=of_tw,
            )
        )
    return CurtisTitsDatum(Q, nodes)


def sl_box_with_datum(F: ExplicitField, n: int, *, seed: int | None = None, hints: Iterable[int] = ()):
    X = bb_matrix(F, n, sl_generators(F, n), seed=seed)
    return X, standard_datum(X, hints=hints, seed=0 if seed is None else seed)


# ---------------------------------------------------------------------------
# file format


def _order_text(o: int, of: FactoredInteger | None) -> str:
    return str(of) if of is not None else str(o)


def format_datum(d: CurtisTitsDatum) -> str:
    lines = [f"rank {d.rank} q {d.q}"]
    for nd in d.nodes:
        lines.append("K " + " ".join(g.hex() for g in nd.K_gens))
        lines.append(f"Tsplit {nd.t_split.hex()} order {_order_text(nd.o_split, nd.o_split_factored)}")
        lines.append(f"Ttwist {nd.t_twisted.hex()} order {_order_text(nd.o_twisted, nd.o_twisted_factored)}")
        lines.append(f"W {nd.w.hex()}")
    return "\n".join(lines) + "\n"


def _parse_order(text: str) -> tuple[int, FactoredInteger | None]:
    if any(c in text for c in "^·*"):
        f = FactoredInteger.parse(text)
        return f.value, f
    return int(text), None


def parse_datum(text: str) -> CurtisTitsDatum:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or lines[0][0] != "rank" or len(lines[0]) != 4 or lines[0][2] != "q":
        raise FieldError("datum header must read 'rank R q Q'")
    rank, q = int(lines[0][1]), int(lines[0][3])
    body = lines[1:]
    if len(body) != 4 * rank:
        raise FieldError(f"datum with rank {rank} needs {4 * rank} node lines, found {len(body)}")
    nodes = []
    for j in range(rank):
        k, ts, tt, w = body[4 * j : 4 * j + 4]
        if k[0] != "K" or ts[0] != "Tsplit" or tt[0] != "Ttwist" or w[0] != "W":
            raise FieldError(f"malformed datum node {j}")
        if ts[2] != "order" or tt[2] != "order":
            raise FieldError(f"malformed torus line in node {j}")
        o1, f1 = _parse_order(ts[3])
        o2, f2 = _parse_order(tt[3])
        nodes.append(
            DatumNode(
                [bytes.fromhex(h) for h in k[1:]],
                bytes.fromhex(ts[1]),
                o1,
                bytes.fromhex(tt[1]),
                o2,
                bytes.fromhex(w[1]),
                f1,
                f2,
            )
        )
    return CurtisTitsDatum(q, nodes)


def write_datum(path: str | Path, d: CurtisTitsDatum) -> None:
    Path(path).write_text(format_datum(d))


def read_datum(path: str | Path) -> CurtisTitsDatum:
    return parse_datum(Path(path).read_text())


def gcd_power(t_order: int, target: int) -> int:
    """Exponent turning an element of order ``t_order`` into one of order gcd(t_order, target)."""
    return t_order // math.gcd(t_order, abs(target))
