"""Frobenius maps on boxes encrypting (P)SL_2(p^k), and over root SL_2 data.

Rank 1: find a Klein four-group ``{1, e1, e2, e1 e2}``, take maximal cyclic
subgroups ``C_i`` of the involution centralizers, and amalgamate the power
maps ``x -> x^(eps p)`` on them, where ``p = eps mod 4``.  The shift of the
resulting enriched box is a Frobenius map up to an inner automorphism.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

from .bbcore import BlackBox, QuotientBox
from .cyclic import factored_exponent, involution_from, is_involution, order_exact, zeta_sample
from .errors import BudgetExhaustedError, NotInvolutionError
from .morphisms import EnrichedBox, amalgamate, power_map
from .numtheory import FactoredInteger

log = logging.getLogger(__name__)

__all__ = [
    "FrobeniusJob",
    "find_klein_four",
    "max_cyclic_generator",
    "central_involution",
    "frobenius_psl2",
    "frobenius_sl2",
    "frobenius_rank_n",
]


@dataclass
class FrobeniusJob:
    p: int
    k: int
    E: FactoredInteger | None = None
    retry_budget: int = 10
    search_budget: int = 1000
    cyclic_budget: int | None = None

    def __post_init__(self):
        if self.p % 2 == 0:
            raise ValueError(f"p must be odd, got {self.p}")

    @property
    def eps(self) -> int:
        return 1 if self.p % 4 == 1 else -1

    @property
    def q(self) -> int:
        return self.p**self.k

    def max_budget(self) -> int:
        return self.cyclic_budget if self.cyclic_budget is not None else 64 * self.k


def find_klein_four(X: BlackBox, E: FactoredInteger, budget: int) -> tuple[bytes, bytes]:
    """Two distinct commuting involutions, by involution extraction and
    sampling the first one's centralizer."""
    if budget <= 0:
        raise BudgetExhaustedError("budget must be positive")
    e1 = None
    used = 0
    while used < budget and e1 is None:
        e1 = involution_from(X, X.rand(), E)
        used += 1
    while used < budget and e1 is not None:
        used += 1
        e2 = involution_from(X, zeta_sample(X, e1, E), E)
        if e2 is not None and not X.eq(e2, e1) and X.commutes(e1, e2):
            return e1, e2
    raise BudgetExhaustedError(f"no Klein four-group found in {budget} draws")


def max_cyclic_generator(X: BlackBox, e: bytes, E: FactoredInteger, budget: int) -> tuple[bytes, int]:
    """Element of largest order among ``budget`` centralizer samples, and its order.

    Ties keep the first element reaching the running maximum.
    """
    if not is_involution(X, e):
        raise NotInvolutionError("max_cyclic_generator needs an involution")
    best, best_order = None, 0
    for _ in range(budget):
        c = zeta_sample(X, e, E)
        o = order_exact(X, c, E)
        if o > best_order:
            best, best_order = c, o
    if best is None or best_order <= 2:
        raise BudgetExhaustedError("no centralizer element of order > 2 found")
    return best, best_order


def central_involution(X: BlackBox, E: FactoredInteger, budget: int = 200) -> bytes:
    """The involution of a box encrypting SL_2(q), q odd (it is unique and central)."""
    for _ in range(budget):
        z = involution_from(X, X.rand(), E)
        if z is not None:
            return z
    raise BudgetExhaustedError("no involution found")


def _rank1(
    search: BlackBox,
    ambient: BlackBox,
    job: FrobeniusJob,
    check: Callable[[EnrichedBox], bool] | None,
) -> EnrichedBox:
    if job.k <= 1:
        raise ValueError("a Frobenius construction requires k > 1")
    E = job.E or factored_exponent(search)
    e = job.eps * job.p
    last = None
    attempts = job.retry_budget if check is not None else 1
    for attempt in range(max(1, attempts)):
        e1, e2 = find_klein_four(search, E, job.search_budget)
        c1, o1 = max_cyclic_generator(search, e1, E, job.max_budget())
        c2, o2 = max_cyclic_generator(search, e2, E, job.max_budget())
        box = amalgamate(ambient, [([c1], power_map(ambient, e)), ([c2], power_map(ambient, e))], job.k)
        box.flags.update({"torus_orders": f"{o1},{o2}", "attempts": str(attempt + 1)})
        if check is None:
            box.flags["generation"] = "unverified"
            return box
        if check(box):
            box.flags["generation"] = "verified"
            return box
        log.info("attempt %d: tori generate a proper subgroup, retrying", attempt + 1)
        last = box
    assert last is not None
    raise BudgetExhaustedError(f"generation check failed on all {attempts} attempts")


def frobenius_psl2(
    X: BlackBox, job: FrobeniusJob, check: Callable[[EnrichedBox], bool] | None = None
) -> EnrichedBox:
    """Enriched box whose shift encrypts a Frobenius map of PSL_2(p^k).

    ``check`` is an optional generation test (white-box in practice); when
    given, failures are retried with fresh involutions.
    """
    return _rank1(X, X, job, check)


def frobenius_sl2(
    X: BlackBox, job: FrobeniusJob, check: Callable[[EnrichedBox], bool] | None = None
) -> EnrichedBox:
    """As :func:`frobenius_psl2` for a box encrypting SL_2(p^k).

    The search runs modulo the central involution; the power maps are then
    amalgamated in X itself.
    """
    if job.k <= 1:
        raise ValueError("a Frobenius construction requires k > 1")
    E = job.E or factored_exponent(X)
    z = central_involution(X, E)
    return _rank1(QuotientBox(X, [z]), X, job, check)


def frobenius_rank_n(X: BlackBox, datum, job: FrobeniusJob) -> EnrichedBox:
    """Amalgamate Frobenius restrictions over the tori of every datum node.

    On a split torus the Frobenius map is ``x -> x^p``; on the torus
    centralizing the Weyl element it is ``x -> x^(eps p)``.
    """
    if job.k <= 1:
        raise ValueError("a Frobenius construction requires k > 1")
    if not datum.nodes:
        raise ValueError("datum has no nodes")
    split = power_map(X, job.p)
    twist = power_map(X, job.eps * job.p)
    locals_ = []
    for node in datum.nodes:
        locals_.append(([node.t_split], split))
        locals_.append(([node.t_twisted], twist))
    box = amalgamate(X, locals_, job.k)
    box.flags["generation"] = "unverified"
    return box
