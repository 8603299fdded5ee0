"""White-box verifiers for morphisms and enriched boxes."""

from __future__ import annotations

from collections import Counter
from typing import Callable

from scipy.stats import chisquare

from ..bbcore import BlackBox, bb_matrix
from ..cyclic import rho
from ..ffield import GF
from ..morphisms import EnrichedBox, Morphism
from ..numtheory import factorize, is_probable_prime
from .census import closure_size
from .report import Report
from .whitebox import WhiteBox


def _shift_pairs(E: EnrichedBox, trials: int, shift: Callable[[bytes], bytes] | None):
    shift = shift or E.shift
    for _ in range(trials):
        y = E.rand()
        yield y, E.first(y), E.first(shift(y))


def verify_frobenius(
    E: EnrichedBox,
    W: WhiteBox,
    p: int,
    trials: int = 1000,
    *,
    shift: Callable[[bytes], bytes] | None = None,
    seed: int | None = None,
) -> Report:
    """Trace law ``tr(pi(shift y)) = tr(pi(y))^p`` up to the identified scalars."""
    F = W.field
    rep = Report("frobenius", {"p": p, "q": F.q, "dim": W.dim}, seed=seed)
    if F.n == 1:
        rep.parameters["vacuous"] = 1
    for y, a, b in _shift_pairs(E, trials, shift):
        ta = F.pow(W.trace(W.project(a)), p)
        tb = W.trace(W.project(b))
        rep.record(any(tb == F.mul(lam, ta) for lam in W.scalars), y)
    return rep.finish()


def verify_inverse_transpose(
    E: EnrichedBox,
    W: WhiteBox,
    trials: int = 1000,
    *,
    shift: Callable[[bytes], bytes] | None = None,
    seed: int | None = None,
) -> Report:
    """Trace law ``tr(pi(shift y)) = tr(pi(y)^-1)`` up to the identified scalars."""
    F = W.field
    rep = Report("invtrans", {"q": F.q, "dim": W.dim}, seed=seed)
    for y, a, b in _shift_pairs(E, trials, shift):
        ta = W.trace(W.inv(W.project(a)))
        tb = W.trace(W.project(b))
        rep.record(any(tb == F.mul(lam, ta) for lam in W.scalars), y)
    return rep.finish()


def verify_shift_order(E: EnrichedBox, trials: int = 1000, seed: int | None = None) -> Report:
    """``shift^k`` is the identity on every sample."""
    rep = Report("shift-order", {"k": E.k}, seed=seed)
    for _ in range(trials):
        y = E.rand()
        z = y
        for _ in range(E.k):
            z = E.shift(z)
        rep.record(z == y, y)
    return rep.finish()


def verify_homomorphism(
    M: Morphism, WX: WhiteBox, WY: WhiteBox, trials: int = 1000, seed: int | None = None
) -> Report:
    """The sampled graph is a function and is multiplicative on consecutive samples."""
    rep = Report("homomorphism", {}, seed=seed)
    table: dict[tuple, tuple] = {}
    prev = None
    for _ in range(trials):
        x, y = M.sample()
        a, b = WX.project(x), WY.project(y)
        ka, kb = WX.key(a), WY.key(b)
        ok = table.setdefault(ka, kb) == kb
        if ok and prev is not None:
            pa, pb = prev
            kab, kbb = WX.key(WX.mul(pa, a)), WY.key(WY.mul(pb, b))
            ok = table.setdefault(kab, kbb) == kbb
        rep.record(ok, x + y)
        prev = (a, b)
    return rep.finish()


def verify_enrichment(
    E: EnrichedBox,
    W: WhiteBox,
    reference: Callable[[list[list]], list[list]],
    trials: int = 1000,
    seed: int | None = None,
) -> Report:
    """White-box agreement of the shift with an explicit matrix map."""
    rep = Report("enrichment", {"k": E.k}, seed=seed)
    for y, a, b in _shift_pairs(E, trials, None):
        rep.record(W.equal(W.project(b), reference(W.project(a))), y)
    return rep.finish()


def uniformity_pvalue(X: BlackBox, W: WhiteBox, group_order: int, samples: int) -> float:
    """Chi-square p-value of ``samples`` projected draws against uniform."""
    counts = Counter(W.key(W.project(X.rand())) for _ in range(samples))
    if len(counts) > group_order:
        raise ValueError("more classes observed than the stated group order")
    observed = list(counts.values()) + [0] * (group_order - len(counts))
    return float(chisquare(observed).pvalue)


def verify_uniformity(
    X: BlackBox, W: WhiteBox, group_order: int, samples: int, alpha: float = 1e-3, seed: int | None = None
) -> Report:
    rep = Report("uniformity", {"order": group_order, "samples": samples, "alpha": alpha}, seed=seed)
    pv = uniformity_pvalue(X, W, group_order, samples)
    rep.parameters["pvalue"] = f"{pv:.6g}"
    rep.record(pv >= alpha, f"pvalue:{pv:.3g}")
    return rep.finish()


def generation_check(W: WhiteBox, gens: list[bytes], order: int) -> bool:
    """Whether ``gens`` generate a group of the stated order (white-box census)."""
    try:
        return closure_size(W, gens, limit=order) == order
    except OverflowError:
        return False


def enriched_generation_check(E: EnrichedBox, W: WhiteBox, order: int) -> bool:
    return generation_check(W, [t[0] for t in E.tuples], order)


def rho_bruteforce_check(d: int) -> tuple[bool, str]:
    """rho against the brute-force square-root sets in a cyclic group of order d."""
    p = d + 1
    while not is_probable_prime(p):
        p += d
    F = GF(p)
    g = F.primitive_element[0]
    X = bb_matrix(F, 1, [[[pow(g, (p - 1) // d, p)]]], burn_in=0)
    x = X.gens[0]
    E = factorize(d)
    powers = [X.identity()]
    for _ in range(d - 1):
        powers.append(X.mul(powers[-1], x))
    index = {s: z for z, s in enumerate(powers)}
    roots: list[list[int]] = [[] for _ in range(d)]
    for z in range(d):
        roots[2 * z % d].append(z)
    for j in range(d):
        got = sorted(index[s] for s in rho(X, x, powers[j], E))
        if got != roots[j]:
            return False, f"d={d}/y=x^{j}"
    return True, ""
