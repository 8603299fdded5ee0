"""Acceptance suite.

Each criterion is one test.  A one-line verdict per criterion is printed at
the end of the pytest run (see conftest.py), or directly when this file is
run as a script:  ``python tests/test_acceptance.py``.
"""

import time

from bbgroup.bbcore import bb_sl
from bbgroup.cyclic import factored_exponent, involution_from, zeta_sample
from bbgroup.datum import sl_box_with_datum
from bbgroup.ffield import GF
from bbgroup.frobenius import FrobeniusJob, frobenius_psl2
from bbgroup.harness import WhiteBox, closure_size, find_hermitian_form, miller_rabin
from bbgroup.harness.cli import BIG_PRIME, BIG_PRIME_HINTS
from bbgroup.harness.verify import (
    rho_bruteforce_check,
    verify_enrichment,
    verify_frobenius,
    verify_inverse_transpose,
    verify_shift_order,
    verify_uniformity,
)
from bbgroup.harness.whitebox import frobenius_matrix
from bbgroup.morphisms import enrich
from bbgroup.twisted import inverse_transpose, kk_involution, su_subgroup

RESULTS: dict[int, str] = {}


def _log(n, ok, detail, t0):
    RESULTS[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}  ({time.perf_counter() - t0:.1f}s)"
    return ok


def test_01_kk_involution():
    t0 = time.perf_counter()
    failures = 0
    for n in range(2, 9):
        X = bb_sl(GF(2, n), 2, seed=n)
        E = factored_exponent(X)
        for t in range(100):
            i = kk_involution(X.clone(t), E)
            failures += X.is_identity(i) or not X.is_identity(X.mul(i, i))
    elapsed = time.perf_counter() - t0
    assert _log(1, failures == 0 and elapsed < 30, f"failures={failures}", t0)


def test_02_rho_oracle():
    t0 = time.perf_counter()
    bad = [w for ok, w in map(rho_bruteforce_check, range(1, 1025)) if not ok]
    elapsed = time.perf_counter() - t0
    assert _log(2, not bad and elapsed < 60, f"mismatches={len(bad)}", t0), bad[:5]


def test_03_zeta_centralizer():
    t0 = time.perf_counter()
    failures = 0
    for p, k in ((3, 2), (13, 1)):
        X = bb_sl(GF(p, k), 2, True, seed=p)
        W = WhiteBox(X)
        E = factored_exponent(X)
        i = None
        while i is None:
            i = involution_from(X, X.rand(), E)
        pi = W.project(i)
        for _ in range(10_000):
            z = W.project(zeta_sample(X, i, E))
            failures += not W.equal(W.mul(z, pi), W.mul(pi, z))
    assert _log(3, failures == 0, f"failures={failures}", t0)


def test_04_frobenius_pipeline():
    t0 = time.perf_counter()
    parts = []
    ok = True
    for p, k in ((3, 2), (5, 2), (3, 3)):
        t1 = time.perf_counter()
        X = bb_sl(GF(p, k), 2, True, seed=10 * p + k)
        E = frobenius_psl2(X, FrobeniusJob(p, k))
        trace = verify_frobenius(E, WhiteBox(X), p, 1000)
        order = verify_shift_order(E, 1000)
        case_ok = trace.failures == 0 and order.failures == 0 and time.perf_counter() - t1 < 120
        ok &= case_ok
        parts.append(f"q={p ** k}:{trace.failures}/{order.failures}")
    assert _log(4, ok, "failures(trace/shift^k) " + " ".join(parts), t0)


def test_05_inverse_transpose():
    t0 = time.perf_counter()
    parts = []
    ok = True
    for p, k in ((5, 1), (7, 1), (5, 2)):
        X, D = sl_box_with_datum(GF(p, k), 3, seed=p + k)
        E = inverse_transpose(X, D)
        W = WhiteBox(X)
        rep = verify_inverse_transpose(E, W, 1000)
        control = verify_inverse_transpose(E, W, 200, shift=lambda y: y)
        ok &= rep.failures == 0 and control.failures > 0
        parts.append(f"q={p ** k}:{rep.failures}/control={control.failures}")
    assert _log(5, ok, " ".join(parts), t0)


def test_06_su_embedding():
    t0 = time.perf_counter()
    F = GF(5, 2)
    X, D = sl_box_with_datum(F, 3, seed=6)
    S = su_subgroup(X, D, 5, seed=6)
    W = WhiteBox(X)
    res = find_hermitian_form([W.project(S.rand()) for _ in range(200)], F, 5)
    census = closure_size(W, S.seeds)
    elapsed = time.perf_counter() - t0
    ok = res.found and census == 378_000 and elapsed < 300
    assert _log(6, ok, f"form={res.status} census={census} expected=378000", t0)


def test_07_sixty_digit_prime():
    t0 = time.perf_counter()
    F = GF(BIG_PRIME, 2)
    X, D = sl_box_with_datum(F, 3, seed=7, hints=BIG_PRIME_HINTS)
    S = su_subgroup(X, D, BIG_PRIME, seed=7)
    W = WhiteBox(X)
    res = find_hermitian_form([W.project(S.rand()) for _ in range(200)], F, BIG_PRIME)
    elapsed = time.perf_counter() - t0
    assert _log(7, res.found and elapsed < 600, f"form={res.status}", t0)


def test_08_uniformity():
    t0 = time.perf_counter()
    X = bb_sl(GF(5), 2, seed=8)
    rep = verify_uniformity(X, WhiteBox(X), 120, 12_000, alpha=1e-3)
    assert _log(8, rep.passed, f"pvalue={rep.parameters['pvalue']}", t0)


def test_09_enrichment():
    t0 = time.perf_counter()
    F = GF(2, 2)
    X = bb_sl(F, 2, seed=9)
    W = WhiteBox(X)
    tuples = [[g, X.encode(frobenius_matrix(F, W.project(g)))] for g in X.gens]
    E = enrich(X, 2, tuples, seed=9)
    sem = verify_enrichment(E, W, lambda m: frobenius_matrix(F, m), 1000)
    order = verify_shift_order(E, 1000)
    ok = sem.failures == 0 and order.failures == 0
    assert _log(9, ok, f"semantic={sem.failures} shift^2={order.failures}", t0)


def test_10_miller_rabin():
    t0 = time.perf_counter()
    limit = 100_000
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    missed = wrong = 0
    for n in range(3, limit + 1, 2):
        verdict = miller_rabin(n, 20)
        if sieve[n]:
            wrong += verdict == "composite"
        else:
            missed += verdict != "composite"
    assert _log(10, missed == 0 and wrong == 0, f"composites_missed={missed} primes_rejected={wrong}", t0)


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except AssertionError:
                pass
    for n in sorted(RESULTS):
        print(RESULTS[n])
