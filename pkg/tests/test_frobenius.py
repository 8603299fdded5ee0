import pytest

from bbgroup.bbcore import bb_matrix, bb_sl
from bbgroup.cyclic import factored_exponent, order_exact
from bbgroup.datum import sl_box_with_datum
from bbgroup.errors import BudgetExhaustedError, NotInvolutionError
from bbgroup.ffield import GF
from bbgroup.frobenius import (
    FrobeniusJob,
    central_involution,
    find_klein_four,
    frobenius_psl2,
    frobenius_rank_n,
    frobenius_sl2,
    max_cyclic_generator,
)
from bbgroup.harness import WhiteBox
from bbgroup.harness.verify import (
    enriched_generation_check,
    verify_frobenius,
    verify_homomorphism,
    verify_shift_order,
)
from bbgroup.morphisms import Morphism, enrich


def psl2(p, k, seed):
    return bb_sl(GF(p, k), 2, True, seed=seed)


def test_eps():
    assert FrobeniusJob(5, 2).eps == 1
    assert FrobeniusJob(3, 2).eps == -1
    assert FrobeniusJob(7, 2).eps == -1
    assert FrobeniusJob(13, 2).eps == 1
    with pytest.raises(ValueError):
        FrobeniusJob(2, 3)


def test_default_budgets():
    job = FrobeniusJob(3, 3)
    assert job.retry_budget == 10
    assert job.max_budget() == 192
    assert job.q == 27


def test_klein_four_in_psl2_f9():
    X = psl2(3, 2, 1)
    W = WhiteBox(X)
    e1, e2 = find_klein_four(X, factored_exponent(X), 1000)
    a, b = W.project(e1), W.project(e2)
    one = W.mul(W.inv(a), a)
    assert W.equal(W.mul(a, a), one) and W.equal(W.mul(b, b), one)
    assert W.equal(W.mul(a, b), W.mul(b, a))
    assert not W.equal(b, one) and not W.equal(a, b)


def test_klein_four_errors():
    C5 = bb_matrix(GF(11), 1, [[[3]]], seed=1)
    with pytest.raises(BudgetExhaustedError):
        find_klein_four(C5, factored_exponent(C5), 50)
    X = psl2(3, 2, 1)
    with pytest.raises(BudgetExhaustedError):
        find_klein_four(X, factored_exponent(X), 0)


@pytest.mark.parametrize("p,k,expected", [(3, 2, 4), (13, 1, 6)])
def test_max_cyclic_order(p, k, expected):
    X = psl2(p, k, 3)
    E = factored_exponent(X)
    e1, e2 = find_klein_four(X, E, 1000)
    for e in (e1, e2):
        c, o = max_cyclic_generator(X, e, E, 64)
        assert o == expected == order_exact(X, c, E)
        assert X.commutes(c, e)


def test_max_cyclic_rejects_identity():
    X = psl2(3, 2, 1)
    with pytest.raises(NotInvolutionError):
        max_cyclic_generator(X, X.identity(), factored_exponent(X), 10)


def test_k1_rejected():
    X = psl2(7, 1, 1)
    with pytest.raises(ValueError, match="k > 1"):
        frobenius_psl2(X, FrobeniusJob(7, 1))
    with pytest.raises(ValueError, match="k > 1"):
        frobenius_sl2(bb_sl(GF(7), 2, seed=1), FrobeniusJob(7, 1))


def test_psl2_f9_trace_law():
    X = psl2(3, 2, 5)
    E = frobenius_psl2(X, FrobeniusJob(3, 2))
    assert E.flags["generation"] == "unverified"
    rep = verify_frobenius(E, WhiteBox(X), 3, 1000)
    assert rep.trials == 1000 and rep.failures == 0


def test_psl2_f27_shift_order():
    X = psl2(3, 3, 6)
    E = frobenius_psl2(X, FrobeniusJob(3, 3))
    assert E.k == 3
    assert verify_shift_order(E, 300).failures == 0
    assert verify_frobenius(E, WhiteBox(X), 3, 300).failures == 0


def test_q9_tori_generate_proper_subgroup():
    # the two maximal tori of PSL_2(9) found this way generate S_4, not PSL_2(9)
    X = psl2(3, 2, 7)
    W = WhiteBox(X)
    E = frobenius_psl2(X, FrobeniusJob(3, 2))
    assert not enriched_generation_check(E, W, 360)
    with pytest.raises(BudgetExhaustedError):
        frobenius_psl2(X, FrobeniusJob(3, 2, retry_budget=3), check=lambda b: enriched_generation_check(b, W, 360))


def test_q25_generation_verified():
    X = psl2(5, 2, 8)
    W = WhiteBox(X)
    E = frobenius_psl2(X, FrobeniusJob(5, 2), check=lambda b: enriched_generation_check(b, W, 7800))
    assert E.flags["generation"] == "verified"


def test_sl2_pipeline():
    X = bb_sl(GF(5, 2), 2, seed=9)
    z = central_involution(X, factored_exponent(X))
    W = WhiteBox(X)
    assert W.project(z) == W.project(X.encode([[4, 0], [0, 4]]))
    E = frobenius_sl2(X, FrobeniusJob(5, 2))
    assert verify_frobenius(E, W, 5, 500).failures == 0
    assert verify_shift_order(E, 200).failures == 0


def test_shift_graph_is_functional_and_multiplicative():
    X = psl2(5, 2, 10)
    E = frobenius_psl2(X, FrobeniusJob(5, 2))
    W = WhiteBox(X)
    # view the enriched box as the graph of y0 -> y1
    M = Morphism(X, X, E.bundled)
    rep = verify_homomorphism(M, W, W, 3000)
    assert rep.failures == 0


def test_negative_control_identity_shift():
    X = psl2(5, 2, 11)
    E = frobenius_psl2(X, FrobeniusJob(5, 2))
    rep = verify_frobenius(E, WhiteBox(X), 5, 200, shift=lambda y: y)
    assert rep.failures > 0


def test_prime_field_trace_law_is_vacuous():
    X = psl2(7, 1, 1)
    W = WhiteBox(X)
    E = enrich(X, 1, [[g] for g in X.gens])
    rep = verify_frobenius(E, W, 7, 50)
    assert rep.failures == 0 and rep.parameters["vacuous"] == 1


def test_rank_n_over_datum():
    X, D = sl_box_with_datum(GF(3, 2), 3, seed=1)
    assert D.rank == 2
    E = frobenius_rank_n(X, D, FrobeniusJob(3, 2))
    assert verify_frobenius(E, WhiteBox(X), 3, 1000).failures == 0
    assert verify_shift_order(E, 200).failures == 0


def test_rank_one_datum_is_rank_one_frobenius():
    X, D = sl_box_with_datum(GF(5, 2), 2, seed=2)
    assert D.rank == 1
    E = frobenius_rank_n(X, D, FrobeniusJob(5, 2))
    assert verify_frobenius(E, WhiteBox(X), 5, 500).failures == 0


def test_datum_over_wrong_prime_is_caught():
    X, D = sl_box_with_datum(GF(5, 2), 3, seed=3)
    with pytest.raises(ValueError):
        frobenius_rank_n(X, D, FrobeniusJob(3, 2))
