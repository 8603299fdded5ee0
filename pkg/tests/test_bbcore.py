from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from bbgroup.bbcore import (
    MatrixBox,
    QuotientBox,
    bb_direct_product,
    bb_eq,
    bb_generated,
    bb_inv,
    bb_matrix,
    bb_mul,
    bb_rand,
    bb_sl,
    decode_matrix,
    default_burn_in,
    default_slots,
    encode_matrix,
    global_exponent_gl,
    mat_scale,
    read_generator_file,
    write_generator_file,
)
from bbgroup.errors import NoExponentError, StringLengthError
from bbgroup.ffield import GF
from bbgroup.harness import WhiteBox, element_census


def test_sl2_f4_string_length():
    F = GF(2, 2)
    X = bb_matrix(F, 2, [[[1, 1], [0, 1]], [[1, 0], [1, 1]]])
    # four field elements, each of two one-byte coefficients
    assert X.length == 4 * 2
    assert len(X.rand()) == X.length


def test_encoding_is_bit_exact():
    F = GF(257, 2)
    m = [[F.element([1, 256]), F.zero], [F.element([0, 2]), F.one]]
    data = encode_matrix(F, m)
    assert len(data) == 4 * 2 * 2
    # ascending coefficients, each big-endian over two bytes
    assert data[:4] == bytes([0, 1, 1, 0])
    assert decode_matrix(F, 2, data) == m


def test_psl_identifies_negatives():
    F = GF(3, 2)
    X = bb_sl(F, 2, quotient_center=True, seed=1)
    W = WhiteBox(X)
    x = X.rand()
    minus = X.encode(mat_scale(F, F.scalar(-1), W.project(x)))
    assert minus != x
    assert bb_eq(X, x, minus)


def test_singular_generator_rejected():
    with pytest.raises(ValueError):
        bb_matrix(GF(5), 2, [[[1, 2], [2, 4]]])
    with pytest.raises(ValueError):
        bb_matrix(GF(5), 0, [])


def test_trivial_backend_samples_identity():
    X = bb_matrix(GF(2), 1, [[[1]]], seed=3)
    for _ in range(20):
        assert X.rand() == X.identity()


def test_same_seed_same_samples():
    a = bb_sl(GF(5), 2, seed=42)
    b = bb_sl(GF(5), 2, seed=42)
    assert [a.rand() for _ in range(50)] == [b.rand() for _ in range(50)]
    c = a.clone(seed=9)
    d = a.clone(seed=9)
    assert [c.rand() for _ in range(20)] == [d.rand() for _ in range(20)]


def test_oracle_wrappers():
    X = bb_sl(GF(7), 2, seed=5)
    x = bb_rand(X)
    assert bb_eq(X, bb_mul(X, x, bb_inv(X, x)), X.identity())
    with pytest.raises(StringLengthError):
        bb_mul(X, x, x[:-1])


def test_sl2_f7_diagonal_not_equal():
    F = GF(7)
    X = bb_matrix(F, 2, [[[3, 0], [0, 5]], [[5, 0], [0, 3]]])
    a, b = X.gens
    assert not bb_eq(X, a, b)


def test_uniformity_on_sl2_f5():
    X = bb_sl(GF(5), 2, seed=2024)
    W = WhiteBox(X)
    counts = Counter(W.key(W.project(X.rand())) for _ in range(12000))
    assert len(counts) == 120
    mean = 12000 / 120
    sigma = (12000 * (1 / 120) * (119 / 120)) ** 0.5
    assert all(abs(c - mean) <= 5 * sigma for c in counts.values())


def test_direct_product():
    C2 = bb_matrix(GF(3), 1, [[[2]]], seed=1)
    C3 = bb_matrix(GF(7), 1, [[[2]]], seed=2)
    P = bb_direct_product(C2, C3)
    assert P.length == C2.length + C3.length
    assert P.exponent == 6
    seen = set()
    for _ in range(200):
        a, b = P.split(P.rand())
        seen.add((a, b))
    assert len(seen) == 6
    x = P.rand()
    a, b = P.split(x)
    assert P.eq(x, a + b)
    other = C2.mul(a, C2.gens[0]) + b
    assert not P.eq(x, other)


def test_generated_subgroups():
    F = GF(5)
    X = bb_sl(F, 2, seed=7)
    one = bb_generated(X, [X.identity()], seed=1)
    assert all(X.is_identity(one.rand()) for _ in range(20))

    t1 = X.encode([[1, 1], [0, 1]])
    t2 = X.encode([[1, 0], [1, 1]])
    G = bb_generated(X, [t1, t2], seed=2)
    W = WhiteBox(X)
    assert len({W.key(W.project(G.rand())) for _ in range(3000)}) == 120
    assert len(element_census(W, [t1, t2])) == 120

    with pytest.raises(ValueError):
        bb_generated(X, [])


def test_single_seed_stays_cyclic():
    F = GF(7)
    X = bb_matrix(F, 2, [[[3, 0], [0, 5]]])
    g = X.gens[0]
    powers = {X.pow(g, k) for k in range(6)}
    assert len(powers) == 6
    C = bb_generated(X, [g], seed=3)
    for _ in range(200):
        assert C.rand() in powers


def test_product_replacement_defaults():
    assert default_slots(1) == 10
    assert default_slots(8) == 16
    assert default_burn_in(3) == 150
    X = bb_sl(GF(5), 2)
    G = bb_generated(X, X.gens[:2])
    assert G.slots == 10 and G.burn_in == 100


def test_global_exponent_values():
    assert global_exponent_gl(2, 3, 3) == 24
    assert global_exponent_gl(2, 4, 2) == 30
    for q, p in [(7, 7), (8, 2), (25, 5)]:
        assert global_exponent_gl(1, q, p) == q - 1


def test_missing_exponent_fails_fast():
    X = MatrixBox(GF(5), 1, [encode_matrix(GF(5), [[(2,)]])])
    X.exponent = None
    with pytest.raises(NoExponentError):
        X.require_exponent()


def test_quotient_box_over_central_element():
    F = GF(5)
    X = bb_sl(F, 2, seed=1)
    minus = X.encode([[4, 0], [0, 4]])
    Q = QuotientBox(X, [minus])
    x = X.rand()
    assert Q.eq(x, X.mul(x, minus))
    assert not X.eq(x, X.mul(x, minus))


def test_quotient_classes_have_center_size():
    F = GF(7)
    X = bb_sl(F, 2, quotient_center=True, seed=4)
    W = WhiteBox(X)
    for _ in range(20):
        m = W.project(X.rand())
        variants = {encode_matrix(F, mat_scale(F, F.scalar(c), m)) for c in range(1, 7)}
        equal = [v for v in variants if X.eq(v, X.encode(m))]
        assert len(equal) == 2


def test_generator_file_round_trip(tmp_path):
    F = GF(3, 2)
    gens = [[[F.one, F.gen], [F.zero, F.one]], [[F.one, F.zero], [F.gen, F.one]]]
    path = tmp_path / "gens.txt"
    write_generator_file(path, F, 2, gens, True)
    spec = read_generator_file(path)
    assert spec.field == F and spec.dim == 2 and spec.quotient
    assert spec.gens == gens
    X = spec.box(seed=1)
    assert X.quotient_center


BACKENDS = [(GF(5), 2, False), (GF(3, 2), 2, True), (GF(7), 3, False), (GF(2, 3), 2, False)]


@pytest.mark.parametrize("F,d,quotient", BACKENDS)
def test_associativity_and_exponent(F, d, quotient):
    X = bb_sl(F, d, quotient, seed=11)
    for _ in range(1000):
        x, y, z = X.rand(), X.rand(), X.rand()
        assert X.eq(X.mul(X.mul(x, y), z), X.mul(x, X.mul(y, z)))
        assert X.is_identity(X.pow(x, X.exponent))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32), st.integers(-50, 50), st.integers(-50, 50))
def test_power_laws(seed, a, b):
    X = bb_sl(GF(3, 2), 2, seed=0)
    x = X.clone(seed).rand()
    assert X.eq(X.pow(x, a + b), X.mul(X.pow(x, a), X.pow(x, b)))
    assert X.eq(X.pow(x, -a), X.inv(X.pow(x, a)))


def test_generated_box_clones():
    X = bb_sl(GF(5), 2, seed=3)
    G = bb_generated(X, X.gens, seed=4)
    a, b = G.clone(seed=8), G.clone(seed=8)
    assert [a.rand() for _ in range(10)] == [b.rand() for _ in range(10)]
    assert a.seeds == G.seeds
