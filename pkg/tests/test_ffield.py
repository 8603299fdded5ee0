import random

import pytest
from hypothesis import given, settings, strategies as st

from bbgroup.errors import FieldError, ReducibleModulusError
from bbgroup.ffield import (
    GF,
    ExplicitField,
    fe_add,
    fe_frobenius,
    fe_inv,
    fe_mul,
    fe_neg,
    fe_pow,
    field_create,
    find_irreducible,
    format_field,
    parse_field,
    read_field_file,
)

F9 = field_create(3, 2, ("poly", [1, 0, 1]))


def brute_poly_mul(p, modulus, a, b):
    # schoolbook product then reduction by the monic modulus
    n = len(modulus) - 1
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] += x * y
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k] % p
        if c:
            for i in range(n + 1):
                prod[k - n + i] -= c * modulus[i]
    return tuple(c % p for c in prod[:n])


def test_f4_from_polynomial():
    F = field_create(2, 2, ("poly", [1, 1, 1]))
    s = F.gen
    assert F.mul(s, s) == F.add(s, F.one)
    nonzero = [a for a in F.elements() if any(a)]
    assert len(nonzero) == 3
    for a in nonzero:
        assert F.mul(a, F.inv(a)) == F.one


def test_prime_field_from_trivial_table():
    F = field_create(7, 1, ("table", [1]))
    assert F.q == 7
    assert fe_mul(F, (3,), (5,)) == (1,)


def test_reducible_polynomial_rejected():
    with pytest.raises(ReducibleModulusError):
        field_create(5, 2, ("poly", [1, 0, 1]))


def test_degree_zero_rejected():
    with pytest.raises(FieldError):
        field_create(5, 0, ("poly", [1]))


def test_f9_examples():
    t = F9.gen
    assert fe_mul(F9, t, t) == (2, 0)
    assert fe_pow(F9, t, 3) == (0, 2)
    assert fe_frobenius(F9, t, 1) == (0, 2)
    assert fe_frobenius(F9, t, 2) == t
    assert fe_mul(F9, t, F9.one) == t
    assert fe_pow(F9, t, 0) == F9.one


def test_prime_field_examples():
    F = GF(7)
    assert fe_inv(F, (3,)) == (5,)
    assert fe_inv(F, F.one) == F.one
    with pytest.raises(ZeroDivisionError):
        fe_inv(F, F.zero)
    for j in range(2):
        assert fe_frobenius(F, (4,), j) == (4,)
    with pytest.raises(ValueError):
        fe_frobenius(F, (4,), 2)


def test_negative_power_of_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        fe_pow(F9, F9.zero, -1)


def test_lagrange_on_multiplicative_group():
    F = GF(5, 3)
    rng = random.Random(1)
    for _ in range(50):
        x = F.random_nonzero(rng)
        assert fe_pow(F, x, F.q - 1) == F.one


def test_structure_constant_round_trip():
    F = GF(3, 3)
    table = F.structure_constants()
    assert len(table) == 27
    G = field_create(3, 3, ("table", table))
    rng = random.Random(2)
    assert len(G.table_basis) == 3
    for _ in range(50):
        u = [rng.randrange(3) for _ in range(3)]
        v = [rng.randrange(3) for _ in range(3)]
        x = G.from_table_coords(u)
        y = G.from_table_coords(v)
        # multiplying in G must agree with the c_ijk rule on coordinates
        w = [0, 0, 0]
        for i in range(3):
            for j in range(3):
                for k in range(3):
                    w[k] += u[i] * v[j] * table[(i * 3 + j) * 3 + k]
        assert G.mul(x, y) == G.from_table_coords([c % 3 for c in w])


def test_bad_table_rejected():
    # s1 * s1 = 0 gives a ring with nilpotents
    with pytest.raises(FieldError):
        field_create(3, 2, ("table", [0, 0, 1, 0, 1, 0, 0, 0]))


def test_field_file_round_trip(tmp_path):
    path = tmp_path / "f.txt"
    path.write_text(format_field(F9))
    assert read_field_file(path) == F9
    G, used = parse_field(["2", "2", "table", "1 0 0 1", "0 1 1 1"])
    assert used == 5
    assert G.q == 4


def test_find_irreducible_is_irreducible():
    for p, n in [(2, 3), (3, 4), (5, 2), (7, 3)]:
        mod = find_irreducible(p, n)
        ExplicitField(p, mod)


@pytest.mark.parametrize("p,n", [(2, 4), (3, 2), (5, 2), (2, 6), (7, 2)])
def test_mul_matches_brute_force(p, n):
    F = GF(p, n)
    els = list(F.elements())
    rng = random.Random(p * 100 + n)
    pairs = [(a, b) for a in els for b in els] if F.q <= 64 else [(rng.choice(els), rng.choice(els)) for _ in range(4000)]
    for a, b in pairs:
        assert fe_mul(F, a, b) == brute_poly_mul(p, F.modulus, a, b)


@pytest.mark.parametrize("p,n", [(2, 6), (3, 4), (13, 2)])
def test_inverse_involutive(p, n):
    F = GF(p, n)
    for a in F.elements():
        if any(a):
            assert fe_inv(F, fe_inv(F, a)) == a


def elements(F):
    return st.tuples(*[st.integers(0, F.p - 1)] * F.n)


BIG = GF(1000003, 2)


@settings(max_examples=200, deadline=None)
@given(elements(BIG), elements(BIG), elements(BIG))
def test_field_axioms_large(a, b, c):
    F = BIG
    assert fe_mul(F, fe_mul(F, a, b), c) == fe_mul(F, a, fe_mul(F, b, c))
    assert fe_mul(F, a, fe_add(F, b, c)) == fe_add(F, fe_mul(F, a, b), fe_mul(F, a, c))
    assert fe_add(F, a, fe_neg(F, a)) == F.zero


@settings(max_examples=300, deadline=None)
@given(st.sampled_from([GF(3, 2), GF(5, 3), GF(2, 8), GF(101, 2)]), st.data())
def test_frobenius_is_a_field_automorphism(F, data):
    a = data.draw(elements(F))
    b = data.draw(elements(F))
    assert fe_frobenius(F, fe_add(F, a, b), 1) == fe_add(F, fe_frobenius(F, a, 1), fe_frobenius(F, b, 1))
    assert fe_frobenius(F, fe_mul(F, a, b), 1) == fe_mul(F, fe_frobenius(F, a, 1), fe_frobenius(F, b, 1))
    assert fe_frobenius(F, a, F.n) == a


def test_prime_subfield_is_scalar_multiples():
    F = GF(3, 2)
    fixed = {a for a in F.elements() if fe_pow(F, a, 3) == a}
    assert fixed == {F.scalar(m) for m in range(3)}
