import random

import numpy as np
import pytest

from bbgroup import kernels
from bbgroup.bbcore import _GenericOps, center_scalars, decode_matrix, encode_matrix, mat_inv
from bbgroup.ffield import GF

CASES = [(GF(2, 4), 2), (GF(3, 2), 2), (GF(7), 3), (GF(5, 2), 3), (GF(3, 3), 2), (GF(13), 2), (GF(2, 8), 2)]


def random_matrix(F, d, rng):
    while True:
        m = [[F.random(rng) for _ in range(d)] for _ in range(d)]
        if mat_inv(F, m) is not None:
            return m


def test_backend_flag_is_honoured():
    assert kernels.backend() in ("numba", "numpy")
    assert kernels.get_impl("numpy").__name__.endswith("_np")
    with pytest.raises(ValueError):
        kernels.get_impl("fortran")


@pytest.mark.parametrize("F,d", CASES)
@pytest.mark.parametrize("quotient", [False, True])
def test_numba_numpy_generic_agree(F, d, quotient):
    assert kernels.supports(F)
    scalars = center_scalars(F, d) if quotient else [F.one]
    ref = _GenericOps(F, d, scalars)
    jit = kernels.SmallMatrixOps(F, d, scalars, impl="numba")
    npy = kernels.SmallMatrixOps(F, d, scalars, impl="numpy")
    rng = random.Random(F.q * 10 + d)
    for _ in range(60):
        x = encode_matrix(F, random_matrix(F, d, rng))
        y = encode_matrix(F, random_matrix(F, d, rng))
        assert jit.mul(x, y) == npy.mul(x, y) == ref.mul(x, y)
        assert jit.inv(x) == npy.inv(x) == ref.inv(x)
        lam = rng.choice(scalars)
        z = encode_matrix(F, [[F.mul(lam, a) for a in row] for row in decode_matrix(F, d, y)])
        assert jit.eq(y, z) == npy.eq(y, z) == ref.eq(y, z) is True
        assert jit.eq(x, y) == npy.eq(x, y) == ref.eq(x, y)


@pytest.mark.parametrize("F,d", CASES[:4])
def test_batch_kernels_agree(F, d):
    scalars = center_scalars(F, d)
    jit = kernels.SmallMatrixOps(F, d, scalars, impl="numba")
    npy = kernels.SmallMatrixOps(F, d, scalars, impl="numpy")
    rng = random.Random(5)
    mats = np.stack([jit.decode(encode_matrix(F, random_matrix(F, d, rng))) for _ in range(32)])
    b = jit.decode(encode_matrix(F, random_matrix(F, d, rng)))
    assert np.array_equal(jit.batch_matmul(mats, b), npy.batch_matmul(mats, b))
    assert np.array_equal(jit.batch_keys(mats), npy.batch_keys(mats))


def test_singular_inverse_is_none():
    F = GF(5)
    ops = kernels.SmallMatrixOps(F, 2, [F.one], impl="numpy")
    s = encode_matrix(F, [[F.one, F.scalar(2)], [F.scalar(2), F.scalar(4)]])
    assert ops.inv(s) is None
    jit = kernels.SmallMatrixOps(F, 2, [F.one], impl="numba")
    assert jit.inv(s) is None


def test_large_fields_are_not_tabled():
    assert not kernels.supports(GF(1000003, 2))
