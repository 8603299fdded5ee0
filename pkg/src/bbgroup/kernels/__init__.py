"""Hot matrix kernels over small finite fields.

Two interchangeable implementations exist: numba-compiled loops (``_jit``)
and vectorized numpy (``_np``).  The environment variable ``BBGROUP_NUMBA``
selects the default; ``0``, ``false``, ``off`` or ``no`` force numpy, and numpy
is also used when numba cannot be imported.
"""

from __future__ import annotations

import os
from types import ModuleType

import numpy as np

from ..ffield import ExplicitField, FieldElement
from ._tables import FieldTables, field_tables, supports

__all__ = ["SmallMatrixOps", "FieldTables", "field_tables", "supports", "backend", "get_impl"]


def _numba_requested() -> bool:
    return os.environ.get("BBGROUP_NUMBA", "1").strip().lower() not in ("0", "false", "off", "no")


def _load(name: str) -> ModuleType:
    if name == "numba":
        from . import _jit

        return _jit
    if name == "numpy":
        from . import _np

        return _np
    raise ValueError(f"unknown kernel backend {name!r}")


def _default_backend() -> str:
    if not _numba_requested():
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        return "numpy"
    return "numba"


_BACKEND = _default_backend()


def backend() -> str:
    """Name of the default kernel backend."""
    return _BACKEND


def get_impl(name: str | None = None) -> ModuleType:
    return _load(name or _BACKEND)


class SmallMatrixOps:
    """d x d matrices over a table-supported field, as byte strings.

    ``scalars`` lists the field elements treated as equal to 1 when comparing
    (the centre of the quotient); pass ``[F.one]`` for exact equality.
    """

    def __init__(self, F: ExplicitField, d: int, scalars: list[FieldElement], impl: str | None = None):
        self.field = F
        self.d = d
        self.tables = field_tables(F)
        self.impl = get_impl(impl)
        t = self.tables
        self._t = (t.kind, t.p, t.q, t.n, t.width, t.exp, t.log, t.add, t.neg, t.ppow)
        self.scalars = np.array([F.to_index(s) for s in scalars], dtype=np.int64)
        self.exact = len(scalars) == 1

    def _buf(self, x: bytes) -> np.ndarray:
        return np.frombuffer(x, dtype=np.uint8)

    def mul(self, x: bytes, y: bytes) -> bytes:
        return self.impl.mul_bytes(self._buf(x), self._buf(y), self.d, *self._t).tobytes()

    def inv(self, x: bytes) -> bytes | None:
        out = self.impl.inv_bytes(self._buf(x), self.d, *self._t)
        return out.tobytes() if out.size else None

    def eq(self, x: bytes, y: bytes) -> bool:
        if x == y:
            return True
        if self.exact:
            return False
        return bool(self.impl.eq_bytes(self._buf(x), self._buf(y), self.d, self.scalars, *self._t))

    def decode(self, x: bytes) -> np.ndarray:
        return self.impl.decode(self._buf(x), self.d, *self._t)

    def encode(self, m: np.ndarray) -> bytes:
        return self.impl.encode(np.ascontiguousarray(m, dtype=np.int64), *self._t).tobytes()

    def batch_matmul(self, mats: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.impl.batch_matmul(
            np.ascontiguousarray(mats, dtype=np.int64), np.ascontiguousarray(b, dtype=np.int64), *self._t
        )

    def keys_fit(self) -> bool:
        return self.tables.q ** (self.d * self.d) < 2**62

    def batch_keys(self, mats: np.ndarray) -> np.ndarray:
        if not self.keys_fit():
            raise OverflowError("matrix keys do not fit in int64")
        return self.impl.batch_keys(np.ascontiguousarray(mats, dtype=np.int64), self.scalars, *self._t)
