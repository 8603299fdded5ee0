"""White-box projection: recover the matrices behind a box's strings.

This is a test capability.  Algorithm modules never import it.
"""

from __future__ import annotations

from ..bbcore import (
    BlackBox,
    DirectProductBox,
    GeneratedBox,
    MatrixBox,
    QuotientBox,
    decode_matrix,
    mat_inv,
    mat_mul,
    mat_scale,
)
from ..ffield import ExplicitField, FieldElement

Matrix = list[list[FieldElement]]


def _matrix_root(X: BlackBox) -> tuple[MatrixBox, list[bytes]]:
    central: list[bytes] = []
    while not isinstance(X, MatrixBox):
        if isinstance(X, QuotientBox):
            central += X.central
            X = X.parent
        elif isinstance(X, GeneratedBox) or hasattr(X, "parent"):
            X = X.parent
        else:
            raise TypeError(f"no white-box projection for {type(X).__name__}")
    return X, central


class WhiteBox:
    """Exact projection for matrix-backed boxes (and products of them)."""

    def __init__(self, X: BlackBox):
        self.box = X
        if isinstance(X, DirectProductBox):
            self.factors = [WhiteBox(f) for f in X.factors]
            return
        self.factors = None
        root, central = _matrix_root(X)
        self.root = root
        self.field: ExplicitField = root.field
        self.dim = root.dim
        # scalar matrices identified with 1
        self.scalars = list(root.scalars)
        for z in central:
            m = decode_matrix(self.field, self.dim, z)
            lam = m[0][0]
            if any(m[i][j] != (lam if i == j else self.field.zero) for i in range(self.dim) for j in range(self.dim)):
                raise ValueError("quotient by a non-scalar central element")
            if lam not in self.scalars:
                self.scalars.append(lam)

    @property
    def quotient(self) -> bool:
        return len(self.scalars) > 1

    def project(self, x: bytes):
        if self.factors is not None:
            return tuple(w.project(part) for w, part in zip(self.factors, self.box.split(x)))
        return decode_matrix(self.field, self.dim, x)

    def mul(self, a: Matrix, b: Matrix) -> Matrix:
        return mat_mul(self.field, a, b)

    def inv(self, a: Matrix) -> Matrix:
        out = mat_inv(self.field, a)
        if out is None:
            raise ValueError("singular matrix")
        return out

    def trace(self, a: Matrix) -> FieldElement:
        F = self.field
        t = F.zero
        for i in range(len(a)):
            t = F.add(t, a[i][i])
        return t

    def key(self, a: Matrix) -> tuple:
        """Canonical key: least flattening over the identified scalars."""
        F = self.field
        return min(tuple(F.to_index(v) for row in mat_scale(F, lam, a) for v in row) for lam in self.scalars)

    def equal(self, a: Matrix, b: Matrix) -> bool:
        return any(a == mat_scale(self.field, lam, b) for lam in self.scalars)

    def trace_classes(self, a: Matrix) -> set[FieldElement]:
        """Traces of every scalar representative of a."""
        F = self.field
        t = self.trace(a)
        return {F.mul(lam, t) for lam in self.scalars}


def frobenius_matrix(F: ExplicitField, a: Matrix, j: int = 1) -> Matrix:
    return [[F.frobenius(x, j) for x in row] for row in a]


def transpose(a: Matrix) -> Matrix:
    return [list(r) for r in zip(*a)]
