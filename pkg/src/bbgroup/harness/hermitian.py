"""Solve for a Hermitian form preserved by a set of matrices over F_{q^2}."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..bbcore import mat_det
from ..ffield import ExplicitField, FieldElement

Matrix = list[list[FieldElement]]


@dataclass
class HermitianResult:
    status: str  # found | none | degenerate | inconclusive
    J: Matrix | None = None
    nullity: int = 0

    @property
    def found(self) -> bool:
        return self.status == "found"


def _conj(F: ExplicitField, a: FieldElement, j: int) -> FieldElement:
    return F.frobenius(a, j)


def _nullspace(F: ExplicitField, rows_iter, ncols: int) -> list[list[FieldElement]]:
    """Basis of the right nullspace of the rows produced by ``rows_iter``."""
    pivots: dict[int, list[FieldElement]] = {}  # pivot column -> normalized row
    for row in rows_iter:
        row = list(row)
        for c, prow in pivots.items():
            f = row[c]
            if any(f):
                row = [F.sub(x, F.mul(f, y)) for x, y in zip(row, prow)]
        lead = next((c for c in range(ncols) if any(row[c])), None)
        if lead is None:
            continue
        s = F.inv(row[lead])
        row = [F.mul(x, s) for x in row]
        for c in list(pivots):
            f = pivots[c][lead]
            if any(f):
                pivots[c] = [F.sub(x, F.mul(f, y)) for x, y in zip(pivots[c], row)]
        pivots[lead] = row
        if len(pivots) == ncols:
            return []
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero] * ncols
        v[fc] = F.one
        for c, prow in pivots.items():
            v[c] = F.neg(prow[fc])
        basis.append(v)
    return basis


def find_hermitian_form(
    samples: list[Matrix], F: ExplicitField, q: int, rng: random.Random | None = None
) -> HermitianResult:
    """Solve ``conj(M)^T J M = J`` for all samples, conj being the q-th power.

    Returns status ``found`` with a nondegenerate Hermitian J when the
    solution space is one-dimensional, ``none`` when only J = 0 solves it,
    ``degenerate`` when the unique form is singular, and ``inconclusive``
    when the solution space has dimension > 1.
    """
    if F.q != q * q:
        raise ValueError(f"field of order {F.q} is not F_(q^2) for q = {q}")
    rng = rng or random.Random(0)
    j = F.n // 2  # q = p^j
    n = len(samples[0])
    N = n * n

    def rows():
        for M in samples:
            Mb = [[_conj(F, x, j) for x in row] for row in M]
            for a in range(n):
                for b in range(n):
                    row = []
                    for c in range(n):
                        mca = Mb[c][a]
                        for d in range(n):
                            row.append(F.mul(mca, M[d][b]))
                    idx = a * n + b
                    row[idx] = F.sub(row[idx], F.one)
                    yield row

    basis = _nullspace(F, rows(), N)
    if not basis:
        return HermitianResult("none")
    if len(basis) > 1:
        return HermitianResult("inconclusive", nullity=len(basis))
    J0 = [basis[0][r * n : (r + 1) * n] for r in range(n)]
    J0h = [[_conj(F, J0[c][r], j) for c in range(n)] for r in range(n)]
    for _ in range(32):
        a = F.random_nonzero(rng)
        ab = _conj(F, a, j)
        H = [[F.add(F.mul(a, J0[r][c]), F.mul(ab, J0h[r][c])) for c in range(n)] for r in range(n)]
        if any(any(x) for row in H for x in row):
            status = "found" if any(mat_det(F, H)) else "degenerate"
            return HermitianResult(status, H, 1)
    return HermitianResult("degenerate", None, 1)


def is_hermitian(F: ExplicitField, J: Matrix, q: int) -> bool:
    j = F.n // 2
    n = len(J)
    return all(J[c][r] == _conj(F, J[r][c], j) for r in range(n) for c in range(n))
