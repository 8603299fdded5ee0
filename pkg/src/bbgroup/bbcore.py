"""Black box groups: the oracle interface, matrix backends, products, and
subgroups sampled by product replacement.

A string is a ``bytes`` object of the box's fixed length.  Algorithm code
only ever calls ``rand``, ``mul``, ``inv``, ``eq`` (and helpers built from
them); interpreting the bytes is reserved for backends and for the white-box
projection in :mod:`bbgroup.harness`.
"""

from __future__ import annotations

import math
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import kernels
from .errors import FieldError, NoExponentError, StringLengthError
from .ffield import ExplicitField, FieldElement, format_field, parse_field
from .numtheory import FactoredInteger, factorize, lcm_factored, mul_factored

Matrix = list[list[FieldElement]]


def _fresh_seed(rng: random.Random) -> int:
    return rng.getrandbits(64)


# ---------------------------------------------------------------------------
# product replacement


@dataclass
class PRState:
    """Product replacement state with an accumulator ("rattle")."""

    slots: list[bytes]
    accumulator: bytes
    steps_taken: int = 0


def pr_init(seeds: Sequence[bytes], identity: bytes, r: int) -> PRState:
    return PRState([seeds[t % len(seeds)] for t in range(r)], identity)


def pr_step(box: "BlackBox", state: PRState, rng: random.Random) -> bytes:
    slots = state.slots
    r = len(slots)
    i = rng.randrange(r)
    j = rng.randrange(r - 1)
    if j >= i:
        j += 1
    other = slots[j] if rng.random() < 0.5 else box.inv(slots[j])
    if rng.random() < 0.5:
        slots[i] = box.mul(slots[i], other)
    else:
        slots[i] = box.mul(other, slots[i])
    state.accumulator = box.mul(state.accumulator, slots[rng.randrange(r)])
    state.steps_taken += 1
    return state.accumulator


def default_slots(n_seeds: int) -> int:
    return max(10, 2 * n_seeds)


def default_burn_in(n_seeds: int) -> int:
    return 50 * n_seeds


# ---------------------------------------------------------------------------
# the oracle interface


class BlackBox(ABC):
    """Oracle over a finite group.

    Subclasses supply ``length``, ``rand``, ``mul``, ``inv``, ``eq`` and
    ``identity``.  ``exponent`` is an optional global exponent.
    """

    length: int
    exponent: int | None = None
    rng: random.Random

    @abstractmethod
    def rand(self) -> bytes: ...

    @abstractmethod
    def mul(self, x: bytes, y: bytes) -> bytes: ...

    @abstractmethod
    def inv(self, x: bytes) -> bytes: ...

    @abstractmethod
    def eq(self, x: bytes, y: bytes) -> bool: ...

    @abstractmethod
    def identity(self) -> bytes: ...

    @abstractmethod
    def clone(self, seed: int | None = None) -> "BlackBox":
        """Independent copy with its own randomness stream."""

    # -- derived operations --------------------------------------------------
    def check(self, *strings: bytes) -> None:
        for s in strings:
            if len(s) != self.length:
                raise StringLengthError(f"string of length {len(s)} handed to a box of length {self.length}")

    def is_identity(self, x: bytes) -> bool:
        return self.eq(x, self.identity())

    def pow(self, x: bytes, e: int) -> bytes:
        if e < 0:
            x, e = self.inv(x), -e
        mul = self.mul
        result = None
        base = x
        while e:
            if e & 1:
                result = base if result is None else mul(result, base)
            e >>= 1
            if e:
                base = mul(base, base)
        return self.identity() if result is None else result

    def conj(self, x: bytes, g: bytes) -> bytes:
        """``x^g = g^-1 x g``."""
        return self.mul(self.inv(g), self.mul(x, g))

    def commutator(self, x: bytes, y: bytes) -> bytes:
        """``x y x^-1 y^-1``."""
        return self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)))

    def commutes(self, x: bytes, y: bytes) -> bool:
        return self.eq(self.mul(x, y), self.mul(y, x))

    def require_exponent(self) -> int:
        if self.exponent is None:
            raise NoExponentError(f"{type(self).__name__} has no global exponent")
        return self.exponent


# ---------------------------------------------------------------------------
# matrix encoding


def encode_matrix(F: ExplicitField, m: Matrix) -> bytes:
    return b"".join(F.encode(a) for row in m for a in row)


def decode_matrix(F: ExplicitField, d: int, data: bytes) -> Matrix:
    step = F.width * F.n
    if len(data) != d * d * step:
        raise StringLengthError(f"expected {d * d * step} bytes, got {len(data)}")
    entries = [F.decode(data[i : i + step]) for i in range(0, len(data), step)]
    return [entries[i * d : (i + 1) * d] for i in range(d)]


def identity_matrix(F: ExplicitField, d: int) -> Matrix:
    return [[F.one if i == j else F.zero for j in range(d)] for i in range(d)]


def mat_mul(F: ExplicitField, a: Matrix, b: Matrix) -> Matrix:
    d = len(a)
    mul, add = F.mul, F.add
    out = []
    for i in range(d):
        row = []
        ai = a[i]
        for j in range(d):
            acc = F.zero
            for k in range(d):
                if any(ai[k]) and any(b[k][j]):
                    acc = add(acc, mul(ai[k], b[k][j]))
            row.append(acc)
        out.append(row)
    return out


def mat_inv(F: ExplicitField, a: Matrix) -> Matrix | None:
    """Gauss-Jordan inverse, or None when singular."""
    d = len(a)
    m = [list(r) for r in a]
    inv = identity_matrix(F, d)
    for col in range(d):
        piv = next((r for r in range(col, d) if any(m[r][col])), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        s = F.inv(m[col][col])
        m[col] = [F.mul(x, s) for x in m[col]]
        inv[col] = [F.mul(x, s) for x in inv[col]]
        for r in range(d):
            if r != col and any(m[r][col]):
                f = m[r][col]
                m[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[r], m[col])]
                inv[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(inv[r], inv[col])]
    return inv


def mat_det(F: ExplicitField, a: Matrix) -> FieldElement:
    d = len(a)
    m = [list(r) for r in a]
    det = F.one
    for col in range(d):
        piv = next((r for r in range(col, d) if any(m[r][col])), None)
        if piv is None:
            return F.zero
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = F.neg(det)
        det = F.mul(det, m[col][col])
        s = F.inv(m[col][col])
        for r in range(col + 1, d):
            if any(m[r][col]):
                f = F.mul(m[r][col], s)
                m[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[r], m[col])]
    return det


def mat_scale(F: ExplicitField, lam: FieldElement, a: Matrix) -> Matrix:
    return [[F.mul(lam, x) for x in row] for row in a]


def center_scalars(F: ExplicitField, d: int) -> list[FieldElement]:
    """All ``lam`` with ``lam**d == 1``, starting with 1."""
    e = math.gcd(d, F.q - 1)
    if e == 1:
        return [F.one]
    primes = [r for r, _ in factorize(e).factors]
    rng = random.Random(0)
    while True:
        z = F.pow(F.random_nonzero(rng), (F.q - 1) // e)
        if all(F.pow(z, e // r) != F.one for r in primes):
            break
    out = [F.one]
    for _ in range(e - 1):
        out.append(F.mul(out[-1], z))
    return out


class _GenericOps:
    """Matrix oracle arithmetic in pure Python for arbitrary fields."""

    def __init__(self, F: ExplicitField, d: int, scalars: list[FieldElement]):
        self.field, self.d, self.scalars = F, d, scalars

    def mul(self, x: bytes, y: bytes) -> bytes:
        F, d = self.field, self.d
        return encode_matrix(F, mat_mul(F, decode_matrix(F, d, x), decode_matrix(F, d, y)))

    def inv(self, x: bytes) -> bytes | None:
        F, d = self.field, self.d
        m = mat_inv(F, decode_matrix(F, d, x))
        return None if m is None else encode_matrix(F, m)

    def eq(self, x: bytes, y: bytes) -> bool:
        if x == y:
            return True
        if len(self.scalars) == 1:
            return False
        F, d = self.field, self.d
        a, b = decode_matrix(F, d, x), decode_matrix(F, d, y)
        return any(a == mat_scale(F, lam, b) for lam in self.scalars[1:])


class _ScalarOps:
    """1 x 1 matrices over a prime field: plain modular arithmetic."""

    def __init__(self, F: ExplicitField, scalars: list[FieldElement]):
        self.p, self.w = F.p, F.width
        self.scalars = [s[0] for s in scalars]

    def mul(self, x: bytes, y: bytes) -> bytes:
        return (int.from_bytes(x, "big") * int.from_bytes(y, "big") % self.p).to_bytes(self.w, "big")

    def inv(self, x: bytes) -> bytes | None:
        v = int.from_bytes(x, "big")
        if v == 0:
            return None
        return pow(v, -1, self.p).to_bytes(self.w, "big")

    def pow(self, x: bytes, e: int) -> bytes:
        return pow(int.from_bytes(x, "big"), e, self.p).to_bytes(self.w, "big")

    def eq(self, x: bytes, y: bytes) -> bool:
        if x == y:
            return True
        a, b = int.from_bytes(x, "big"), int.from_bytes(y, "big")
        return any(a == lam * b % self.p for lam in self.scalars[1:])


def matrix_ops(F: ExplicitField, d: int, scalars: list[FieldElement], impl: str | None = None):
    if d == 1 and F.n == 1:
        return _ScalarOps(F, scalars)
    if kernels.supports(F) and impl != "python":
        return kernels.SmallMatrixOps(F, d, scalars, impl=impl)
    return _GenericOps(F, d, scalars)


# ---------------------------------------------------------------------------
# backends


def global_exponent_gl(n: int, q: int, p: int) -> int:
    """``p^ceil(log_p n) * lcm(q^i - 1 : 1 <= i <= n)``, an exponent of GL_n(q)."""
    ppart = 1
    while ppart < n:
        ppart *= p
    acc = 1
    for i in range(1, n + 1):
        acc = math.lcm(acc, q**i - 1)
    return ppart * acc


def factored_global_exponent_gl(n: int, q: int, p: int) -> FactoredInteger:
    e = 0
    while p**e < n:
        e += 1
    parts = [factorize(q**i - 1, hints=(p,)) for i in range(1, n + 1)]
    out = lcm_factored(*parts) if parts else FactoredInteger(1)
    if e:
        out = mul_factored(out, FactoredInteger(p**e, ((p, e),)))
    return out


class MatrixBox(BlackBox):
    """Group generated by invertible matrices, optionally modulo scalars."""

    def __init__(
        self,
        F: ExplicitField,
        dim: int,
        gens: Sequence[bytes],
        quotient_center: bool = False,
        *,
        exponent: int | None = None,
        seed: int | None = None,
        slots: int | None = None,
        burn_in: int | None = None,
        impl: str | None = None,
        _ops=None,
    ):
        if dim < 1:
            raise ValueError(f"dimension must be >= 1, got {dim}")
        self.field = F
        self.dim = dim
        self.quotient_center = quotient_center
        self.scalars = center_scalars(F, dim) if quotient_center else [F.one]
        self.ops = _ops or matrix_ops(F, dim, self.scalars, impl)
        self.length = dim * dim * F.n * F.width
        self._identity = encode_matrix(F, identity_matrix(F, dim))
        self.gens = list(gens)
        for g in self.gens:
            self.check(g)
            if self.ops.inv(g) is None:
                raise ValueError("singular generator")
        self.exponent = exponent if exponent is not None else global_exponent_gl(dim, F.q, F.p)
        self.rng = random.Random(seed)
        n_seeds = max(1, len(self.gens))
        self.slots = slots or default_slots(n_seeds)
        self.burn_in = default_burn_in(n_seeds) if burn_in is None else burn_in
        self._impl = impl
        self.pr = pr_init(self.gens or [self._identity], self._identity, self.slots)
        for _ in range(self.burn_in):
            pr_step(self, self.pr, self.rng)

    def rand(self) -> bytes:
        return pr_step(self, self.pr, self.rng)

    def mul(self, x: bytes, y: bytes) -> bytes:
        if len(x) != self.length or len(y) != self.length:
            self.check(x, y)
        return self.ops.mul(x, y)

    def inv(self, x: bytes) -> bytes:
        self.check(x)
        out = self.ops.inv(x)
        if out is None:
            raise ValueError("string encodes a singular matrix")
        return out

    def eq(self, x: bytes, y: bytes) -> bool:
        if len(x) != self.length or len(y) != self.length:
            self.check(x, y)
        return self.ops.eq(x, y)

    def pow(self, x: bytes, e: int) -> bytes:
        fast = getattr(self.ops, "pow", None)
        if fast is None:
            return super().pow(x, e)
        self.check(x)
        return fast(x, e)

    def identity(self) -> bytes:
        return self._identity

    def encode(self, m: Matrix) -> bytes:
        F = self.field
        return encode_matrix(F, [[F.element(a) if not isinstance(a, tuple) else a for a in row] for row in m])

    def clone(self, seed: int | None = None) -> "MatrixBox":
        return MatrixBox(
            self.field,
            self.dim,
            self.gens,
            self.quotient_center,
            exponent=self.exponent,
            seed=_fresh_seed(self.rng) if seed is None else seed,
            slots=self.slots,
            burn_in=self.burn_in,
            _ops=self.ops,
        )

    def quotient_view(self) -> "MatrixBox":
        """The same generators with equality taken modulo central scalars."""
        return MatrixBox(
            self.field, self.dim, self.gens, True, exponent=self.exponent,
            seed=_fresh_seed(self.rng), slots=self.slots, burn_in=self.burn_in, impl=self._impl,
        )


class DirectProductBox(BlackBox):
    """Componentwise product; strings are concatenations."""

    def __init__(self, *factors: BlackBox):
        if not factors:
            raise ValueError("direct product needs at least one factor")
        self.factors = list(factors)
        self.lengths = [f.length for f in factors]
        self.length = sum(self.lengths)
        self.offsets = [0]
        for ln in self.lengths:
            self.offsets.append(self.offsets[-1] + ln)
        exps = [f.exponent for f in factors]
        self.exponent = math.lcm(*exps) if all(e is not None for e in exps) else None
        self._identity = b"".join(f.identity() for f in factors)
        self.rng = random.Random()

    def split(self, x: bytes) -> list[bytes]:
        self.check(x)
        o = self.offsets
        return [x[o[i] : o[i + 1]] for i in range(len(self.factors))]

    def rand(self) -> bytes:
        return b"".join(f.rand() for f in self.factors)

    def mul(self, x: bytes, y: bytes) -> bytes:
        o = self.offsets
        self.check(x, y)
        return b"".join(f.mul(x[o[i] : o[i + 1]], y[o[i] : o[i + 1]]) for i, f in enumerate(self.factors))

    def inv(self, x: bytes) -> bytes:
        o = self.offsets
        self.check(x)
        return b"".join(f.inv(x[o[i] : o[i + 1]]) for i, f in enumerate(self.factors))

    def eq(self, x: bytes, y: bytes) -> bool:
        o = self.offsets
        self.check(x, y)
        return all(f.eq(x[o[i] : o[i + 1]], y[o[i] : o[i + 1]]) for i, f in enumerate(self.factors))

    def identity(self) -> bytes:
        return self._identity

    def clone(self, seed: int | None = None) -> "DirectProductBox":
        rng = random.Random(seed)
        return DirectProductBox(*(f.clone(_fresh_seed(rng)) for f in self.factors))


class GeneratedBox(BlackBox):
    """Subgroup of ``parent`` generated by ``seeds``, sampled by product replacement."""

    def __init__(
        self,
        parent: BlackBox,
        seeds: Sequence[bytes],
        slots: int | None = None,
        burn_in: int | None = None,
        seed: int | None = None,
    ):
        if not seeds:
            raise ValueError("generated subgroup needs at least one seed")
        parent.check(*seeds)
        self.parent = parent
        self.seeds = list(seeds)
        self.length = parent.length
        self.exponent = parent.exponent
        self.slots = slots or default_slots(len(seeds))
        self.burn_in = default_burn_in(len(seeds)) if burn_in is None else burn_in
        self.rng = random.Random(seed)
        self.pr = pr_init(self.seeds, parent.identity(), self.slots)
        for _ in range(self.burn_in):
            pr_step(parent, self.pr, self.rng)

    def rand(self) -> bytes:
        return pr_step(self.parent, self.pr, self.rng)

    def mul(self, x: bytes, y: bytes) -> bytes:
        return self.parent.mul(x, y)

    def inv(self, x: bytes) -> bytes:
        return self.parent.inv(x)

    def eq(self, x: bytes, y: bytes) -> bool:
        return self.parent.eq(x, y)

    def identity(self) -> bytes:
        return self.parent.identity()

    def pow(self, x: bytes, e: int) -> bytes:
        return self.parent.pow(x, e)

    def clone(self, seed: int | None = None) -> "GeneratedBox":
        return GeneratedBox(
            self.parent, self.seeds, self.slots, self.burn_in,
            _fresh_seed(self.rng) if seed is None else seed,
        )


class QuotientBox(BlackBox):
    """``parent`` modulo a list of known central elements."""

    def __init__(self, parent: BlackBox, central: Sequence[bytes]):
        parent.check(*central)
        self.parent = parent
        self.central = [z for z in central if not parent.is_identity(z)]
        self.length = parent.length
        self.exponent = parent.exponent
        self.rng = parent.rng

    def rand(self) -> bytes:
        return self.parent.rand()

    def mul(self, x: bytes, y: bytes) -> bytes:
        return self.parent.mul(x, y)

    def inv(self, x: bytes) -> bytes:
        return self.parent.inv(x)

    def eq(self, x: bytes, y: bytes) -> bool:
        P = self.parent
        if P.eq(x, y):
            return True
        return any(P.eq(x, P.mul(y, z)) for z in self.central)

    def identity(self) -> bytes:
        return self.parent.identity()

    def clone(self, seed: int | None = None) -> "QuotientBox":
        return QuotientBox(self.parent.clone(seed), self.central)


# ---------------------------------------------------------------------------
# functional spellings


def bb_matrix(
    F: ExplicitField,
    n: int,
    gens: Sequence[Matrix],
    quotient_center: bool = False,
    *,
    seed: int | None = None,
    **kwargs,
) -> MatrixBox:
    """Black box over the group generated by ``gens`` inside GL_n(F).

    Matrix entries may be field elements or plain ints (prime-field scalars).
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    enc = []
    for g in gens:
        if len(g) != n or any(len(row) != n for row in g):
            raise ValueError(f"generator is not {n} x {n}")
        m = [[F.element(a) for a in row] for row in g]
        if not any(mat_det(F, m)):
            raise ValueError("singular generator")
        enc.append(encode_matrix(F, m))
    return MatrixBox(F, n, enc, quotient_center, seed=seed, **kwargs)


def bb_rand(X: BlackBox) -> bytes:
    return X.rand()


def bb_mul(X: BlackBox, x: bytes, y: bytes) -> bytes:
    X.check(x, y)
    return X.mul(x, y)


def bb_inv(X: BlackBox, x: bytes) -> bytes:
    X.check(x)
    return X.inv(x)


def bb_eq(X: BlackBox, x: bytes, y: bytes) -> bool:
    X.check(x, y)
    return X.eq(x, y)


def bb_direct_product(*boxes: BlackBox) -> DirectProductBox:
    return DirectProductBox(*boxes)


def bb_generated(
    X: BlackBox,
    seeds: Sequence[bytes],
    r: int | None = None,
    burn_in: int | None = None,
    seed: int | None = None,
) -> GeneratedBox:
    if seed is None:
        seed = _fresh_seed(X.rng)
    return GeneratedBox(X, seeds, r, burn_in, seed)


# ---------------------------------------------------------------------------
# standard generators


def generating_scalar(F: ExplicitField) -> FieldElement:
    """A field element whose square generates F over F_p."""
    if F.n == 1:
        return F.one if F.p == 2 else F.scalar(2)
    if F.q < 2**40:
        return F.primitive_element
    return F.add(F.gen, F.one)


def sl_generators(F: ExplicitField, d: int) -> list[Matrix]:
    """Generators of SL_d(F): adjacent root elements and one diagonal element."""
    gens = []
    for i in range(d - 1):
        for a, b in ((i, i + 1), (i + 1, i)):
            m = identity_matrix(F, d)
            m[a][b] = F.one
            gens.append(m)
    if F.q > 3 and d > 1:
        w = generating_scalar(F)
        h = identity_matrix(F, d)
        h[0][0] = w
        h[1][1] = F.inv(w)
        gens.append(h)
    if d == 1:
        gens.append(identity_matrix(F, 1))
    return gens


def bb_sl(F: ExplicitField, d: int, quotient_center: bool = False, **kwargs) -> MatrixBox:
    """SL_d(F), or PSL_d(F) when ``quotient_center`` is set."""
    return bb_matrix(F, d, sl_generators(F, d), quotient_center, **kwargs)


# ---------------------------------------------------------------------------
# generator files


def format_matrix_line(F: ExplicitField, m: Matrix) -> str:
    return " ".join(":".join(str(c) for c in a) for row in m for a in row)


def write_generator_file(path: str | Path, F: ExplicitField, d: int, gens: Sequence[Matrix], quotient: bool) -> None:
    lines = [format_field(F).rstrip("\n"), f"dim {d}", f"quotient {int(quotient)}"]
    lines += [format_matrix_line(F, g) for g in gens]
    Path(path).write_text("\n".join(lines) + "\n")


@dataclass
class GeneratorSpec:
    field: ExplicitField
    dim: int
    quotient: bool
    gens: list[Matrix] = field(default_factory=list)

    def box(self, **kwargs) -> MatrixBox:
        return bb_matrix(self.field, self.dim, self.gens, self.quotient, **kwargs)


def read_generator_file(path: str | Path) -> GeneratorSpec:
    lines = [ln.strip() for ln in Path(path).read_text().splitlines()]
    F, used = parse_field(lines)
    rest = [ln for ln in lines[used:] if ln and not ln.startswith("#")]
    if len(rest) < 2 or not rest[0].startswith("dim") or not rest[1].startswith("quotient"):
        raise FieldError("generator file needs 'dim d' and 'quotient 0|1' after the field")
    d = int(rest[0].split()[1])
    quotient = rest[1].split()[1] == "1"
    gens = []
    for ln in rest[2:]:
        entries = ln.split()
        if len(entries) != d * d:
            raise FieldError(f"matrix line has {len(entries)} entries, expected {d * d}")
        vals = [F.element([int(c) for c in e.split(":")]) for e in entries]
        gens.append([vals[i * d : (i + 1) * d] for i in range(d)])
    return GeneratorSpec(F, d, quotient, gens)
