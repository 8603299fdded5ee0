"""Explicit finite fields F_{p^n} with arbitrary-precision p.

Elements are tuples of ``n`` integers in ``[0, p)``, least significant basis
power first.  The canonical presentation is a polynomial basis
``1, t, ..., t^{n-1}`` modulo a monic irreducible polynomial; a field given by
structure constants is converted to that form on creation and keeps the
change of basis around.
"""

from __future__ import annotations

import itertools
import random
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import FieldError, ReducibleModulusError
from .numtheory import factorize

FieldElement = tuple[int, ...]


# ---------------------------------------------------------------------------
# polynomials over F_p, coefficient lists ascending, no trailing zeros


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo ``f`` (any leading coefficient)."""
    a = [x % p for x in a]
    _ptrim(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _ptrim(a)
    return a


def _pmulmod(a: list[int], b: list[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _pmod(prod, f, p)


def _ppowmod(a: list[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(list(a), f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        e >>= 1
        if e:
            base = _pmulmod(base, base, f, p)
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _ptrim([x % p for x in a]), _ptrim([x % p for x in b])
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _ptrim(out)


def _prime_divisors(n: int) -> list[int]:
    return [r for r, _ in factorize(n).factors] if n > 1 else []


def is_irreducible(p: int, modulus: Sequence[int]) -> bool:
    """Rabin's test for a monic polynomial of degree n over F_p."""
    f = list(modulus)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    # x^(p^n) == x mod f
    xp = x
    for _ in range(n):
        xp = _ppowmod(xp, p, f, p)
    if _psub(xp, x, p):
        return False
    for r in _prime_divisors(n):
        xp = x
        for _ in range(n // r):
            xp = _ppowmod(xp, p, f, p)
        g = _pgcd(f, _psub(xp, x, p), p)
        if len(g) > 1:
            return False
    return True


def find_irreducible(p: int, n: int) -> tuple[int, ...]:
    """First monic irreducible polynomial of degree n, ordered by its
    low coefficients read as a base-p integer (constant term first)."""
    if n == 1:
        return (0, 1)
    for idx in itertools.count(1):
        low = []
        v = idx
        for _ in range(n):
            low.append(v % p)
            v //= p
        if v:
            break
        if low[0] == 0:
            continue
        f = tuple(low) + (1,)
        if is_irreducible(p, f):
            return f
    raise FieldError(f"no irreducible polynomial of degree {n} over F_{p}")


# ---------------------------------------------------------------------------


class ExplicitField:
    """F_{p^n} in a polynomial basis.

    ``modulus`` is the monic defining polynomial, ascending coefficients of
    length ``n + 1``.  Instances are immutable and hashable.
    """

    def __init__(self, p: int, modulus: Sequence[int], *, check: bool = True):
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) < 2:
            raise FieldError("defining polynomial must have degree >= 1")
        if modulus[-1] != 1:
            raise FieldError("defining polynomial must be monic")
        if p < 2:
            raise FieldError(f"characteristic must be prime, got {p}")
        if check and not is_irreducible(p, modulus):
            raise ReducibleModulusError(f"polynomial {modulus} is reducible over F_{p}")
        self.p = p
        self.n = len(modulus) - 1
        self.q = p**self.n
        self.modulus = modulus
        self.width = max(1, (p.bit_length() + 7) // 8)
        # images of the structure-constant basis s_1..s_n, when created from a table
        self.table_basis: tuple[FieldElement, ...] | None = None

    # -- identity -----------------------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, ExplicitField)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        return f"ExplicitField(p={self.p}, n={self.n}, modulus={self.modulus})"

    # -- constants ------------------------------------------------------------
    @cached_property
    def zero(self) -> FieldElement:
        return (0,) * self.n

    @cached_property
    def one(self) -> FieldElement:
        return (1,) + (0,) * (self.n - 1)

    @cached_property
    def gen(self) -> FieldElement:
        """The class of ``t``; equals ``one``-scaled for n == 1."""
        if self.n == 1:
            return ((-self.modulus[0]) % self.p,)
        return (0, 1) + (0,) * (self.n - 2)

    def scalar(self, m: int) -> FieldElement:
        return (m % self.p,) + (0,) * (self.n - 1)

    def element(self, value) -> FieldElement:
        """Coerce an int (prime-field scalar) or coefficient sequence."""
        if isinstance(value, int):
            return self.scalar(value)
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) != self.n:
            raise FieldError(f"expected {self.n} coefficients, got {len(coeffs)}")
        return coeffs

    def check(self, a: FieldElement) -> None:
        if len(a) != self.n or any(not 0 <= c < self.p for c in a):
            raise FieldError(f"{a!r} is not an element of {self!r}")

    # -- arithmetic -----------------------------------------------------------
    def is_zero(self, a: FieldElement) -> bool:
        return not any(a)

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a: FieldElement) -> FieldElement:
        p = self.p
        return tuple(-x % p for x in a)

    def smul(self, m: int, a: FieldElement) -> FieldElement:
        p = self.p
        return tuple(m * x % p for x in a)

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        p, n = self.p, self.n
        if n == 1:
            return (a[0] * b[0] % p,)
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        f = self.modulus
        for i in range(2 * n - 2, n - 1, -1):
            c = prod[i] % p
            if c:
                base = i - n
                for j in range(n):
                    prod[base + j] -= c * f[j]
        return tuple(c % p for c in prod[:n])

    def inv(self, a: FieldElement) -> FieldElement:
        if not any(a):
            raise ZeroDivisionError("zero has no inverse")
        p = self.p
        if self.n == 1:
            return (pow(a[0], -1, p),)
        # extended Euclid in F_p[t]
        r0, r1 = list(self.modulus), _ptrim(list(a))
        s0, s1 = [], [1]
        while r1:
            qt, rem = _pdivmod(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, _psub(s0, _pmul(qt, s1, p), p)
        # r0 is a nonzero constant
        c = pow(r0[0], -1, p)
        s0 = [x * c % p for x in s0]
        return tuple(s0 + [0] * (self.n - len(s0)))

    def div(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return self.mul(a, self.inv(b))

    def pow(self, a: FieldElement, e: int) -> FieldElement:
        if e < 0:
            if not any(a):
                raise ZeroDivisionError("negative power of zero")
            a, e = self.inv(a), -e
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def frobenius(self, a: FieldElement, j: int = 1) -> FieldElement:
        """``a^(p^j)``."""
        if not 0 <= j <= self.n:
            raise ValueError(f"frobenius exponent must lie in [0, {self.n}], got {j}")
        if j in (0, self.n) or self.n == 1:
            return a
        return self.pow(a, self.p**j)

    def random(self, rng: random.Random) -> FieldElement:
        return tuple(rng.randrange(self.p) for _ in range(self.n))

    def random_nonzero(self, rng: random.Random) -> FieldElement:
        while True:
            a = self.random(rng)
            if any(a):
                return a

    # -- small-field enumeration ---------------------------------------------
    def to_index(self, a: FieldElement) -> int:
        idx = 0
        for c in reversed(a):
            idx = idx * self.p + c
        return idx

    def from_index(self, idx: int) -> FieldElement:
        out = []
        for _ in range(self.n):
            idx, c = divmod(idx, self.p)
            out.append(c)
        return tuple(out)

    def elements(self) -> Iterator[FieldElement]:
        for i in range(self.q):
            yield self.from_index(i)

    def order(self, a: FieldElement) -> int:
        """Multiplicative order; factors q - 1 by trial division."""
        if not any(a):
            raise ValueError("zero has no multiplicative order")
        d = self.q - 1
        for r, _ in factorize(d).factors:
            while d % r == 0 and self.pow(a, d // r) == self.one:
                d //= r
        return d

    @cached_property
    def primitive_element(self) -> FieldElement:
        """Least-index generator of the multiplicative group (small q only)."""
        qm1 = self.q - 1
        primes = [r for r, _ in factorize(qm1).factors]
        candidates = [self.gen] if self.n > 1 else []
        candidates = itertools.chain(candidates, (self.from_index(i) for i in range(1, self.q)))
        for a in candidates:
            if all(self.pow(a, qm1 // r) != self.one for r in primes):
                return a
        raise FieldError("no primitive element found")

    # -- encodings ------------------------------------------------------------
    def encode(self, a: FieldElement) -> bytes:
        w = self.width
        return b"".join(c.to_bytes(w, "big") for c in a)

    def decode(self, data: bytes) -> FieldElement:
        w = self.width
        if len(data) != w * self.n:
            raise FieldError(f"expected {w * self.n} bytes, got {len(data)}")
        return tuple(int.from_bytes(data[i : i + w], "big") for i in range(0, len(data), w))

    def structure_constants(self) -> list[int]:
        """``c_ijk`` of the polynomial basis, flattened row-major in (i, j, k)."""
        basis = [self.from_index(self.p**i) for i in range(self.n)]
        out = []
        for si in basis:
            for sj in basis:
                out.extend(self.mul(si, sj))
        return out

    def from_table_coords(self, v: Sequence[int]) -> FieldElement:
        """Convert coordinates w.r.t. the structure-constant basis."""
        if self.table_basis is None:
            return self.element(v)
        acc = self.zero
        for c, s in zip(v, self.table_basis):
            acc = self.add(acc, self.smul(c, s))
        return acc

    def sqrt(self, a: FieldElement) -> FieldElement | None:
        """A square root of ``a`` by Tonelli-Shanks, or None for a non-square."""
        if not any(a):
            return a
        if self.p == 2:
            return self.pow(a, self.q // 2)
        qm1 = self.q - 1
        if self.pow(a, qm1 // 2) != self.one:
            return None
        s = (qm1 & -qm1).bit_length() - 1
        m = qm1 >> s
        rng = random.Random(0)
        z = self.random_nonzero(rng)
        while self.pow(z, qm1 // 2) == self.one:
            z = self.random_nonzero(rng)
        c = self.pow(z, m)
        r = self.pow(a, (m + 1) // 2)
        t = self.pow(a, m)
        big = s
        while t != self.one:
            i, tt = 0, t
            while tt != self.one:
                tt = self.mul(tt, tt)
                i += 1
            b = c
            for _ in range(big - i - 1):
                b = self.mul(b, b)
            r = self.mul(r, b)
            c = self.mul(b, b)
            t = self.mul(t, c)
            big = i
        return r


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _ptrim([c % p for c in out])


def _pdivmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = _ptrim([x % p for x in a])
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    qt = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        qt[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _ptrim(a)
    return _ptrim(qt), a


# ---------------------------------------------------------------------------
# linear algebra over F_p (used for structure-constant conversion)


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] % p:
                c = m[i][col]
                m[i] = [(x - c * y) % p for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def _solve_mod_p(a: list[list[int]], b: list[int], p: int) -> list[int] | None:
    """One solution of ``a x = b`` over F_p, or None."""
    ncols = len(a[0])
    m = [list(r) + [bi] for r, bi in zip(a, b)]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] % p:
                c = m[i][col]
                m[i] = [(x - c * y) % p for x, y in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
    if any(m[i][-1] % p for i in range(rank, len(m))):
        return None
    x = [0] * ncols
    for i, col in enumerate(pivots):
        x[col] = m[i][-1] % p
    return x


def _table_mul(u: Sequence[int], v: Sequence[int], table: Sequence[int], n: int, p: int) -> list[int]:
    out = [0] * n
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                if vj:
                    c = ui * vj
                    base = (i * n + j) * n
                    for k in range(n):
                        out[k] += c * table[base + k]
    return [x % p for x in out]


def _from_table(p: int, n: int, table: Sequence[int]) -> ExplicitField:
    table = [int(c) % p for c in table]
    if len(table) != n**3:
        raise FieldError(f"structure-constant table needs {n**3} entries, got {len(table)}")
    basis = [[int(i == j) for j in range(n)] for i in range(n)]

    def tm(u, v):
        return _table_mul(u, v, table, n, p)

    # commutativity and associativity are bilinear/trilinear: basis checks are exhaustive
    for a in basis:
        for b in basis:
            if tm(a, b) != tm(b, a):
                raise FieldError("structure constants are not commutative")
            for c in basis:
                if tm(tm(a, b), c) != tm(a, tm(b, c)):
                    raise FieldError("structure constants are not associative")
    # unit e: sum_i e_i c_ijk = delta_jk
    rows, rhs = [], []
    for j in range(n):
        for k in range(n):
            rows.append([table[(i * n + j) * n + k] for i in range(n)])
            rhs.append(int(j == k))
    unit = _solve_mod_p(rows, rhs, p)
    if unit is None:
        raise FieldError("structure constants have no unit element")

    rng = random.Random(0)
    candidates = itertools.chain(basis, ([rng.randrange(p) for _ in range(n)] for _ in range(64)))
    for x in candidates:
        powers = [unit]
        for _ in range(n):
            powers.append(tm(powers[-1], x))
        if _rank_mod_p(powers[:n], p) < n:
            continue
        # x^n = sum_j a_j x^j  ->  minimal polynomial t^n - sum a_j t^j
        cols = [[powers[j][k] for j in range(n)] for k in range(n)]
        a = _solve_mod_p(cols, powers[n], p)
        modulus = tuple((-c) % p for c in a) + (1,)
        if not is_irreducible(p, modulus):
            raise ReducibleModulusError(
                "structure constants define an algebra with zero divisors"
            )
        F = ExplicitField(p, modulus, check=False)
        # s_i in terms of powers of x: solve sum_j y_j x^j = s_i
        images = []
        for s in basis:
            y = _solve_mod_p(cols, s, p)
            images.append(tuple(y))
        F.table_basis = tuple(images)
        return F
    raise FieldError("structure constants do not define a field (no generating element)")


def field_create(p: int, n: int, defn) -> ExplicitField:
    """Build F_{p^n} from a polynomial or a structure-constant table.

    ``defn`` is ``("poly", coeffs)`` (ascending, length n + 1),
    ``("table", entries)`` (n**3 entries, row-major in i, j, k), or a bare
    sequence whose length decides between the two.
    """
    if n < 1:
        raise FieldError(f"degree must be >= 1, got {n}")
    if isinstance(defn, tuple) and len(defn) == 2 and defn[0] in ("poly", "table"):
        kind, data = defn
    else:
        data = list(_flatten(defn))
        kind = "poly" if len(data) == n + 1 else "table"
    data = list(_flatten(data))
    if kind == "poly":
        if len(data) != n + 1:
            raise FieldError(f"polynomial of degree {n} needs {n + 1} coefficients")
        lead = data[-1] % p
        if lead == 0:
            raise FieldError("leading coefficient vanishes mod p")
        inv = pow(lead, -1, p)
        return ExplicitField(p, [c * inv % p for c in data])
    return _from_table(p, n, data)


def _flatten(x) -> Iterable[int]:
    for item in x:
        if isinstance(item, (list, tuple)):
            yield from _flatten(item)
        else:
            yield int(item)


def GF(p: int, n: int = 1) -> ExplicitField:
    """F_{p^n} with the first irreducible polynomial in :func:`find_irreducible` order."""
    return _gf_cached(p, n)


_GF_CACHE: dict[tuple[int, int], ExplicitField] = {}


def _gf_cached(p: int, n: int) -> ExplicitField:
    key = (p, n)
    if key not in _GF_CACHE:
        _GF_CACHE[key] = ExplicitField(p, find_irreducible(p, n), check=False)
    return _GF_CACHE[key]


# functional spellings


def fe_add(F: ExplicitField, a: FieldElement, b: FieldElement) -> FieldElement:
    return F.add(a, b)


def fe_neg(F: ExplicitField, a: FieldElement) -> FieldElement:
    return F.neg(a)


def fe_mul(F: ExplicitField, a: FieldElement, b: FieldElement) -> FieldElement:
    F.check(a)
    F.check(b)
    return F.mul(a, b)


def fe_inv(F: ExplicitField, a: FieldElement) -> FieldElement:
    F.check(a)
    return F.inv(a)


def fe_pow(F: ExplicitField, a: FieldElement, e: int) -> FieldElement:
    F.check(a)
    return F.pow(a, e)


def fe_frobenius(F: ExplicitField, a: FieldElement, j: int = 1) -> FieldElement:
    F.check(a)
    return F.frobenius(a, j)


# ---------------------------------------------------------------------------
# field description files


def format_field(F: ExplicitField) -> str:
    return f"{F.p}\n{F.n}\npoly " + " ".join(str(c) for c in F.modulus) + "\n"


def parse_field(lines: Sequence[str]) -> tuple[ExplicitField, int]:
    """Parse a field description; returns the field and the number of lines used."""
    it = [ln.strip() for ln in lines]
    pos = 0

    def next_line():
        nonlocal pos
        while pos < len(it) and (not it[pos] or it[pos].startswith("#")):
            pos += 1
        if pos >= len(it):
            raise FieldError("truncated field description")
        pos += 1
        return it[pos - 1]

    p = int(next_line())
    n = int(next_line())
    head = next_line().split()
    if head[0] == "poly":
        return field_create(p, n, ("poly", [int(c) for c in head[1:]])), pos
    if head[0] == "table":
        entries = [int(c) for c in head[1:]]
        while len(entries) < n**3:
            entries.extend(int(c) for c in next_line().split())
        return field_create(p, n, ("table", entries)), pos
    raise FieldError(f"expected 'poly' or 'table', got {head[0]!r}")


def read_field_file(path: str | Path) -> ExplicitField:
    return parse_field(Path(path).read_text().splitlines())[0]
