"""Exact arithmetic in GF(2^n) and its tower views GF(q^k) with q = 2^m.

Field elements are n-bit integers in the polynomial basis (bit i is the
coefficient of x^i), wrapped in a small Fe value class for operator
syntax. Reduction is modulo a fixed degree-n irreducible polynomial over
GF(2); for each n we take the smallest irreducible by integer encoding,
so every run (and every serialized fixture) agrees on the representation.

Multiplication goes through log/antilog tables taken with respect to the
smallest generator of the multiplicative group. Fields with n > 20 skip
the tables and multiply by shift-and-xor; they support pointwise
arithmetic only, no enumeration.

A TowerView reads GF(2^{mk}) as the degree-k extension of GF(q), q = 2^m.
The q-Frobenius x -> x^q is m squarings, the relative trace and norm land
in the subfield {x : x^q = x}, and a normal basis {xi, xi^q, ...} is
located by scanning element encodings upward and testing the Moore
matrix for nonsingularity.
"""

from __future__ import annotations

import functools

import numpy as np

TABLE_LIMIT = 20  # log/exp tables kept up to 2^20 elements
ENUM_LIMIT = 24   # exhaustive element enumeration refused beyond 2^24


class BudgetError(RuntimeError):
    """An operation would exceed its stated enumeration budget."""


# ---------------------------------------------------------------------------
# GF(2)[x] on plain ints (bit i = coefficient of x^i)
# ---------------------------------------------------------------------------

def _gf2x_mul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _gf2x_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm and a:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def _gf2x_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _gf2x_mod(a, b)
    return a


def _gf2x_pow_frob(steps: int, m: int) -> int:
    """x^(2^steps) mod m, by repeated squaring in GF(2)[x]/m."""
    r = 0b10
    for _ in range(steps):
        r = _gf2x_mod(_gf2x_mul(r, r), m)
    return r


def _prime_factors(v: int) -> list[int]:
    out = []
    d = 2
    while d * d <= v:
        if v % d == 0:
            out.append(d)
            while v % d == 0:
                v //= d
        d += 1
    if v > 1:
        out.append(v)
    return out


def is_irreducible(p: int, n: int) -> bool:
    """Rabin test: p is irreducible of degree n over GF(2)."""
    if p.bit_length() - 1 != n or not (p & 1):
        return False
    if n == 1:
        return True
    if _gf2x_pow_frob(n, p) != 0b10:
        return False
    for r in _prime_factors(n):
        if _gf2x_gcd(_gf2x_pow_frob(n // r, p) ^ 0b10, p) != 1:
            return False
    return True


@functools.lru_cache(maxsize=None)
def smallest_irreducible(n: int) -> int:
    """Smallest (by integer encoding) irreducible of degree n over GF(2)."""
    p = (1 << n) | 1
    while not is_irreducible(p, n):
        p += 2
    return p


# ---------------------------------------------------------------------------
# Field of 2^n elements
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def field(n: int) -> "FieldSpec":
    """The canonical GF(2^n) (memoized; equal n means identical field)."""
    return FieldSpec(n)


class FieldSpec:
    """GF(2^n) with the canonical modulus for its degree.

    Use the module-level field(n) factory; direct construction always
    picks the same modulus, so two instances of equal n are
    interchangeable.
    """

    def __init__(self, n: int):
        if not 1 <= n <= 64:
            raise ValueError(f"extension degree n={n} out of supported range 1..64")
        self.n = n
        self.modulus = smallest_irreducible(n)
        self.order = 1 << n
        self._pow_tables: dict[int, np.ndarray] = {}
        if n <= TABLE_LIMIT:
            self._build_tables()
        else:
            self.generator = None
            self.exp = None
            self.log = None

    # -- table construction --------------------------------------------

    def _mul_raw(self, a: int, b: int) -> int:
        mask = self.order
        mod = self.modulus
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & mask:
                a ^= mod
        return r

    def _is_generator(self, g: int) -> bool:
        # g generates iff g^((N-1)/p) != 1 for every prime p | N-1
        p1 = self.order - 1
        for f in _prime_factors(p1):
            if self._pow_raw(g, p1 // f) == 1:
                return False
        return True

    def _pow_raw(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_raw(r, a)
            a = self._mul_raw(a, a)
            e >>= 1
        return r

    def _build_tables(self):
        p1 = self.order - 1
        if self.n == 1:
            g = 1
        else:
            g = 2
            while not self._is_generator(g):
                g += 1
        self.generator = g
        exp = np.zeros(2 * p1, dtype=np.int64)
        log = np.zeros(self.order, dtype=np.int64)
        v = 1
        for i in range(p1):
            exp[i] = v
            log[v] = i
            v = self._mul_raw(v, g)
        exp[p1:] = exp[:p1]
        self.exp = exp
        self.log = log

    # -- int-level arithmetic --------------------------------------------

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.exp is not None:
            return int(self.exp[self.log[a] + self.log[b]])
        return self._mul_raw(a, b)

    def sqr(self, a: int) -> int:
        return self.mul(a, a)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of 0 in GF(2^n)")
        if self.exp is not None:
            p1 = self.order - 1
            return int(self.exp[(p1 - self.log[a]) % p1])
        return self._pow_raw(a, self.order - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        if self.exp is not None:
            p1 = self.order - 1
            return int(self.exp[(self.log[a] * (e % p1)) % p1])
        return self._pow_raw(a, e)

    def frob(self, a: int, j: int) -> int:
        """a^(2^j); j is reduced modulo n."""
        j %= self.n
        if a == 0 or j == 0:
            return a
        if self.exp is not None:
            p1 = self.order - 1
            return int(self.exp[(self.log[a] << j) % p1])
        r = a
        for _ in range(j):
            r = self._mul_raw(r, r)
        return r

    # -- element/iteration helpers ---------------------------------------

    def fe(self, bits: int) -> "Fe":
        return Fe(bits, self)

    @property
    def zero(self) -> "Fe":
        return Fe(0, self)

    @property
    def one(self) -> "Fe":
        return Fe(1, self)

    def elements(self):
        if self.n > ENUM_LIMIT:
            raise BudgetError(f"enumeration of GF(2^{self.n}) exceeds the 2^{ENUM_LIMIT} budget")
        return (Fe(b, self) for b in range(self.order))

    def pow_table(self, e: int) -> np.ndarray:
        """x^e for every x, as an int64 array indexed by element bits."""
        if self.exp is None:
            raise BudgetError(f"no tables for GF(2^{self.n}); pointwise arithmetic only")
        t = self._pow_tables.get(e)
        if t is None:
            p1 = self.order - 1
            t = np.zeros(self.order, dtype=np.int64)
            er = e % p1
            t[1:] = self.exp[(self.log[1:] * er) % p1]
            if e == 0:
                t[0] = 1
            t.setflags(write=False)
            self._pow_tables[e] = t
        return t

    # -- identity & serialization ----------------------------------------

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and other.n == self.n

    def __hash__(self):
        return hash(("FieldSpec", self.n))

    def __repr__(self):
        return f"GF(2^{self.n}; mod=0x{self.modulus:x})"

    def to_json(self) -> dict:
        return {"n": self.n, "modulus": f"{self.modulus:x}"}


class Fe:
    """One element of a FieldSpec, addition = xor of bit patterns.

    Operators accept ints (interpreted as bit patterns of the same field)
    so formulas like 1 + s**(q + 1) read naturally.
    """

    __slots__ = ("bits", "spec")

    def __init__(self, bits: int, spec: FieldSpec):
        if not 0 <= bits < spec.order:
            raise ValueError(f"bits 0x{bits:x} out of range for {spec!r}")
        self.bits = bits
        self.spec = spec

    def _coerce(self, other) -> "Fe":
        if isinstance(other, Fe):
            if other.spec != self.spec:
                raise ValueError("mixed-field arithmetic: operands belong to different FieldSpecs")
            return other
        if isinstance(other, int):
            return Fe(other, self.spec)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fe(self.bits ^ o.bits, self.spec)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fe(self.spec.mul(self.bits, o.bits), self.spec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fe(self.spec.mul(self.bits, self.spec.inv(o.bits)), self.spec)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o.__truediv__(self)

    def __pow__(self, e: int):
        return Fe(self.spec.pow(self.bits, e), self.spec)

    def inv(self) -> "Fe":
        return Fe(self.spec.inv(self.bits), self.spec)

    def frob(self, j: int = 1) -> "Fe":
        """Absolute Frobenius power: self^(2^j)."""
        return Fe(self.spec.frob(self.bits, j), self.spec)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.bits == other
        return isinstance(other, Fe) and other.spec == self.spec and other.bits == self.bits

    def __hash__(self):
        return hash((self.bits, self.spec.n))

    def __bool__(self):
        return self.bits != 0

    def __index__(self):
        return self.bits

    def __repr__(self):
        return f"Fe(0x{self.bits:x}, n={self.spec.n})"

    def to_hex(self) -> str:
        return f"{self.bits:x}"


def fe_from_hex(s: str, spec: FieldSpec) -> Fe:
    return Fe(int(s, 16), spec)


# ---------------------------------------------------------------------------
# Vectorized helpers (int64 arrays of element bits)
# ---------------------------------------------------------------------------

def vec_mul(spec: FieldSpec, a, b) -> np.ndarray:
    """Elementwise field product of two bit-pattern arrays (broadcasting)."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    a, b = np.broadcast_arrays(a, b)
    out = np.zeros(a.shape, dtype=np.int64)
    nz = (a != 0) & (b != 0)
    out[nz] = spec.exp[spec.log[a[nz]] + spec.log[b[nz]]]
    return out


def vec_frob(spec: FieldSpec, a, j: int) -> np.ndarray:
    """Elementwise a^(2^j)."""
    j %= spec.n
    a = np.asarray(a, dtype=np.int64)
    if j == 0:
        return a.copy()
    p1 = spec.order - 1
    out = np.zeros(a.shape, dtype=np.int64)
    nz = a != 0
    out[nz] = spec.exp[(spec.log[a[nz]] << j) % p1]
    return out


def vec_sqr(spec: FieldSpec, a) -> np.ndarray:
    return vec_frob(spec, a, 1)


def vec_pow(spec: FieldSpec, a, e: int) -> np.ndarray:
    """Elementwise a^e for a fixed non-negative integer exponent."""
    a = np.asarray(a, dtype=np.int64)
    p1 = spec.order - 1
    out = np.zeros(a.shape, dtype=np.int64)
    nz = a != 0
    out[nz] = spec.exp[(spec.log[a[nz]] * (e % p1)) % p1]
    if e == 0:
        out[~nz] = 1
    return out


# ---------------------------------------------------------------------------
# Small exact linear algebra over a FieldSpec (rows of int bits)
# ---------------------------------------------------------------------------

def mat_det(spec: FieldSpec, rows: list[list[int]]) -> int:
    """Determinant by Gaussian elimination (exact; char 2 ignores signs)."""
    k = len(rows)
    a = [list(r) for r in rows]
    det = 1
    for col in range(k):
        piv = next((r for r in range(col, k) if a[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
        det = spec.mul(det, a[col][col])
        ipiv = spec.inv(a[col][col])
        a[col] = [spec.mul(v, ipiv) for v in a[col]]
        for r in range(col + 1, k):
            f = a[r][col]
            if f:
                a[r] = [a[r][c] ^ spec.mul(f, a[col][c]) for c in range(k)]
    return det


def mat_solve(spec: FieldSpec, rows: list[list[int]], rhs: list[int]) -> list[int]:
    """Solve A x = rhs over the field; raises ValueError on singular A."""
    k = len(rows)
    a = [list(r) + [v] for r, v in zip(rows, rhs)]
    for col in range(k):
        piv = next((r for r in range(col, k) if a[r][col]), None)
        if piv is None:
            raise ValueError("singular linear system over GF(2^n)")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
        ipiv = spec.inv(a[col][col])
        a[col] = [spec.mul(v, ipiv) for v in a[col]]
        for r in range(k):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [a[r][c] ^ spec.mul(f, a[col][c]) for c in range(k + 1)]
    return [a[r][k] for r in range(k)]


# ---------------------------------------------------------------------------
# Tower view GF(q^k) of GF(2^{mk})
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def tower(m: int, k: int) -> "TowerView":
    """GF(2^{mk}) viewed as the degree-k extension of GF(2^m) (memoized)."""
    return TowerView(m, k)


class TowerView:
    """GF(q^k) with q = 2^m, laid flat inside GF(2^{mk}).

    Immutable after construction; the normal element is computed once on
    first access and then frozen.
    """

    def __init__(self, m: int, k: int):
        if m < 1 or k < 1:
            raise ValueError("tower requires m >= 1 and k >= 1")
        self.m = m
        self.k = k
        self.q = 1 << m
        self.spec = field(m * k)
        self._normal = None
        self._embed = None

    # -- q-Frobenius, trace, norm ----------------------------------------

    def frobq(self, x: Fe, j: int = 1) -> Fe:
        """x^(q^j)."""
        self._own(x)
        return x.frob((j % self.k) * self.m)

    def rel_trace(self, x: Fe) -> Fe:
        self._own(x)
        acc = 0
        for j in range(self.k):
            acc ^= self.spec.frob(x.bits, j * self.m)
        return Fe(acc, self.spec)

    def rel_norm(self, x: Fe) -> Fe:
        self._own(x)
        acc = 1
        for j in range(self.k):
            acc = self.spec.mul(acc, self.spec.frob(x.bits, j * self.m))
        return Fe(acc, self.spec)

    def abs_trace_base(self, x: Fe) -> Fe:
        """Absolute trace GF(q) -> GF(2) of a subfield element, as 0 or 1."""
        self._own(x)
        if not self.in_base(x):
            raise ValueError("absolute base trace needs an element of the q-subfield")
        acc = 0
        for j in range(self.m):
            acc ^= self.spec.frob(x.bits, j)
        return Fe(acc, self.spec)

    def in_base(self, x: Fe) -> bool:
        return self.spec.frob(x.bits, self.m) == x.bits

    # -- subsets -----------------------------------------------------------

    def subfield_members(self) -> set[Fe]:
        """All x with x^q = x; exactly q of them."""
        self._enumerable()
        return {Fe(b, self.spec) for b in range(self.spec.order)
                if self.spec.frob(b, self.m) == b}

    def mu_set(self) -> set[Fe]:
        """Norm-1 elements {d : d^((q^k-1)/(q-1)) = 1}; size that quotient."""
        self._enumerable()
        e = (self.spec.order - 1) // (self.q - 1)
        return {Fe(b, self.spec) for b in range(1, self.spec.order)
                if self.spec.pow(b, e) == 1}

    def _enumerable(self):
        if self.spec.n > ENUM_LIMIT:
            raise BudgetError(
                f"enumeration of GF(2^{self.spec.n}) exceeds the 2^{ENUM_LIMIT} budget")

    def elements(self):
        return self.spec.elements()

    # -- normal basis --------------------------------------------------------

    @property
    def normal_element(self) -> Fe:
        """Smallest xi (by bit encoding) whose Frobenius orbit is a q-basis."""
        if self._normal is None:
            self._normal = self._find_normal()
        return self._normal

    def _find_normal(self) -> Fe:
        if self.k == 1:
            return Fe(1, self.spec)
        self._enumerable()
        for bits in range(2, self.spec.order):
            orbit = [self.spec.frob(bits, j * self.m) for j in range(self.k)]
            rows = [[self.spec.frob(orbit[j], i * self.m) for j in range(self.k)]
                    for i in range(self.k)]
            if mat_det(self.spec, rows) != 0:
                return Fe(bits, self.spec)
        raise RuntimeError("no normal element found (impossible for a finite field)")

    # -- base-field embedding -------------------------------------------------

    def base_field(self) -> FieldSpec:
        return field(self.m)

    def _embedding(self):
        if self._embed is None:
            base = self.base_field()
            root = None
            for cand in sorted(x.bits for x in self.subfield_members()):
                acc = 0
                p = base.modulus
                i = 0
                while p:
                    if p & 1:
                        acc ^= self.spec.pow(cand, i)
                    p >>= 1
                    i += 1
                if acc == 0:
                    root = cand
                    break
            assert root is not None, "base modulus must split in its own subfield"
            fwd = np.zeros(base.order, dtype=np.int64)
            powers = [self.spec.pow(root, i) for i in range(self.m)]
            for b in range(base.order):
                acc = 0
                for i in range(self.m):
                    if (b >> i) & 1:
                        acc ^= powers[i]
                fwd[b] = acc
            back = {int(v): i for i, v in enumerate(fwd)}
            self._embed = (fwd, back)
        return self._embed

    def embed_base(self, x: Fe) -> Fe:
        """Map an element of the standalone GF(q) into the q-subfield here."""
        if x.spec != self.base_field():
            raise ValueError("embed_base expects an element of the standalone base field")
        fwd, _ = self._embedding()
        return Fe(int(fwd[x.bits]), self.spec)

    def project_base(self, x: Fe) -> Fe:
        """Inverse of embed_base; requires x in the q-subfield."""
        self._own(x)
        _, back = self._embedding()
        if x.bits not in back:
            raise ValueError("element is not in the q-subfield")
        return Fe(back[x.bits], self.base_field())

    # -- misc -----------------------------------------------------------------

    def _own(self, x: Fe):
        if x.spec != self.spec:
            raise ValueError("element does not belong to this tower's field")

    def fe(self, bits: int) -> Fe:
        return Fe(bits, self.spec)

    def __repr__(self):
        return f"GF(({1 << self.m})^{self.k}) in GF(2^{self.spec.n})"

    def __eq__(self, other):
        return isinstance(other, TowerView) and (other.m, other.k) == (self.m, self.k)

    def __hash__(self):
        return hash(("TowerView", self.m, self.k))

    def to_json(self) -> dict:
        return {"n": self.spec.n, "modulus": f"{self.spec.modulus:x}",
                "m": self.m, "k": self.k}


def tower_from_json(d: dict) -> TowerView:
    t = tower(d["m"], d["k"])
    if t.spec.n != d["n"] or f"{t.spec.modulus:x}" != d["modulus"]:
        raise ValueError("serialized field does not match the canonical modulus")
    return t
