"""Planar functions over GF(2^n): predicates, criteria, families, sweeps.

f is planar when x -> f(x+a) + f(x) + a*x permutes the field for every
nonzero a. For quadratic f written in Dembowski-Ostrom form (every
exponent a sum of two powers of 2) that map differs from the GF(2)-linear
map x -> f(x+a) + f(x) + f(a) + a*x only by a constant, so planarity has
two independent tests:

  * is_planar_bruteforce - mark image values per a (hot kernel), and
  * is_planar_linearized - full GF(2)-rank of the linear map per a.

For coefficient families with exponents 2^(jm+i) + 2^i there is a third,
equivalent test: a single equation having no nonzero root, implemented by
planar_criterion_k2/k3/k4 for towers of degree 2, 3 and 4.

Family constructors cover the four parameterized families over GF(q^2),
GF(q^3), GF(q^4) plus the known monomial/binomial families and the
quadratic companion of the binary-semifield product. Exhaustive audits
sweep parameter or coefficient spaces; converse sweeps report extras
instead of asserting their absence, since the necessity direction of the
family characterizations is asymptotic in m.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import kernels
from .fields import BudgetError, Fe, TowerView, vec_frob, vec_mul

PLANAR_ENUM_LIMIT = 1 << 20  # brute-force planarity refuses larger fields

FAMILIES = ("P1", "P2", "P3", "P4a", "P4b",
            "SZ-monomial", "SZ-generalized", "ScherrZieve",
            "Hu2", "Hu3", "Knuth")


# ---------------------------------------------------------------------------
# Dembowski-Ostrom polynomials
# ---------------------------------------------------------------------------

class DOPoly:
    """sum c * x^(2^u + 2^v) with 0 <= u, v < n (u = v gives c * x^(2^(u+1))).

    Terms are normalized: exponents reduced modulo 2^n - 1 as functions on
    the field (a zero residue of a positive exponent stays at 2^n - 1,
    never x^0), duplicates merged by coefficient addition, zero
    coefficients dropped.
    """

    __slots__ = ("tower", "terms")

    def __init__(self, tower: TowerView, terms):
        spec = tower.spec
        n = spec.n
        p1 = spec.order - 1
        merged: dict[int, tuple[int, int, int]] = {}
        prepared = []
        for coeff, u, v in terms:
            cb = coeff.bits if isinstance(coeff, Fe) else int(coeff)
            if isinstance(coeff, Fe):
                tower._own(coeff)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"exponent pair ({u},{v}) out of range for n={n}")
            u, v = min(u, v), max(u, v)
            prepared.append((cb, u, v))
        for cb, u, v in sorted(prepared, key=lambda t: (t[1], t[2])):
            e = ((1 << u) + (1 << v)) % p1 if p1 > 1 else 1
            if e == 0:
                e = p1
            if e in merged:
                old, ou, ov = merged[e]
                merged[e] = (old ^ cb, ou, ov)
            else:
                merged[e] = (cb, u, v)
        self.tower = tower
        self.terms = tuple((e, cb, u, v) for e, (cb, u, v) in sorted(merged.items())
                           if cb != 0)

    @property
    def spec(self):
        return self.tower.spec

    def is_zero(self) -> bool:
        return not self.terms

    def coeff_at(self, u: int, v: int) -> Fe:
        u, v = min(u, v), max(u, v)
        p1 = self.spec.order - 1
        e = ((1 << u) + (1 << v)) % p1 if p1 > 1 else 1
        if e == 0:
            e = p1
        for te, cb, _, _ in self.terms:
            if te == e:
                return Fe(cb, self.spec)
        return self.spec.zero

    def exponent_pairs(self) -> set[tuple[int, int]]:
        return {(u, v) for _, _, u, v in self.terms}

    def eval(self, x: Fe) -> Fe:
        self.tower._own(x)
        spec = self.spec
        acc = 0
        for e, cb, _, _ in self.terms:
            acc ^= spec.mul(cb, spec.pow(x.bits, e))
        return Fe(acc, spec)

    def value_table(self) -> np.ndarray:
        spec = self.spec
        acc = np.zeros(spec.order, dtype=np.int64)
        for e, cb, _, _ in self.terms:
            acc ^= vec_mul(spec, cb, spec.pow_table(e))
        return acc

    def __eq__(self, other):
        return (isinstance(other, DOPoly) and other.tower == self.tower
                and other.terms == self.terms)

    def __repr__(self):
        if not self.terms:
            return "DOPoly(0)"
        parts = [f"{cb:x}*x^(2^{u}+2^{v})" for _, cb, u, v in self.terms]
        return "DOPoly(" + " + ".join(parts) + f") over {self.tower!r}"

    def spec_string(self) -> str:
        return ";".join(f"({cb:x},{u},{v})" for _, cb, u, v in self.terms)

    @classmethod
    def parse(cls, s: str, tower: TowerView) -> "DOPoly":
        """Parse "(coeff_hex,u,v);(coeff_hex,u,v);..." (empty = zero)."""
        s = s.strip()
        terms = []
        if s:
            for chunk in s.split(";"):
                chunk = chunk.strip()
                if not (chunk.startswith("(") and chunk.endswith(")")):
                    raise ValueError(f"bad term {chunk!r}; expected (coeff_hex,u,v)")
                parts = [p.strip() for p in chunk[1:-1].split(",")]
                if len(parts) != 3:
                    raise ValueError(f"bad term {chunk!r}; expected (coeff_hex,u,v)")
                terms.append((int(parts[0], 16), int(parts[1]), int(parts[2])))
        return cls(tower, terms)

    def to_json(self) -> list[dict]:
        return [{"coeff": f"{cb:x}", "u": u, "v": v} for _, cb, u, v in self.terms]


# ---------------------------------------------------------------------------
# Planarity predicates
# ---------------------------------------------------------------------------

def is_planar_bruteforce(f: DOPoly, budget: int = PLANAR_ENUM_LIMIT) -> bool:
    """Definition test: every difference map hits every value exactly once."""
    spec = f.spec
    if spec.order > budget:
        raise BudgetError(f"field of size 2^{spec.n} exceeds the planarity budget {budget}")
    return kernels.planar_check_table(spec, f.value_table())


def _gf2_rank(rows: list[int]) -> int:
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        while row:
            top = row.bit_length() - 1
            if top not in pivots:
                pivots[top] = row
                rank += 1
                break
            row ^= pivots[top]
    return rank


def is_planar_linearized(f: DOPoly) -> bool:
    """Rank test: the linear part of each difference map must be bijective."""
    spec = f.spec
    if spec.order > PLANAR_ENUM_LIMIT:
        raise BudgetError(f"field of size 2^{spec.n} exceeds the planarity budget")
    fv = f.value_table()
    n = spec.n
    for a in range(1, spec.order):
        fa = int(fv[a])
        rows = []
        for i in range(n):
            b = 1 << i
            rows.append(int(fv[b ^ a]) ^ fa ^ int(fv[b]) ^ spec.mul(a, b))
        if _gf2_rank(rows) < n:
            return False
    return True


# ---------------------------------------------------------------------------
# No-root criteria for gapped coefficient shapes (towers of degree 2, 3, 4)
# ---------------------------------------------------------------------------

def _coeff_bits(c, t: TowerView, length: int, what: str) -> list[int]:
    out = []
    for x in c:
        if isinstance(x, Fe):
            t._own(x)
            out.append(x.bits)
        else:
            out.append(int(x))
    if len(out) != length:
        raise ValueError(f"{what} expects {length} coefficients, got {len(out)}")
    return out


def criterion_table_k2(c, t: TowerView) -> np.ndarray:
    """Values (per x) whose nonvanishing on x != 0 is planarity for the
    shape f = sum_i c_i x^(2^(m+i) + 2^i) over GF(q^2)."""
    if t.k != 2:
        raise ValueError("degree-2 criterion needs a tower with k=2")
    m, n, spec = t.m, t.spec.n, t.spec
    cb = _coeff_bits(c, t, m, "criterion_table_k2")
    xs = np.arange(spec.order, dtype=np.int64)
    acc = spec.pow_table((1 << m) + 1).copy()
    for i, ci in enumerate(cb):
        if ci == 0:
            continue
        cx = vec_mul(spec, ci, xs)
        acc ^= vec_frob(spec, cx, (m - i + 1) % n)
        acc ^= vec_frob(spec, cx, (2 * m - i + 1) % n)
    return acc


def planar_criterion_k2(c, t: TowerView) -> bool:
    vals = criterion_table_k2(c, t)
    return not bool(np.any(vals[1:] == 0))


def criterion_table_k3(c1, c2, t: TowerView) -> np.ndarray:
    """Same for f = sum c1_i x^(2^(m+i)+2^i) + sum c2_i x^(2^(2m+i)+2^i)
    over GF(q^3)."""
    if t.k != 3:
        raise ValueError("degree-3 criterion needs a tower with k=3")
    m, n, spec = t.m, t.spec.n, t.spec
    c1b = _coeff_bits(c1, t, 2 * m, "criterion_table_k3 first block")
    c2b = _coeff_bits(c2, t, m, "criterion_table_k3 second block")
    xs = np.arange(spec.order, dtype=np.int64)
    a2 = np.zeros(spec.order, dtype=np.int64)
    for i, ci in enumerate(c2b):
        if ci:
            a2 ^= vec_frob(spec, vec_mul(spec, ci, xs), (3 * m - i) % n)
    for i, ci in enumerate(c1b):
        if ci:
            a2 ^= vec_frob(spec, vec_mul(spec, ci, xs), (2 * m - i) % n)
    inner = vec_mul(spec, vec_frob(spec, xs, m), vec_mul(spec, a2, a2))
    tr = inner ^ vec_frob(spec, inner, m) ^ vec_frob(spec, inner, 2 * m)
    return spec.pow_table((1 << (2 * m)) + (1 << m) + 1) ^ tr


def planar_criterion_k3(c1, c2, t: TowerView) -> bool:
    vals = criterion_table_k3(c1, c2, t)
    return not bool(np.any(vals[1:] == 0))


def criterion_table_k4(c1, c2, c3, t: TowerView) -> np.ndarray:
    """Same for f = sum c1_i x^(2^i(q+1)) + sum c2_i x^(2^i(q^2+1)) +
    sum c3_i x^(2^i(q^3+1)) over GF(q^4)."""
    if t.k != 4:
        raise ValueError("degree-4 criterion needs a tower with k=4")
    m, n, spec = t.m, t.spec.n, t.spec
    c1b = _coeff_bits(c1, t, 3 * m, "criterion_table_k4 first block")
    c2b = _coeff_bits(c2, t, 2 * m, "criterion_table_k4 second block")
    c3b = _coeff_bits(c3, t, m, "criterion_table_k4 third block")
    xs = np.arange(spec.order, dtype=np.int64)

    a2 = np.zeros(spec.order, dtype=np.int64)
    for i, ci in enumerate(c2b):
        if ci:
            cx = vec_mul(spec, ci, xs)
            a2 ^= vec_frob(spec, cx, (4 * m - i) % n)
            a2 ^= vec_frob(spec, cx, (2 * m - i) % n)
    a3 = np.zeros(spec.order, dtype=np.int64)
    for i, ci in enumerate(c3b):
        if ci:
            a3 ^= vec_frob(spec, vec_mul(spec, ci, xs), (4 * m - i) % n)
    for i, ci in enumerate(c1b):
        if ci:
            a3 ^= vec_frob(spec, vec_mul(spec, ci, xs), (3 * m - i) % n)

    sq = lambda v: vec_frob(spec, v, 1)
    a2q = vec_frob(spec, a2, m)
    a2sq = vec_mul(spec, a2, a2)
    acc = spec.pow_table((1 << 3 * m) + (1 << 2 * m) + (1 << m) + 1).copy()
    acc ^= sq(vec_mul(spec, a2, a2q))                                   # A2^(2q+2)
    t3 = sq(vec_mul(spec, a3, vec_frob(spec, a3, 2 * m)))               # A3^(2q^2+2)
    acc ^= t3
    acc ^= vec_frob(spec, t3, m)                                        # A3^(2q^3+2q)
    acc ^= vec_mul(spec, spec.pow_table((1 << 2 * m) + 1), vec_frob(spec, a2sq, m))
    acc ^= vec_mul(spec, spec.pow_table((1 << 3 * m) + (1 << m)), a2sq)
    trv = vec_mul(spec, spec.pow_table((1 << 2 * m) + (1 << m)), vec_mul(spec, a3, a3))
    acc ^= trv ^ vec_frob(spec, trv, m) ^ vec_frob(spec, trv, 2 * m) ^ vec_frob(spec, trv, 3 * m)
    return acc


def planar_criterion_k4(c1, c2, c3, t: TowerView) -> bool:
    vals = criterion_table_k4(c1, c2, c3, t)
    return not bool(np.any(vals[1:] == 0))


def criterion_lists(f: DOPoly):
    """Map a DOPoly onto the criterion coefficient blocks, if its shape fits.

    Terms where both exponents coincide are additive and never change
    planarity, so they are skipped. Returns None when some term's exponent
    gap is not a multiple of m (the criteria do not cover that shape).
    """
    t = f.tower
    m, k = t.m, t.k
    if k not in (2, 3, 4):
        return None
    blocks = {j: [0] * ((k - j) * m) for j in range(1, k)}
    for _, cb, u, v in f.terms:
        if u == v:
            continue
        gap = v - u
        if gap % m != 0:
            return None
        j = gap // m
        if not (1 <= j <= k - 1) or u >= (k - j) * m:
            return None
        blocks[j][u] ^= cb
    return [blocks[j] for j in range(1, k)]


def planar_by_criterion(f: DOPoly):
    """Criterion verdict for f, or None when the shape is not covered."""
    lists = criterion_lists(f)
    if lists is None:
        return None
    t = f.tower
    if t.k == 2:
        return planar_criterion_k2(lists[0], t)
    if t.k == 3:
        return planar_criterion_k3(lists[0], lists[1], t)
    return planar_criterion_k4(lists[0], lists[1], lists[2], t)


# ---------------------------------------------------------------------------
# Coefficient families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilyParams:
    family: str
    params: tuple
    tower: TowerView


def _require(cond: bool, message: str):
    if not cond:
        raise ValueError(message)


def family_coeffs(p: FamilyParams) -> DOPoly:
    """Concrete polynomial for admissible family parameters."""
    t = p.tower
    m = t.m
    fam = p.family
    if fam == "P1":
        _require(t.k == 2, "P1 lives on a k=2 tower")
        (s,) = p.params
        nrm = t.rel_norm(s)
        _require(nrm != 1, "P1 needs s with s^(1+q) != 1")
        a = t.frobq(s) / (1 + nrm)
        return DOPoly(t, [(a, 0, m)])
    if fam == "P2":
        _require(t.k == 3, "P2 lives on a k=3 tower")
        u, v = p.params
        uq, uq2 = t.frobq(u), t.frobq(u, 2)
        vq, vq2 = t.frobq(v), t.frobq(v, 2)
        delta = u * vq + uq * vq2 + uq2 * v + t.rel_norm(u) + t.rel_norm(v)
        _require(delta != 1, "P2 needs (u,v) with Delta != 1")
        den = 1 + delta
        a = (vq + uq * uq2 + uq2 * v * vq) / den
        b = (uq2 * vq) / den
        c = (vq * vq2 + uq2 + u * uq2 * vq) / den
        return DOPoly(t, [(a, 0, m), (b, m, 2 * m), (c, 0, 2 * m)])
    if fam == "P3":
        _require(t.k == 3, "P3 lives on a k=3 tower")
        (a,) = p.params
        return DOPoly(t, [(a, 1, m + 1), (t.frobq(a), 1, 2 * m + 1)])
    if fam == "P4a":
        _require(t.k == 4, "P4a lives on a k=4 tower")
        (s1,) = p.params
        w = s1 * t.frobq(s1, 2)
        _require(w != 1, "P4a needs s1 with s1^(1+q^2) != 1")
        b = t.frobq(s1, 2) / (1 + w)
        return DOPoly(t, [(b, 0, 2 * m)])
    if fam == "P4b":
        _require(t.k == 4, "P4b lives on a k=4 tower")
        (s2,) = p.params
        nrm = t.rel_norm(s2)
        _require(nrm != 1, "P4b needs s2 with s2^(1+q+q^2+q^3) != 1")
        den = 1 + nrm
        s2q, s2q2, s2q3 = t.frobq(s2), t.frobq(s2, 2), t.frobq(s2, 3)
        a = (s2q * s2q2 * s2q3) / den
        b = (s2q2 * s2q3) / den
        c = s2q3 / den
        return DOPoly(t, [(a, 0, m), (b, 0, 2 * m), (c, 0, 3 * m)])
    if fam == "SZ-monomial":
        _require(t.k == 2, "the monomial family lives on a k=2 tower")
        (c,) = p.params
        _require(bool(c) and t.in_base(c), "monomial family needs c in GF(q)*")
        _require(t.abs_trace_base(c) == 0, "monomial family needs trace-zero c")
        return DOPoly(t, [(c, 0, m)])
    if fam == "SZ-generalized":
        _require(t.k == 2, "the generalized monomial family lives on a k=2 tower")
        (c,) = p.params
        _require(bool(c), "generalized monomial family needs c != 0")
        _require(t.abs_trace_base(t.rel_norm(c)) == 0,
                 "generalized monomial family needs trace-zero c^(1+q)")
        return DOPoly(t, [(c, 0, m)])
    if fam == "ScherrZieve":
        _require(t.k == 3, "this monomial family lives on a k=3 tower")
        _require(m % 2 == 0, "this monomial family needs m even")
        (c,) = p.params
        e = (1 << 2 * m) + (1 << m) + 1
        _require(c ** e == 1, "needs c^(q^2+q+1) = 1")
        _require(c ** (e // 3) != 1, "needs c^((q^2+q+1)/3) != 1")
        return DOPoly(t, [(c, m, 2 * m)])
    if fam == "Hu2":
        _require(t.k == 3, "this binomial family lives on a k=3 tower")
        _require(m % 3 != 2, "this binomial family needs m != 2 (mod 3)")
        return DOPoly(t, [(1, 0, m), (1, m, 2 * m)])
    if fam == "Hu3":
        _require(t.k == 3, "this binomial family lives on a k=3 tower")
        _require(m % 3 != 1, "this binomial family needs m != 1 (mod 3)")
        return DOPoly(t, [(1, 0, 2 * m), (1, m, 2 * m)])
    if fam == "Knuth":
        _require(m == 1, "the binary-semifield companion is viewed over GF(2), m=1")
        n = t.k
        _require(n % 2 == 1, "the binary-semifield companion needs odd degree")
        terms = [(1, 0, 1), (1, 1, 1)] + [(1, 1, j) for j in range(2, n)]
        return DOPoly(t, terms)
    raise ValueError(f"unknown family tag {fam!r}; expected one of {FAMILIES}")


def family_param_space(fam: str, t: TowerView) -> list[FamilyParams]:
    """All admissible parameters, sorted by integer encoding."""
    spec = t.spec
    if fam == "P1":
        return [FamilyParams(fam, (x,), t) for x in spec.elements()
                if t.rel_norm(x) != 1]
    if fam == "P2":
        out = []
        for ub in range(spec.order):
            u = spec.fe(ub)
            uq, uq2 = t.frobq(u), t.frobq(u, 2)
            nu = t.rel_norm(u)
            for vb in range(spec.order):
                v = spec.fe(vb)
                delta = u * t.frobq(v) + uq * t.frobq(v, 2) + uq2 * v + nu + t.rel_norm(v)
                if delta != 1:
                    out.append(FamilyParams(fam, (u, v), t))
        return out
    if fam == "P3":
        return [FamilyParams(fam, (x,), t) for x in spec.elements()]
    if fam == "P4a":
        return [FamilyParams(fam, (x,), t) for x in spec.elements()
                if x * t.frobq(x, 2) != 1]
    if fam == "P4b":
        return [FamilyParams(fam, (x,), t) for x in spec.elements()
                if t.rel_norm(x) != 1]
    if fam == "SZ-monomial":
        return [FamilyParams(fam, (x,), t)
                for x in sorted(t.subfield_members(), key=lambda e: e.bits)
                if x and t.abs_trace_base(x) == 0]
    if fam == "SZ-generalized":
        return [FamilyParams(fam, (x,), t) for x in spec.elements()
                if x and t.abs_trace_base(t.rel_norm(x)) == 0]
    if fam == "ScherrZieve":
        if t.m % 2 != 0:
            raise ValueError("this monomial family needs m even")
        e = (1 << 2 * t.m) + (1 << t.m) + 1
        return [FamilyParams(fam, (x,), t) for x in spec.elements()
                if x and x ** e == 1 and x ** (e // 3) != 1]
    if fam in ("Hu2", "Hu3", "Knuth"):
        family_coeffs(FamilyParams(fam, (), t))  # validates the tower/m condition
        return [FamilyParams(fam, (), t)]
    raise ValueError(f"unknown family tag {fam!r}; expected one of {FAMILIES}")


_SHAPES = {
    "P1": lambda m: [(0, m), (1, m + 1)],
    "P2": lambda m: [(0, m), (m, 2 * m), (0, 2 * m)],
    "P3": lambda m: [(1, m + 1), (m + 1, 2 * m + 1), (1, 2 * m + 1)],
    "P4a": lambda m: [(0, m), (0, 2 * m), (0, 3 * m)],
    "P4b": lambda m: [(0, m), (0, 2 * m), (0, 3 * m)],
}


def family_shape(fam: str, t: TowerView) -> list[tuple[int, int]]:
    """Exponent pairs of the family's coefficient shape (sweep layout)."""
    if fam not in _SHAPES:
        raise ValueError(f"no coefficient-space shape for family {fam!r}")
    return _SHAPES[fam](t.m)


def family_tuple(fam: str, f: DOPoly, t: TowerView) -> tuple[int, ...]:
    return tuple(f.coeff_at(u, v).bits for u, v in family_shape(fam, t))


# ---------------------------------------------------------------------------
# The coefficient sets of the degree-2 monomial correspondence
# ---------------------------------------------------------------------------

def norm_trace_zero_set(t: TowerView) -> set[Fe]:
    """{c in GF(q^2) : absolute trace of c^(1+q) over GF(q) is 0}."""
    if t.k != 2:
        raise ValueError("needs a k=2 tower")
    return {x for x in t.elements() if t.abs_trace_base(t.rel_norm(x)) == 0}


def fraction_image_set(t: TowerView) -> set[Fe]:
    """{s^q / (1 + s^(1+q)) : s in GF(q^2), s^(1+q) != 1}."""
    if t.k != 2:
        raise ValueError("needs a k=2 tower")
    out = set()
    for s in t.elements():
        nrm = t.rel_norm(s)
        if nrm != 1:
            out.add(t.frobq(s) / (1 + nrm))
    return out


def fraction_map_two_to_one(t: TowerView) -> bool:
    """The map s -> s^q/(1+s^(1+q)) pairs s with s^(-q) and nothing else,
    over nonzero s outside the norm-1 subgroup."""
    if t.k != 2:
        raise ValueError("needs a k=2 tower")
    preimages: dict[int, list[Fe]] = {}
    domain = [s for s in t.elements() if s and t.rel_norm(s) != 1]
    for s in domain:
        img = t.frobq(s) / (1 + t.rel_norm(s))
        preimages.setdefault(img.bits, []).append(s)
    for group in preimages.values():
        if len(group) != 2:
            return False
        s, u = group
        if u != t.frobq(s.inv()) or s == u:
            return False
    return True


# ---------------------------------------------------------------------------
# Exhaustive audits
# ---------------------------------------------------------------------------

@dataclass
class AuditReport:
    family: str
    q: int
    k: int
    mode: str
    tested: int
    planar: list[tuple[int, ...]]
    extras: list[tuple[int, ...]]
    failures: list[tuple[int, ...]] = dc_field(default_factory=list)
    meta: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "family": self.family, "q": self.q, "k": self.k, "mode": self.mode,
            "tested": self.tested,
            "planar": [[f"{c:x}" for c in tup] for tup in self.planar],
            "extras": [[f"{c:x}" for c in tup] for tup in self.extras],
            "failures": [[f"{c:x}" for c in tup] for tup in self.failures],
            **self.meta,
        }

    def to_csv(self) -> str:
        width = max((len(t) for t in self.planar), default=0)
        header = ",".join(f"c{i}" for i in range(width))
        lines = [header] + [",".join(f"{c:x}" for c in tup) for tup in self.planar]
        return "\n".join(lines) + "\n"


def _sweep_mask(spec, exponents, rows: np.ndarray, threads: int) -> np.ndarray:
    if threads <= 1 or rows.shape[0] < 2048:
        return kernels.planar_sweep(spec, exponents, rows)
    chunks = np.array_split(rows, threads * 4)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda c: kernels.planar_sweep(spec, exponents, c), chunks))
    return np.concatenate(parts)


def family_audit(fam: str, t: TowerView, mode: str, budget: int = 1 << 22,
                 threads: int = 1) -> AuditReport:
    """Sufficiency: every admissible parameter must give a planar function.
    Converse: sweep the whole coefficient space of the family's shape and
    report planar tuples outside the family image (never assert absence)."""
    if mode not in ("sufficiency", "converse"):
        raise ValueError("mode must be 'sufficiency' or 'converse'")
    spec = t.spec
    report = AuditReport(fam, t.q, t.k, mode, 0, [], [])

    if mode == "sufficiency":
        params = family_param_space(fam, t)
        if len(params) > budget:
            raise BudgetError(f"{len(params)} parameters exceed the audit budget {budget}")
        polys = [family_coeffs(p) for p in params]
        if fam in _SHAPES:
            exponents = [((1 << u) + (1 << v)) for u, v in family_shape(fam, t)]
            rows = np.array([family_tuple(fam, f, t) for f in polys], dtype=np.int64)
            mask = _sweep_mask(spec, exponents, rows, threads) if len(rows) else np.zeros(0, bool)
            tuples = [tuple(int(c) for c in r) for r in rows]
        else:
            mask = np.array([is_planar_bruteforce(f) for f in polys], dtype=bool)
            tuples = [tuple(cb for _, cb, _, _ in f.terms) for f in polys]
        report.tested = len(polys)
        report.planar = [tup for tup, ok in zip(tuples, mask) if ok]
        report.failures = [tup for tup, ok in zip(tuples, mask) if not ok]
        return report

    shape = family_shape(fam, t)
    exponents = [((1 << u) + (1 << v)) for u, v in shape]
    width = len(shape)
    total = spec.order ** width
    if total > budget:
        raise BudgetError(f"coefficient space of size {total} exceeds the audit budget {budget}")
    in_family = {family_tuple(fam, family_coeffs(p), t) for p in family_param_space(fam, t)}
    planar: list[tuple[int, ...]] = []
    chunk = 1 << 18
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        rows = np.empty((idx.size, width), dtype=np.int64)
        rem = idx
        for col in range(width - 1, -1, -1):
            rows[:, col] = rem % spec.order
            rem = rem // spec.order
        mask = _sweep_mask(spec, exponents, rows, threads)
        planar.extend(tuple(int(c) for c in r) for r in rows[mask])
    report.tested = total
    report.planar = sorted(planar)
    report.extras = sorted(tup for tup in planar if tup not in in_family)
    return report


def offdiagonal_search(t: TowerView, support_size: int, budget: int = 1 << 22,
                       threads: int = 1) -> dict:
    """Sweep sparse coefficient vectors of the k=2 gapped shape
    f = sum_i c_i x^(2^(m+i)+2^i) and collect every planar vector whose
    support reaches past index 0 (candidate violations of the conjectured
    single-coefficient shape). An empty candidate list at this scale is
    evidence, not proof."""
    if t.k != 2:
        raise ValueError("the sparse-shape search needs a k=2 tower")
    if support_size > 3:
        raise ValueError("support_size is capped at 3")
    m, spec = t.m, t.spec
    support_size = min(support_size, m)
    nz = spec.order - 1
    total = sum(
        len(list(itertools.combinations(range(m), s))) * nz ** s
        for s in range(support_size + 1))
    if total > budget:
        raise BudgetError(f"{total} candidate vectors exceed the budget {budget}")

    planar_vectors: list[tuple[int, ...]] = []
    for s in range(support_size + 1):
        for positions in itertools.combinations(range(m), s):
            if s == 0:
                planar_vectors.append(tuple([0] * m))  # zero function is planar
                continue
            exponents = [(1 << (m + i)) + (1 << i) for i in positions]
            rows = np.array(list(itertools.product(range(1, spec.order), repeat=s)),
                            dtype=np.int64)
            mask = _sweep_mask(spec, exponents, rows, threads)
            for r in rows[mask]:
                vec = [0] * m
                for pos, cb in zip(positions, r):
                    vec[pos] = int(cb)
                planar_vectors.append(tuple(vec))
    planar_vectors.sort()
    off = [v for v in planar_vectors if any(c != 0 for c in v[1:])]
    in_shape = [v for v in planar_vectors if all(c == 0 for c in v[1:])]
    return {
        "m": m, "q": t.q, "support": support_size, "tested": total,
        "planar": planar_vectors, "candidates": off, "in_shape": in_shape,
    }
