"""Hypersurface side of the planarity criteria.

Each supported coefficient shape has a companion polynomial G in k
variables over GF(q^k): substituting the Frobenius orbit
(eps, eps^q, ..., eps^(q^(k-1))) reproduces the single-variable criterion
value pointwise, so planarity is exactly "G has no zero on a nonzero
orbit". Reducibility of G explains which coefficients can be planar:
the relevant factorizations are products of Frobenius-conjugate linear
forms, which linear_factor_search recovers by exact division.

Via a normal basis the orbit substitution turns G into a polynomial over
GF(q) in k affine coordinates (specialize_normal); homogenizing and
counting projective points connects to the quantitative bound
rhs = (d-1)(d-2) q^(k-3/2) + 5 d^(13/3) q^(k-2) on the deviation of an
absolutely irreducible degree-d hypersurface from q^(k-1) points. The
fractional powers are rounded up in exact integer arithmetic so the
asserted inequality is conservative. Absolute irreducibility itself is
never decided here; langweil_check takes it as a caller-supplied
certificate.
"""

from __future__ import annotations

import math

import numpy as np

from .fields import BudgetError, Fe, FieldSpec, TowerView, vec_frob, vec_mul, vec_pow
from .planar import DOPoly, family_shape

COUNT_LIMIT = 1 << 24  # affine/projective enumeration budget (points)


# ---------------------------------------------------------------------------
# Dense-dict multivariate polynomials
# ---------------------------------------------------------------------------

class MvPoly:
    """Multivariate polynomial over a FieldSpec; terms map exponent tuples
    to nonzero coefficient bits."""

    __slots__ = ("spec", "nvars", "terms")

    def __init__(self, spec: FieldSpec, nvars: int, terms=None):
        clean: dict[tuple[int, ...], int] = {}
        for exps, cb in (terms or {}).items():
            cb = cb.bits if isinstance(cb, Fe) else int(cb)
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent tuple {exps} for {nvars} variables")
            if cb:
                prev = clean.get(exps, 0) ^ cb
                if prev:
                    clean[exps] = prev
                else:
                    clean.pop(exps, None)
        self.spec = spec
        self.nvars = nvars
        self.terms = clean

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, spec, nvars):
        return cls(spec, nvars, {})

    @classmethod
    def constant(cls, spec, nvars, c):
        return cls(spec, nvars, {tuple([0] * nvars): c})

    @classmethod
    def variable(cls, spec, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(spec, nvars, {tuple(e): 1})

    # -- ring operations ----------------------------------------------------

    def _compat(self, other: "MvPoly"):
        if self.spec != other.spec or self.nvars != other.nvars:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: "MvPoly") -> "MvPoly":
        self._compat(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) ^ c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MvPoly(self.spec, self.nvars, out)

    def __mul__(self, other: "MvPoly") -> "MvPoly":
        self._compat(other)
        spec = self.spec
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) ^ spec.mul(c1, c2)
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return MvPoly(spec, self.nvars, out)

    def scale(self, c) -> "MvPoly":
        cb = c.bits if isinstance(c, Fe) else int(c)
        spec = self.spec
        return MvPoly(spec, self.nvars,
                      {e: spec.mul(cb, v) for e, v in self.terms.items()})

    def __pow__(self, e: int) -> "MvPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = MvPoly.constant(self.spec, self.nvars, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        return (isinstance(other, MvPoly) and other.spec == self.spec
                and other.nvars == self.nvars and other.terms == self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    # -- substitution and evaluation -----------------------------------------

    def substitute(self, mapping: dict[int, "MvPoly"]) -> "MvPoly":
        """Simultaneously replace variables by polynomials (same ring)."""
        out = MvPoly.zero(self.spec, self.nvars)
        cache: dict[tuple[int, int], MvPoly] = {}
        for exps, cb in self.terms.items():
            term = MvPoly.constant(self.spec, self.nvars, cb)
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                if i in mapping:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = mapping[i] ** e
                    term = term * cache[key]
                else:
                    mono = MvPoly(self.spec, self.nvars,
                                  {tuple(e if j == i else 0 for j in range(self.nvars)): 1})
                    term = term * mono
            out = out + term
        return out

    def evaluate(self, point) -> int:
        spec = self.spec
        pt = [p.bits if isinstance(p, Fe) else int(p) for p in point]
        if len(pt) != self.nvars:
            raise ValueError("point arity does not match the variable count")
        acc = 0
        for exps, cb in self.terms.items():
            v = cb
            for x, e in zip(pt, exps):
                if e:
                    v = spec.mul(v, spec.pow(x, e))
                    if v == 0:
                        break
            acc ^= v
        return acc

    def evaluate_vec(self, columns: list[np.ndarray]) -> np.ndarray:
        """Evaluate on many points at once; columns[i] holds variable i."""
        spec = self.spec
        shape = columns[0].shape
        acc = np.zeros(shape, dtype=np.int64)
        for exps, cb in self.terms.items():
            v = np.full(shape, cb, dtype=np.int64)
            for col, e in zip(columns, exps):
                if e:
                    v = vec_mul(spec, v, vec_pow(spec, col, e))
            acc ^= v
        return acc

    # -- homogenization ---------------------------------------------------------

    def homogenize(self) -> "MvPoly":
        """Append one variable raising every term to the total degree."""
        d = self.degree()
        out = {e + (d - sum(e),): c for e, c in self.terms.items()}
        return MvPoly(self.spec, self.nvars + 1, out)

    # -- misc ---------------------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return "MvPoly(0)"
        names = "XYTSUVW"
        parts = []
        for exps, cb in sorted(self.terms.items(), reverse=True):
            mono = "".join(
                (names[i] if i < len(names) else f"X{i}") + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(exps) if e)
            parts.append((f"{cb:x}*" if cb != 1 or not mono else f"{cb:x}" if not mono else "") + mono)
        return "MvPoly(" + " + ".join(parts) + ")"

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "spec": self.spec.to_json(),
            "terms": [{"exp": list(e), "coeff": f"{c:x}"}
                      for e, c in sorted(self.terms.items())],
        }


# ---------------------------------------------------------------------------
# Linear forms
# ---------------------------------------------------------------------------

class LinearForm:
    """Homogeneous linear form, projectively normalized so the first
    nonzero coefficient is 1."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs):
        cb = [c.bits if isinstance(c, Fe) else int(c) for c in coeffs]
        lead = next((i for i, c in enumerate(cb) if c), None)
        if lead is None:
            raise ValueError("linear form must not be identically zero")
        if cb[lead] != 1:
            inv = spec.inv(cb[lead])
            cb = [spec.mul(inv, c) for c in cb]
        self.spec = spec
        self.coeffs = tuple(cb)

    @property
    def pivot(self) -> int:
        return next(i for i, c in enumerate(self.coeffs) if c)

    def to_mvpoly(self) -> MvPoly:
        n = len(self.coeffs)
        terms = {}
        for i, c in enumerate(self.coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        return MvPoly(self.spec, n, terms)

    def conjugate(self, t: TowerView) -> "LinearForm":
        """Coefficients raised to q, variables cyclically shifted."""
        k = len(self.coeffs)
        out = [0] * k
        for i, c in enumerate(self.coeffs):
            out[(i + 1) % k] = t.spec.frob(c, t.m)
        return LinearForm(self.spec, out)

    def __eq__(self, other):
        return (isinstance(other, LinearForm) and other.spec == self.spec
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((self.spec.n, self.coeffs))

    def __repr__(self):
        names = "XYTSUVW"
        parts = [f"{c:x}*{names[i]}" if c != 1 else names[i]
                 for i, c in enumerate(self.coeffs) if c]
        return "LinearForm(" + " + ".join(parts) + ")"


# ---------------------------------------------------------------------------
# Companion polynomials of the four supported shapes
# ---------------------------------------------------------------------------

def _detect_shape(f: DOPoly, t: TowerView) -> str:
    exps = f.exponent_pairs()
    if t.k == 2:
        return "P1"
    if t.k == 3:
        if exps <= set(family_shape("P2", t)):
            return "P2"
        if exps <= set(family_shape("P3", t)):
            return "P3"
        raise ValueError("k=3 polynomial fits neither supported trinomial shape")
    if t.k == 4:
        return "P4a"
    raise ValueError("companion polynomials exist for k in {2, 3, 4} only")


def build_G(f: DOPoly, t: TowerView, shape: str | None = None) -> MvPoly:
    """The k-variable companion polynomial of a supported-shape f."""
    if f.tower != t:
        raise ValueError("polynomial belongs to a different tower")
    if shape is None:
        shape = _detect_shape(f, t)
    if shape in ("P4a", "P4b"):
        shape_key = "P4a"
    else:
        shape_key = shape
    layout = family_shape(shape_key, t)
    if not f.exponent_pairs() <= set(layout):
        raise ValueError(f"polynomial does not match the {shape} coefficient shape")
    spec = t.spec
    fr = lambda x, j: spec.frob(x, (j % t.k) * t.m)
    sq = lambda x: spec.mul(x, x)
    mul = spec.mul

    if shape_key == "P1":
        a, b = (f.coeff_at(u, v).bits for u, v in layout)
        terms = {
            (1, 1): 1,
            (2, 0): sq(a), (0, 2): fr(sq(a), 1),
            (1, 0): b, (0, 1): fr(b, 1),
        }
        return MvPoly(spec, 2, terms)

    if shape_key == "P2":
        a, b, c = (f.coeff_at(u, v).bits for u, v in layout)
        a2, b2, c2 = sq(a), sq(b), sq(c)
        terms = {
            (3, 0, 0): b2, (0, 3, 0): fr(b2, 1), (0, 0, 3): fr(b2, 2),
            (2, 1, 0): c2, (0, 2, 1): fr(c2, 1), (1, 0, 2): fr(c2, 2),
            (2, 0, 1): a2, (1, 2, 0): fr(a2, 1), (0, 1, 2): fr(a2, 2),
            (1, 1, 1): 1,
        }
        return MvPoly(spec, 3, terms)

    if shape_key == "P3":
        a, b, c = (f.coeff_at(u, v).bits for u, v in layout)
        terms = {
            (1, 1, 0): c ^ fr(a, 1),
            (0, 1, 1): fr(c, 1) ^ fr(a, 2),
            (1, 0, 1): fr(c, 2) ^ a,
            (2, 0, 0): b, (0, 2, 0): fr(b, 1), (0, 0, 2): fr(b, 2),
            (1, 1, 1): 1,
        }
        return MvPoly(spec, 3, terms)

    # degree-4 trinomial shape
    a, b, c = (f.coeff_at(u, v).bits for u, v in layout)
    a2, b2, c2 = sq(a), sq(b), sq(c)
    terms = {
        (1, 1, 1, 1): 1,
        (2, 2, 0, 0): mul(b2, fr(b2, 1)) ^ mul(fr(a2, 1), c2),
        (2, 0, 0, 2): mul(b2, fr(b2, 3)) ^ mul(a2, fr(c2, 3)),
        (0, 2, 2, 0): mul(fr(b2, 1), fr(b2, 2)) ^ mul(fr(a2, 2), fr(c2, 1)),
        (0, 0, 2, 2): mul(fr(b2, 2), fr(b2, 3)) ^ mul(fr(a2, 3), fr(c2, 2)),
        (2, 0, 2, 0): mul(c2, fr(c2, 2)) ^ mul(a2, fr(a2, 2)),
        (0, 2, 0, 2): mul(fr(c2, 1), fr(c2, 3)) ^ mul(fr(a2, 1), fr(a2, 3)),
        (2, 1, 0, 1): b2, (1, 2, 1, 0): fr(b2, 1),
        (0, 1, 2, 1): fr(b2, 2), (1, 0, 1, 2): fr(b2, 3),
        (2, 1, 1, 0): c2, (0, 2, 1, 1): fr(c2, 1),
        (1, 0, 2, 1): fr(c2, 2), (1, 1, 0, 2): fr(c2, 3),
        (2, 0, 1, 1): a2, (1, 2, 0, 1): fr(a2, 1),
        (1, 1, 2, 0): fr(a2, 2), (0, 1, 1, 2): fr(a2, 3),
    }
    return MvPoly(spec, 4, terms)


# ---------------------------------------------------------------------------
# Orbit evaluation
# ---------------------------------------------------------------------------

def eval_orbit(G: MvPoly, t: TowerView, eps: Fe) -> Fe:
    """G(eps, eps^q, ..., eps^(q^(k-1)))."""
    if G.nvars != t.k:
        raise ValueError("orbit evaluation needs one variable per Frobenius power")
    point = [t.frobq(eps, j).bits for j in range(t.k)]
    return Fe(G.evaluate(point), t.spec)


def orbit_value_table(G: MvPoly, t: TowerView) -> np.ndarray:
    """Orbit values of G for every eps, indexed by bits."""
    if G.nvars != t.k:
        raise ValueError("orbit evaluation needs one variable per Frobenius power")
    xs = np.arange(t.spec.order, dtype=np.int64)
    cols = [vec_frob(t.spec, xs, j * t.m) for j in range(t.k)]
    return G.evaluate_vec(cols)


def orbit_has_zero(G: MvPoly, t: TowerView) -> bool:
    vals = orbit_value_table(G, t)
    return bool(np.any(vals[1:] == 0))


# ---------------------------------------------------------------------------
# Normal-basis specialization to GF(q)
# ---------------------------------------------------------------------------

def specialize_normal(G: MvPoly, t: TowerView) -> MvPoly:
    """Substitute the normal-basis coordinates and re-type over GF(q).

    Every supported companion polynomial specializes with subfield
    coefficients outright. For orbit-symmetric quadratics whose
    coefficients only satisfy c = a1 * c^q (norm-1 a1) the whole
    polynomial is first scaled by a solution of t0^(q-1) = a1. Anything
    else cannot happen for the supported inputs and raises.
    """
    if G.nvars != t.k:
        raise ValueError("specialization needs one variable per Frobenius power")
    spec = t.spec
    xi = t.normal_element.bits
    subs = {}
    for j in range(t.k):
        terms = {}
        for i in range(t.k):
            e = [0] * t.k
            e[i] = 1
            terms[tuple(e)] = spec.frob(xi, ((i + j) % t.k) * t.m)
        subs[j] = MvPoly(spec, t.k, terms)
    h = G.substitute(subs)

    def all_in_base(p: MvPoly) -> bool:
        return all(spec.frob(c, t.m) == c for c in p.terms.values())

    if not all_in_base(h) and not h.is_zero():
        ratios = {spec.mul(c, spec.inv(spec.frob(c, t.m))) for c in h.terms.values()}
        if len(ratios) == 1:
            a1 = ratios.pop()
            p1 = spec.order - 1
            l = int(spec.log[a1])
            if l % (t.q - 1) == 0:
                t0 = int(spec.exp[l // (t.q - 1)])
                h = h.scale(t0)
        if not all_in_base(h):
            raise RuntimeError(
                "specialized coefficients left GF(q); the input is outside the "
                "supported orbit-symmetric shapes (unscaled conjugate-pair case)")

    base = t.base_field()
    out = {e: t.project_base(Fe(c, spec)).bits for e, c in h.terms.items()}
    return MvPoly(base, t.k, out)


# ---------------------------------------------------------------------------
# Point counting
# ---------------------------------------------------------------------------

def _coordinate_columns(spec: FieldSpec, width: int) -> list[np.ndarray]:
    total = spec.order ** width
    idx = np.arange(total, dtype=np.int64)
    cols = []
    for col in range(width - 1, -1, -1):
        cols.append(idx % spec.order)
        idx = idx // spec.order
    cols.reverse()
    return cols


def count_points_affine(P: MvPoly, budget: int = COUNT_LIMIT) -> int:
    """Exact number of affine zeros over the coefficient field."""
    total = P.spec.order ** P.nvars
    if total > budget:
        raise BudgetError(f"affine enumeration of {total} points exceeds the budget")
    cols = _coordinate_columns(P.spec, P.nvars)
    vals = P.evaluate_vec(cols)
    return int(np.count_nonzero(vals == 0))


def count_points_projective(P: MvPoly, budget: int = COUNT_LIMIT) -> int:
    """Projective zeros of a homogeneous P, by normalized representatives
    (first nonzero coordinate = 1)."""
    if not P.is_homogeneous() or P.is_zero():
        raise ValueError("projective count needs a nonzero homogeneous polynomial")
    spec = P.spec
    v = P.nvars
    total = sum(spec.order ** (v - 1 - p) for p in range(v))
    if total > budget:
        raise BudgetError(f"projective enumeration of {total} points exceeds the budget")
    count = 0
    for p in range(v):
        free = v - 1 - p
        cols = _coordinate_columns(spec, free) if free else []
        shape = cols[0].shape if cols else ()
        point = [np.zeros(shape, dtype=np.int64) for _ in range(p)]
        point.append(np.ones(shape, dtype=np.int64))
        point.extend(cols)
        vals = P.evaluate_vec(point) if cols else np.array(P.evaluate([0] * p + [1]))
        count += int(np.count_nonzero(vals == 0))
    return count


# ---------------------------------------------------------------------------
# Linear-factor extraction
# ---------------------------------------------------------------------------

def divmod_linear(P: MvPoly, form: LinearForm) -> tuple[MvPoly, MvPoly]:
    """Exact division of P by a linear form; remainder has no pivot variable."""
    spec = P.spec
    piv = form.pivot
    rest = MvPoly(spec, P.nvars, {
        tuple(1 if j == i else 0 for j in range(P.nvars)): c
        for i, c in enumerate(form.coeffs) if c and i != piv})
    bydeg: dict[int, dict] = {}
    for exps, c in P.terms.items():
        d = exps[piv]
        reduced = tuple(0 if i == piv else e for i, e in enumerate(exps))
        bydeg.setdefault(d, {})[reduced] = c
    maxd = max(bydeg, default=0)
    coeffs = [MvPoly(spec, P.nvars, bydeg.get(d, {})) for d in range(maxd + 1)]
    carry = MvPoly.zero(spec, P.nvars)
    quot = MvPoly.zero(spec, P.nvars)
    for d in range(maxd, 0, -1):
        carry = carry + coeffs[d]
        mono = MvPoly(spec, P.nvars,
                      {tuple(d - 1 if i == piv else 0 for i in range(P.nvars)): 1})
        quot = quot + carry * mono
        carry = carry * rest
    rem = carry + coeffs[0]
    return quot, rem


def _candidate_matrix(spec: FieldSpec, nvars: int, pivot: int,
                      max_support: int) -> np.ndarray:
    """Normalized candidate coefficient rows for one pivot, sorted."""
    import itertools as it

    rows = []
    others = list(range(pivot + 1, nvars))
    for size in range(0, max_support):
        for positions in it.combinations(others, size):
            for values in it.product(range(1, spec.order), repeat=size):
                coeffs = [0] * nvars
                coeffs[pivot] = 1
                for pos, val in zip(positions, values):
                    coeffs[pos] = val
                rows.append(coeffs)
    return np.array(rows, dtype=np.int64).reshape(len(rows), nvars)


_PROBE_SEEDS = (1, 2, 3, 5, 7, 11, 13, 19)


def _probe_points(spec: FieldSpec, width: int) -> list[tuple[int, ...]]:
    """Deterministic assignments for the non-pivot coordinates."""
    pts = []
    for i in range(width):
        pts.append(tuple(1 if j == i else 0 for j in range(width)))
    mask = spec.order - 1
    for s in _PROBE_SEEDS:
        pts.append(tuple(((s * (j + 1) ** 2 + j) % mask) + 1 for j in range(width)))
    return pts


def linear_factor_search(G: MvPoly, max_support: int | None = None,
                         budget: int = 1 << 19) -> tuple[list[tuple[LinearForm, int]], MvPoly]:
    """Split off homogeneous linear factors with coefficients in G's field.

    For up to 3 variables every normalized form is tried. With 4 variables
    the default candidate set is limited to forms supported on at most two
    variables, which covers every linear factor the supported quartic
    companion polynomials can acquire from planar coefficients (their
    split types force two zero coefficients); pass max_support=4 to widen
    the sweep within the budget. Candidates are first screened by exact
    evaluation at deterministic points of their hyperplane (a true factor
    vanishes there identically, so no factor is ever screened out), then
    divided out exactly: the product of the returned factors times the
    remainder equals G.
    """
    spec = G.spec
    if max_support is None:
        max_support = G.nvars if G.nvars <= 3 else 2
    max_support = min(max_support, G.nvars)
    total = sum(
        sum(math.comb(G.nvars - 1 - piv, s) * (spec.order - 1) ** s
            for s in range(0, max_support))
        for piv in range(G.nvars))
    if total > budget:
        raise BudgetError(f"{total} candidate forms exceed the factor-search budget {budget}")
    factors: list[tuple[LinearForm, int]] = []
    work = G
    if G.is_zero() or G.degree() < 1:
        return factors, work
    for pivot in range(G.nvars):
        if work.degree() < 1:
            break
        cand = _candidate_matrix(spec, G.nvars, pivot, max_support)
        if cand.size == 0:
            continue
        alive = np.ones(cand.shape[0], dtype=bool)
        free = [i for i in range(G.nvars) if i != pivot]
        for pt in _probe_points(spec, len(free)):
            if not alive.any():
                break
            idx = np.nonzero(alive)[0]
            piv_col = np.zeros(idx.size, dtype=np.int64)
            for pos, val in zip(free, pt):
                if val:
                    piv_col ^= vec_mul(spec, cand[idx, pos], val)
            columns = []
            for i in range(G.nvars):
                if i == pivot:
                    columns.append(piv_col)
                else:
                    columns.append(np.full(idx.size, pt[free.index(i)], dtype=np.int64))
            vals = G.evaluate_vec(columns)
            alive[idx[vals != 0]] = False
        for row in cand[alive]:
            if work.degree() < 1:
                break
            form = LinearForm(spec, [int(c) for c in row])
            mult = 0
            while True:
                q, r = divmod_linear(work, form)
                if not r.is_zero():
                    break
                work = q
                mult += 1
            if mult:
                factors.append((form, mult))
    return factors, work


# ---------------------------------------------------------------------------
# Quantitative point-count bound
# ---------------------------------------------------------------------------

def _ceil_sqrt(v: int) -> int:
    s = math.isqrt(v)
    return s if s * s == v else s + 1


def _ceil_cbrt(v: int) -> int:
    c = round(v ** (1.0 / 3.0))
    while c ** 3 < v:
        c += 1
    while c >= 1 and (c - 1) ** 3 >= v:
        c -= 1
    return c


def langweil_rhs(d: int, k: int, q: int) -> int:
    """(d-1)(d-2) q^(k-3/2) + 5 d^(13/3) q^(k-2), rounded up exactly."""
    if k < 2:
        raise ValueError("the bound is stated for projective dimension k >= 2")
    t1 = (d - 1) * (d - 2) * q ** (k - 2) * _ceil_sqrt(q)
    t2 = 5 * _ceil_cbrt(d ** 13) * q ** (k - 2)
    return t1 + t2


def langweil_check(Phom: MvPoly, certified_irreducible: bool,
                   budget: int = COUNT_LIMIT) -> dict:
    """Compare the projective point count of a homogeneous hypersurface
    against the deviation bound. The bound is only asserted when the
    caller certifies absolute irreducibility (decided elsewhere); without
    the certificate both sides are reported, nothing asserted."""
    if not Phom.is_homogeneous() or Phom.is_zero():
        raise ValueError("the bound applies to nonzero homogeneous polynomials")
    q = Phom.spec.order
    k = Phom.nvars - 1
    d = Phom.degree()
    count = count_points_projective(Phom, budget)
    expected = q ** (k - 1)
    rhs = langweil_rhs(d, k, q)
    holds = abs(count - expected) <= rhs
    report = {
        "q": q, "k": k, "d": d,
        "count": count, "expected": expected, "rhs": rhs,
        "bound_holds": holds,
        "bound_vacuous": rhs >= expected,
        "certified_irreducible": bool(certified_irreducible),
    }
    if certified_irreducible and not holds:
        raise RuntimeError(
            f"certified-irreducible hypersurface violates the point-count bound: {report}")
    return report


def langweil_csv(reports: list[dict]) -> str:
    header = "q,k,d,count,rhs,certified"
    lines = [header] + [
        f"{r['q']},{r['k']},{r['d']},{r['count']},{r['rhs']},{int(r['certified_irreducible'])}"
        for r in reports]
    return "\n".join(lines) + "\n"
