"""Field layer: moduli, arithmetic, towers, embeddings."""

import numpy as np
import pytest

import planar2 as p2
from planar2.fields import is_irreducible, vec_frob, vec_mul, vec_pow


def _divides(d: int, p: int) -> bool:
    dd = d.bit_length() - 1
    while p.bit_length() - 1 >= dd and p:
        p ^= d << (p.bit_length() - 1 - dd)
    return p == 0


def _irreducible_naive(p: int, n: int) -> bool:
    if p.bit_length() - 1 != n:
        return False
    return all(not _divides(d, p) for d in range(2, 1 << (n // 2 + 1)))


# frozen from the naive trial-division oracle above
KNOWN_MODULI = {1: 0x3, 2: 0x7, 3: 0xB, 4: 0x13, 5: 0x25, 6: 0x43,
                7: 0x83, 8: 0x11B, 9: 0x203, 10: 0x409, 11: 0x805, 12: 0x1009}


def test_smallest_irreducible_matches_naive_oracle():
    for n in range(1, 11):
        best = min(x for x in range((1 << n) + 1, 1 << (n + 1), 2)
                   if _irreducible_naive(x, n))
        assert p2.smallest_irreducible(n) == best


def test_known_moduli_frozen():
    for n, mod in KNOWN_MODULI.items():
        assert p2.smallest_irreducible(n) == mod
        assert is_irreducible(mod, n)


def test_equal_degree_fields_are_identical():
    assert p2.field(5) is p2.field(5)
    assert p2.FieldSpec(5) == p2.FieldSpec(5)


def test_gf8_hand_product():
    # x * x^2 = x^3 = x + 1 modulo x^3 + x + 1
    f8 = p2.field(3)
    assert f8.mul(0b010, 0b100) == 0b011


def test_identity_and_absorbing():
    f = p2.field(6)
    for a in range(64):
        assert f.mul(a, 1) == a
        assert f.mul(a, 0) == 0


def test_inverse_and_double_inverse_exhaustive():
    f = p2.field(8)
    for a in range(1, 256):
        assert f.mul(a, f.inv(a)) == 1
        assert f.inv(f.inv(a)) == a
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_pow_square_and_multiply_vs_naive():
    f = p2.field(5)
    for a in range(32):
        acc = 1
        for e in range(12):
            assert f.pow(a, e) == acc
            acc = f.mul(acc, a)


def test_frobenius_is_homomorphism_exhaustive_n6():
    f = p2.field(6)
    for a in range(64):
        fa = f.frob(a, 1)
        for b in range(64):
            assert f.frob(a ^ b, 1) == fa ^ f.frob(b, 1)
            assert f.frob(f.mul(a, b), 1) == f.mul(fa, f.frob(b, 1))


def test_frobenius_is_homomorphism_random_n16():
    f = p2.field(16)
    rng = np.random.default_rng(0)
    for _ in range(300):
        a, b = (int(v) for v in rng.integers(0, f.order, 2))
        assert f.frob(f.mul(a, b), 3) == f.mul(f.frob(a, 3), f.frob(b, 3))


def test_squaring_is_a_bijection():
    for n in (3, 4, 6):
        f = p2.field(n)
        assert len({f.sqr(a) for a in range(f.order)}) == f.order


def test_untabulated_field_agrees_with_tables():
    f = p2.field(10)
    raw = p2.FieldSpec(10)
    raw.exp = None  # force the shift-and-xor path
    rng = np.random.default_rng(1)
    for _ in range(200):
        a, b = (int(v) for v in rng.integers(0, 1024, 2))
        assert raw.mul(a, b) == f.mul(a, b)
        if a:
            assert raw.inv(a) == f.inv(a)
            assert raw.pow(a, 77) == f.pow(a, 77)
            assert raw.frob(a, 4) == f.frob(a, 4)


def test_fe_operators():
    f = p2.field(4)
    x = f.fe(0b0110)
    assert (x + x).bits == 0
    assert (x * 1).bits == x.bits
    assert (x / x).bits == 1
    assert (x ** 3) * x == x ** 4
    assert x ** -1 == x.inv()
    assert bool(f.zero) is False
    with pytest.raises(ValueError):
        x + p2.field(5).fe(1)


def test_fe_hex_roundtrip():
    f = p2.field(12)
    x = f.fe(0xABC)
    assert p2.fe_from_hex(x.to_hex(), f) == x


# -- towers ---------------------------------------------------------------


def test_tower_requires_matching_degrees():
    t = p2.tower(2, 3)
    assert t.spec.n == 6 and t.q == 4


def test_frobq_fixes_subfield_and_has_order_k():
    t = p2.tower(2, 3)
    sub = t.subfield_members()
    assert len(sub) == 4
    for c in sub:
        assert t.frobq(c) == c
    for x in t.elements():
        assert t.frobq(x, t.k) == x


def test_rel_trace_and_norm_land_in_subfield():
    for (m, k) in ((2, 2), (2, 3), (1, 4), (3, 2)):
        t = p2.tower(m, k)
        for x in t.elements():
            assert t.in_base(t.rel_trace(x))
            assert t.in_base(t.rel_norm(x))


def test_rel_trace_gf4_over_gf2_omega():
    # omega + omega^2 = 1
    t = p2.tower(1, 2)
    assert t.rel_trace(t.fe(0b10)).bits == 1
    assert t.rel_trace(t.spec.zero).bits == 0


def test_rel_trace_is_base_linear():
    t = p2.tower(2, 2)
    rng = np.random.default_rng(2)
    sub = sorted(t.subfield_members(), key=lambda e: e.bits)
    for _ in range(100):
        x = t.fe(int(rng.integers(0, 16)))
        y = t.fe(int(rng.integers(0, 16)))
        c = sub[int(rng.integers(0, 4))]
        assert t.rel_trace(x + y) == t.rel_trace(x) + t.rel_trace(y)
        assert t.rel_trace(c * x) == c * t.rel_trace(x)


def test_subfield_constant_trace_parity():
    # trace of a subfield constant is k*c in characteristic 2
    todd, teven = p2.tower(2, 3), p2.tower(2, 2)
    for c in todd.subfield_members():
        assert todd.rel_trace(c) == c
    for c in teven.subfield_members():
        assert teven.rel_trace(c).bits == 0


def test_normal_element_gf4():
    t = p2.tower(1, 2)
    assert t.normal_element.bits == 2  # 1 is rejected: its orbit is constant


def test_normal_element_orbit_independent():
    for (m, k) in ((2, 2), (2, 3), (2, 4), (1, 5)):
        t = p2.tower(m, k)
        xi = t.normal_element
        orbit = [t.frobq(xi, j) for j in range(k)]
        # exhaustive independence check over subfield combinations
        sub = sorted(t.subfield_members(), key=lambda e: e.bits)
        seen = set()
        import itertools
        for combo in itertools.product(sub, repeat=k):
            acc = t.spec.zero
            for c, o in zip(combo, orbit):
                acc = acc + c * o
            seen.add(acc.bits)
        assert len(seen) == t.spec.order


def test_mu_set_size_and_membership():
    t = p2.tower(2, 2)
    mu = t.mu_set()
    assert len(mu) == 5  # (q^2-1)/(q-1) at q=4
    assert t.fe(1) in mu
    t3 = p2.tower(2, 3)
    assert len(t3.mu_set()) == (64 - 1) // 3


def test_base_embedding_is_field_homomorphism():
    t = p2.tower(3, 2)
    base = t.base_field()
    for a in range(8):
        for b in range(8):
            xa, xb = base.fe(a), base.fe(b)
            assert t.embed_base(xa * xb) == t.embed_base(xa) * t.embed_base(xb)
            assert t.embed_base(xa + xb) == t.embed_base(xa) + t.embed_base(xb)
            assert t.project_base(t.embed_base(xa)) == xa
    with pytest.raises(ValueError):
        t.project_base(t.fe(next(b for b in range(64)
                                 if t.spec.frob(b, 3) != b)))


def test_tower_json_roundtrip():
    from planar2.fields import tower_from_json

    t = p2.tower(2, 3)
    assert tower_from_json(t.to_json()) == t
    d = t.to_json()
    assert d == {"n": 6, "modulus": "43", "m": 2, "k": 3}


# -- vector helpers ---------------------------------------------------------


def test_vec_helpers_match_scalar_ops():
    f = p2.field(6)
    xs = np.arange(64, dtype=np.int64)
    rng = np.random.default_rng(3)
    ys = rng.integers(0, 64, 64).astype(np.int64)
    vm = vec_mul(f, xs, ys)
    vf = vec_frob(f, xs, 2)
    vp = vec_pow(f, xs, 9)
    for i in range(64):
        assert vm[i] == f.mul(int(xs[i]), int(ys[i]))
        assert vf[i] == f.frob(int(xs[i]), 2)
        assert vp[i] == f.pow(int(xs[i]), 9)


def test_pow_table_matches_scalar():
    f = p2.field(5)
    for e in (0, 1, 3, 9, 40):
        tbl = f.pow_table(e)
        for x in range(32):
            assert tbl[x] == f.pow(x, e)
