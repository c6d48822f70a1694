import pytest
from itertools import product

from octo2.composition import (canonical_quaternion,
                               canonical_totally_singular, is_automorphism)
from octo2.involution import (BadR, NotInBhat, NotOrder2, NotQuaternion,
                              NotTotallySingular, ZeroB, aut_B, bhat,
                              bhat_structure, conjugacy_test,
                              extend_B_automorphism, find_admissible_r,
                              fixed_dimension, fixed_point_group,
                              fixed_report, fixed_subalgebra, invD_map,
                              make_type_I, make_type_II, r_normal_form,
                              type_I_family_generators)
from octo2.linalg import Matrix


# --- type I construction ---------------------------------------------------

def test_find_admissible_r_split(octo_gf2):
    D = canonical_quaternion(octo_gf2)
    res = find_admissible_r(D)
    assert res.kind == "yes"
    assert len(res.witness) == 3
    e = octo_gf2.e
    for r in res.witness:
        assert r * r == e and r != e
        assert r.norm() == octo_gf2.field.one and not r.bil(e)


def test_find_admissible_r_division(octo_rational_quat):
    D = canonical_quaternion(octo_rational_quat)
    res = find_admissible_r(D)
    assert res.kind == "no"
    assert "zero divisor" in res.reason


def test_make_type_I_basic(octo_gf2):
    A = octo_gf2
    D = canonical_quaternion(A)
    r = find_admissible_r(D).witness[0]
    t = make_type_I(D, r)
    M = t.matrix
    assert is_automorphism(A, M)
    assert M * M == Matrix.identity(A.field, 8)
    assert not M.is_identity()
    # fixes D elementwise
    for d in D.basis_elements():
        assert t.apply(d) == d
    rep = fixed_report(A, M)
    assert rep.dimension == 6
    assert rep.intrinsic == "I"
    assert rep.defining is not None and rep.defining.tag == "Quaternion"


def test_make_type_I_rejections(octo_gf2):
    A = octo_gf2
    D = canonical_quaternion(A)
    B = canonical_totally_singular(A)
    with pytest.raises(BadR):
        make_type_I(D, A.e)
    with pytest.raises(BadR):
        make_type_I(D, A.basis_element(4))  # w is not in D
    with pytest.raises(BadR):
        make_type_I(D, A.basis_element(1))  # u: u^2 = u + e != e
    with pytest.raises(NotQuaternion):
        make_type_I(B, A.e)


# --- type II construction --------------------------------------------------

def test_bhat_membership(octo_gf2):
    B = canonical_totally_singular(octo_gf2)
    bh = bhat(B)
    els = bh.elements()
    assert len(els) == 8  # an index-2 subgroup of (B, +)
    zero = octo_gf2.zero_element()
    assert zero in els
    for b in els:
        assert b.norm() == b.bil(bh.u)
        assert not bh.tilde(b).bil(bh.u)


def test_bhat_structure(octo_gf2, octo_rational):
    assert bhat_structure(
        canonical_totally_singular(octo_gf2))["classification"] == "Split"
    s = bhat_structure(canonical_totally_singular(octo_rational))
    assert s["classification"] == "Division"


def test_make_type_II_basic(octo_gf2):
    A = octo_gf2
    B = canonical_totally_singular(A)
    bh = bhat(B)
    aniso = [b for b in bh.elements() if b.norm()]
    iso = [b for b in bh.elements() if b and not b.norm()]
    assert aniso and iso
    t = make_type_II(B, aniso[0])
    assert is_automorphism(A, t.matrix)
    assert t.matrix * t.matrix == Matrix.identity(A.field, 8)
    for x in B.basis_elements():
        assert t.apply(x) == x
    assert t.apply(t.aux) == t.aux + aniso[0]
    rep = fixed_report(A, t.matrix)
    assert rep.dimension == 4 and rep.intrinsic == "II"
    # q(b) = 0 gives a 6-dimensional fixed space: intrinsically type I
    t0 = make_type_II(B, iso[0])
    rep0 = fixed_report(A, t0.matrix)
    assert rep0.dimension == 6 and rep0.intrinsic == "I"


def test_make_type_II_rejections(octo_gf2):
    A = octo_gf2
    B = canonical_totally_singular(A)
    D = canonical_quaternion(A)
    with pytest.raises(ZeroB):
        make_type_II(B, A.zero_element())
    with pytest.raises(NotInBhat):
        make_type_II(B, A.basis_element(1))  # u is not in B
    with pytest.raises(NotTotallySingular):
        make_type_II(D, A.e)


# --- fixed spaces ------------------------------------------------------------

def test_fixed_subalgebra_closure(octo_gf2):
    A = octo_gf2
    D = canonical_quaternion(A)
    r = find_admissible_r(D).witness[0]
    t = make_type_I(D, r)
    sub = fixed_subalgebra(A, t.matrix)
    assert sub.dim == 6 == fixed_dimension(A, t.matrix)
    belts = sub.basis_elements()
    for a in belts:
        for b in belts:
            assert sub.contains(a * b)
        assert t.apply(a) == a
    ident = Matrix.identity(A.field, 8)
    assert fixed_dimension(A, ident) == 8


# --- normal form -------------------------------------------------------------

def test_r_normal_form_exhaustive(f2, f4):
    for f in (f2, f4):
        ident = Matrix.identity(f, 2)
        normal = Matrix.from_rows(f, [[1, 1], [0, 1]])
        count = 0
        for ent in product(range(f.order), repeat=4):
            R = Matrix.from_rows(f, [[ent[0], ent[1]], [ent[2], ent[3]]])
            if R * R != ident or R == ident:
                continue
            count += 1
            P, N = r_normal_form(R)
            assert N == normal
            assert P * R * P.inverse() == normal
        assert count > 0
        with pytest.raises(NotOrder2):
            r_normal_form(ident)


# --- structured families -----------------------------------------------------

def test_invD_map_commutes_with_type_I(octo_gf2):
    A = octo_gf2
    D = canonical_quaternion(A)
    r = find_admissible_r(D).witness[0]
    t = make_type_I(D, r)
    c = A.basis_element(1)  # u, q(u) = 1
    p = A.e
    g = invD_map(D, c, p)
    assert is_automorphism(A, g)
    for d in D.basis_elements():
        assert D.contains(A.element(g * d.coords))


def test_aut_B_group(octo_gf2):
    B = canonical_totally_singular(octo_gf2)
    mats = aut_B(B)
    assert len(mats) == 24
    ident = Matrix.identity(octo_gf2.field, 4)
    assert ident in mats
    keys = {m.entries for m in mats}
    for m in mats[:6]:
        assert (m * m.inverse()).is_identity()
        assert (m * mats[1]).entries in keys  # closed under composition


def test_extend_B_automorphism(octo_gf2):
    A = octo_gf2
    B = canonical_totally_singular(A)
    bh = bhat(B)
    ident = Matrix.identity(A.field, 4)
    for m in bh.elements():
        g = extend_B_automorphism(B, ident, m)
        assert is_automorphism(A, g)
    with pytest.raises(NotInBhat):
        extend_B_automorphism(B, ident, A.basis_element(1))


# --- conjugacy ----------------------------------------------------------------

def test_conjugacy_same_involution(octo_gf2):
    D = canonical_quaternion(octo_gf2)
    r = find_admissible_r(D).witness[0]
    t = make_type_I(D, r)
    res = conjugacy_test(t, t)
    assert res.kind == "conjugate" and res.witness.is_identity()


def test_conjugacy_type_I_pair(octo_gf2):
    A = octo_gf2
    D = canonical_quaternion(A)
    r1, r2 = find_admissible_r(D).witness[:2]
    t, s = make_type_I(D, r1), make_type_I(D, r2)
    res = conjugacy_test(t, s)
    assert res.kind == "conjugate"
    g = res.witness
    assert is_automorphism(A, g)
    assert g * t.matrix * g.inverse() == s.matrix


def test_conjugacy_type_II_pair(octo_gf2):
    A = octo_gf2
    B = canonical_totally_singular(A)
    aniso = [b for b in bhat(B).elements() if b.norm()]
    t, s = make_type_II(B, aniso[0]), make_type_II(B, aniso[1])
    res = conjugacy_test(t, s)
    assert res.kind == "conjugate"
    g = res.witness
    assert is_automorphism(A, g)
    assert g * t.matrix * g.inverse() == s.matrix


def test_conjugacy_across_fixed_dimensions(octo_gf2):
    A = octo_gf2
    D = canonical_quaternion(A)
    B = canonical_totally_singular(A)
    t = make_type_I(D, find_admissible_r(D).witness[0])
    aniso = next(b for b in bhat(B).elements() if b.norm())
    s = make_type_II(B, aniso)
    res = conjugacy_test(t, s)
    assert res.kind == "not_conjugate"
    assert "dimensions differ" in res.reason
    # a degenerate type II map (q(b) = 0) also has a 6-dim fixed space
    # and IS conjugate to the type I map
    iso = next(b for b in bhat(B).elements() if b and not b.norm())
    s0 = make_type_II(B, iso)
    res0 = conjugacy_test(t, s0)
    assert res0.kind == "conjugate"
    g = res0.witness
    assert g * t.matrix * g.inverse() == s0.matrix


def test_conjugacy_division_B(octo_rational):
    A = octo_rational
    B = canonical_totally_singular(A)
    bh = bhat(B)
    assert bh.contains(A.e)
    f = A.field
    x1, x2 = f.indeterminate(0), f.indeterminate(1)
    w = A.basis_element(4)
    other = A.e * ((x1 * x1) / (x1 * x1 + x2)) + w * (x1 / (x1 * x1 + x2))
    assert bh.contains(other)
    t, s = make_type_II(B, A.e, u=bh.u), make_type_II(B, other, u=bh.u)
    res = conjugacy_test(t, s)
    assert res.kind == "not_conjugate"
    assert "division" in res.reason
    res_same = conjugacy_test(s, s)
    assert res_same.kind == "conjugate"


# --- fixed point groups --------------------------------------------------------

def test_fixed_point_group_type_I(octo_gf2):
    D = canonical_quaternion(octo_gf2)
    t = make_type_I(D, find_admissible_r(D).witness[0])
    fpg = fixed_point_group(t)
    assert fpg.expected_order == 12  # (q^3 - q) q at q = 2
    assert fpg.order == 12
    for g in fpg.generators:
        assert g * t.matrix == t.matrix * g


def test_fixed_point_group_type_II(octo_gf2):
    B = canonical_totally_singular(octo_gf2)
    aniso = next(b for b in bhat(B).elements() if b.norm())
    t = make_type_II(B, aniso)
    fpg = fixed_point_group(t)
    assert fpg.order == 48
    assert fpg.components == {"aut_B": 24, "bhat": 8}
    assert fpg.order % fpg.components["bhat"] == 0
    assert (fpg.components["aut_B"] * fpg.components["bhat"]) % fpg.order == 0


def test_type_I_family_generators(octo_gf2):
    D = canonical_quaternion(octo_gf2)
    t = make_type_I(D, find_admissible_r(D).witness[0])
    gens = type_I_family_generators(t)
    assert gens
    for g in gens:
        assert g * t.matrix == t.matrix * g
