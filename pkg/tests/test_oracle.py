import os

import pytest

from octo2.composition import canonical_quaternion
from octo2.involution import (find_admissible_r, make_type_I,
                              type_I_family_generators)
from octo2.linalg import Matrix
from octo2.oracle import (CapExceeded, DomainTooLarge, OracleError,
                          enumerate_involutions, exhaustive_check,
                          group_closure, isometry_search,
                          random_pair_check)
from octo2.quadform import QuadraticForm, hyperbolic_plane, quasi_pfister


def test_exhaustive_sweeps_gf2(octo_gf2):
    for prop in ("composition", "min_eq", "min_eq_linearized",
                 "gram_rank", "conj_involutive"):
        rep = exhaustive_check(octo_gf2, prop)
        assert rep.ok, f"{prop}: {rep.first}"
        assert rep.violations == 0
    pair = exhaustive_check(octo_gf2, "composition")
    assert pair.domain == 256 * 256


def test_exhaustive_sweep_rejects(octo_gf4, octo_rational):
    with pytest.raises(DomainTooLarge):
        exhaustive_check(octo_gf4, "composition")  # 65536^2 > 2^24
    with pytest.raises(DomainTooLarge):
        exhaustive_check(octo_rational, "min_eq")
    with pytest.raises(OracleError):
        exhaustive_check(octo_gf4, "no_such_property")


def test_sweep_cap_env_lowers_only(octo_gf2, octo_gf4, monkeypatch):
    monkeypatch.setenv("OCTO2_MAX_SWEEP", "1000")
    with pytest.raises(DomainTooLarge):
        exhaustive_check(octo_gf2, "composition")
    # raising the env var above the hard cap must not take effect
    monkeypatch.setenv("OCTO2_MAX_SWEEP", str(1 << 40))
    with pytest.raises(DomainTooLarge):
        exhaustive_check(octo_gf4, "composition")
    monkeypatch.delenv("OCTO2_MAX_SWEEP")
    assert exhaustive_check(octo_gf2, "min_eq").ok


def test_random_pair_check(octo_gf4, octo_rational):
    rep = random_pair_check(octo_gf4, pairs=500, seed=3)
    assert rep.ok and rep.domain == 500
    rep2 = random_pair_check(octo_rational, pairs=200, seed=3)
    assert rep2.ok


def test_random_pair_check_detects_corruption(f2):
    from octo2.composition import build
    A = build(f2, 8, f2.one, f2.one, f2.one)
    # corrupt one structure constant
    table = [list(map(list, row)) for row in A.table]
    table[1][2][0] = f2.one + table[1][2][0]
    A.table = tuple(tuple(tuple(c) for c in row) for row in table)
    rep = random_pair_check(A, pairs=300, seed=0)
    assert rep.violations > 0
    swp = exhaustive_check(A, "composition")
    assert not swp.ok and swp.first is not None


def test_isometry_search_positive(f2, f4):
    h = hyperbolic_plane(f2)
    h2 = QuadraticForm(f2, blocks=[(f2.one, f2.one)])
    assert isometry_search(h, h) is not None
    assert isometry_search(h, h2) is None  # isotropic vs anisotropic
    q = quasi_pfister(f4, f4.one, f4.generator())
    m = isometry_search(q, q)
    assert m is not None and m.rank() == 4


def test_isometry_search_rejects_large(rf2):
    q = quasi_pfister(rf2, rf2.indeterminate(0), rf2.indeterminate(1))
    from octo2.oracle import TooLarge
    with pytest.raises(TooLarge):
        isometry_search(q, q)


def test_group_closure_small(f2):
    a = Matrix.from_rows(f2, [[0, 1], [1, 0]])
    b = Matrix.from_rows(f2, [[1, 1], [0, 1]])
    cl = group_closure([a, b])
    assert len(cl) == 6  # GL2(gf(2)) = S3
    with pytest.raises(CapExceeded):
        group_closure([a, b], cap=2)


def test_type_I_closure_order_gf2(octo_gf2):
    D = canonical_quaternion(octo_gf2)
    t = make_type_I(D, find_admissible_r(D).witness[0])
    gens = type_I_family_generators(t)
    cl = group_closure(gens)
    assert len(cl) == 12
    for g in cl:
        assert g * t.matrix == t.matrix * g


def test_enumerate_involutions_gf2(octo_gf2):
    res = enumerate_involutions(octo_gf2)
    assert len(res.involutions) == 315
    assert res.class_counts() == {"I": 1, "II": 1}
    sizes = sorted(len(c) for c in res.classes)
    assert sizes == [63, 252]
    assert set(res.fixed_dimensions.values()) == {4, 6}
    # spot-verify witnesses in every class
    from octo2 import gf2fast
    from octo2.composition import is_automorphism
    for c in res.classes:
        rep = c.representative
        for key, g in list(c.witnesses.items())[:10]:
            assert is_automorphism(octo_gf2, g)
            m = gf2fast.to_matrix(octo_gf2.field, key)
            assert g * rep.matrix * g.inverse() == m
