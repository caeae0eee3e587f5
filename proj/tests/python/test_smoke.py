import pytest

import kf


def test_catalog_names():
    names = kf.catalog_names()
    for n in ("unknot", "trefoil", "K1", "K2", "T1", "T2", "trivial"):
        assert n in names


def test_trefoil_kh_and_width():
    t = kf.kh(braid="1,1,1")
    assert t["format"] == "kf-1"
    assert t["total_dim"] == 3
    assert t["width"] == 1
    assert kf.width(braid="1,1,1") == 1


def test_mirror_flips_gradings():
    a = {(e["h"], e["q"]) for e in kf.kh(braid="1,1,1")["entries"]}
    b = {(e["h"], e["q"]) for e in kf.kh(braid="1,1,1", mirror=True)["entries"]}
    assert b == {(-h, -q) for h, q in a}


def test_pd_input_matches_braid():
    right = kf.kh(pd=[(1, 5, 2, 4), (3, 1, 4, 6), (5, 3, 6, 2)])
    assert right["entries"] == kf.kh(braid="1,1,1")["entries"]


def test_classical_invariants():
    assert kf.determinant(braid="1,1,1") == 3
    assert kf.determinant(braid="1,-2,1,-2") == 5
    assert kf.alexander(braid="1,1,1") == {-1: 1, 0: -1, 1: 1}
    s = kf.semigroup(catalog="P-2_3_7")
    assert s["det"] == 1
    assert s["lspace_form"]
    assert s["semigroup"]["elements_below"] == [0, 3, 5, 7, 8]
    assert s["semigroup"]["threshold"] == 10


def test_fill_and_validate():
    d = kf.fill(19, catalog="T1")
    assert kf.determinant(pd=d) == 19
    assert kf.determinant(pd=kf.fill("inf", catalog="T1")) == 1
    assert kf.validate(catalog="T1")["pass"]


def test_kappa_trivial_tangle():
    r = kf.kappa(catalog="trivial", range=(-6, 6))
    assert r["N"] == 0
    assert r["total_dim"] == 0


def test_errors():
    with pytest.raises(ValueError):
        kf.kh(braid="1,x")
    with pytest.raises(ValueError):
        kf.kh(braid="1,1,1", catalog="trefoil")
    with pytest.raises(RuntimeError):
        kf.kh(catalog="no-such-knot")
