import pytest
from hypothesis import given, settings, strategies as st

from heckelab.hecke import HeckeElement, basis_T, basis_T_inv, product, symmetrizer
from heckelab.reps import Rep, apply_hecke
from heckelab.rootsys import build_root_system

from conftest import met_rep


def rep_for(kind, rank, flavor="pol", n=1):
    rs = build_root_system(kind, rank)
    return met_rep(rs, n) if flavor == "met" else Rep(rs, flavor)


def test_gamma_of_basis():
    rep = rep_for("GL", 2)
    W = rep.rs.W
    T1 = basis_T(rep, W.s(1))
    assert T1.gamma(W.s(1)) == rep.mono((0, 0))
    assert T1.gamma(W.e).is_zero()
    assert HeckeElement.x(rep, (2, 1)).gamma(W.e) == rep.mono((2, 1))


def test_T_times_x():
    rep = rep_for("GL", 2)
    W = rep.rs.W
    t = rep.t_poly("")
    h = HeckeElement.x(rep, (1, 0)).lmul_T(1)
    assert h.gamma(W.e) == rep.mono((0, 1)).scale(-(t - t.inverse()))
    assert h.gamma(W.s(1)) == rep.mono((0, 1))
    assert HeckeElement.one(rep).lmul_T(1) == basis_T(rep, W.s(1))


def test_length_additive_product():
    rep = rep_for("GL", 3)
    W = rep.rs.W
    for w in W.elements:
        for i in (1, 2):
            if not W.lmul_gen(i, w).length < w.length:
                assert basis_T(rep, w).lmul_T(i) == basis_T(rep, W.lmul_gen(i, w))


def test_T_inverse_generator():
    rep = rep_for("GL", 2)
    W = rep.rs.W
    t = rep.t_poly("")
    one = HeckeElement.one(rep)
    assert basis_T_inv(rep, W.s(1)) == basis_T(rep, W.s(1)) - one.scale(t - t.inverse())


@pytest.mark.parametrize("kind,rank", [("GL", 2), ("GL", 3), ("B", 2)])
def test_T_w_w0_identity(kind, rank):
    rep = rep_for(kind, rank)
    W = rep.rs.W
    for w in W.elements:
        lhs = basis_T(rep, w * W.w0)
        rhs = product(basis_T_inv(rep, w.inverse()), basis_T(rep, W.w0))
        assert lhs == rhs


@pytest.mark.parametrize("kind,rank,flavor,n", [("GL", 2, "pol", 1), ("GL", 3, "pol", 1), ("B", 2, "pol", 1),
                                                ("GL", 2, "met", 2), ("GL", 3, "met", 3)])
def test_inverse_cancels(kind, rank, flavor, n):
    rep = rep_for(kind, rank, flavor, n)
    W = rep.rs.W
    one = HeckeElement.one(rep)
    for w in W.elements:
        assert product(basis_T(rep, w), basis_T_inv(rep, w)) == one


def test_symmetrizer_absorbs():
    rep = rep_for("GL", 3)
    W = rep.rs.W
    t = rep.t_poly("")
    plus = symmetrizer(rep, 1)
    minus = symmetrizer(rep, -1)
    for i in (1, 2):
        assert product(basis_T(rep, W.s(i)), plus) == plus.scale(t)
        assert product(basis_T(rep, W.s(i)), minus) == minus.scale(-t.inverse())


def test_qp_rejected():
    rs = build_root_system("GL", 2)
    with pytest.raises(ValueError):
        HeckeElement.one(Rep(rs, "qp"))


def test_json_roundtrip():
    rep = rep_for("B", 2)
    W = rep.rs.W
    h = product(HeckeElement.x(rep, (1, -1)), basis_T(rep, W.from_word((1, 2))))
    assert HeckeElement.from_json(rep, h.to_json()) == h


lam = st.tuples(st.integers(-2, 2), st.integers(-2, 2))


def element(rep, draw):
    # the metaplectic algebra only contains x^lam for lam in its lattice
    W = rep.rs.W
    L = rep.datum.lattice()
    out = HeckeElement.zero(rep)
    for _ in range(draw(st.integers(1, 2))):
        w = draw(st.sampled_from(W.elements))
        x = draw(lam.filter(L.contains))
        out = out + product(HeckeElement.x(rep, x), basis_T(rep, w))
    return out


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([("GL", 2, "pol", 1), ("B", 2, "pol", 1), ("GL", 2, "met", 2)]), st.data())
def test_associative_and_acts(cfg, data):
    rep = rep_for(*cfg)
    a, b, c = (element(rep, data.draw) for _ in range(3))
    assert product(product(a, b), c) == product(a, product(b, c))
    f = rep.mono(data.draw(lam))
    assert apply_hecke(rep, product(a, b), f) == apply_hecke(rep, a, apply_hecke(rep, b, f))
