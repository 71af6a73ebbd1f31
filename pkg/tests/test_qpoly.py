from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings, strategies as st

from heckelab.coeffring import ParamPoly
from heckelab.qpoly import OrbitError, QuasiPolynomial, assemble, gamma_decompose
from heckelab.reps import make_alphabet
from heckelab.rootsys import Lattice, build_root_system

h = Fr(1, 2)
RS = build_root_system("GL", 2)
A = make_alphabet(RS)
t = ParamPoly.symbol(A, "t")


def X(*y, c=1):
    return QuasiPolynomial.monomial(RS, A, y, c)


def test_monomial_product_and_sum():
    assert X(h, 0) * X(1, 1) == X(Fr(3, 2), 1)
    assert X(1, 0) + X(1, 0) == X(1, 0, c=2)
    f = X(h, 0) + X(0, 3, c=t)
    assert f.mul_monomial((0, 0)) == f


def test_weyl_action():
    W = RS.W
    assert X(1, 0).act_weyl(W.s(1)) == X(0, 1)
    assert (X(1, 0) + X(0, 1, c=t)).act_weyl(W.w0) == X(0, 1) + X(1, 0, c=t)
    f = X(h, 2, c=t) - X(0, 1)
    assert f.act_weyl(W.e) == f


def test_iota():
    assert X(1, 2).iota() == X(-1, -2)
    f = X(1, 0) - X(0, 1, c=t ** -2)
    assert f.iota() == X(-1, 0) - X(0, -1, c=t ** -2)
    assert f.iota().iota() == f


def test_gamma_decompose_examples():
    W = RS.W
    Z = Lattice(RS, "ZGL")
    g = gamma_decompose(X(h, 0) + X(0, h, c=t), (h, 0), Z)
    assert g == {W.e: X(0, 0), W.s(1): X(0, 0, c=t)}
    assert gamma_decompose(X(2, -1), (0, 0), Z) == {W.e: X(2, -1)}
    with pytest.raises(OrbitError):
        gamma_decompose(X(Fr(1, 3), 0), (h, 0), Z)


def test_text_and_json_roundtrip():
    f = X(h, 0) + X(0, h, c=t) - X(2, -1, c=3)
    assert QuasiPolynomial.from_json(RS, A, f.to_json()) == f
    assert f.to_text() == "(1*t^1)*x^(0,1/2) + (1)*x^(1/2,0) + (-3)*x^(2,-1)"


def test_denominator_normalizes():
    f = X(h, 0) - X(h, 0) + X(1, 0)
    assert f.denom == 1 and f == X(1, 0)


exps = st.tuples(st.integers(-3, 3), st.integers(-3, 3))
coefs = st.integers(-3, 3).filter(bool)


def lat_poly(draw_terms):
    return QuasiPolynomial.from_terms(RS, A, draw_terms)


@settings(max_examples=60)
@given(st.lists(st.tuples(exps, coefs), max_size=4), st.lists(st.tuples(exps, coefs), max_size=4),
       st.sampled_from([(h, 0), (Fr(1, 3), 0), (Fr(3, 4), Fr(1, 4)), (0, 0)]))
def test_decompose_assemble_roundtrip(a, b, c):
    W = RS.W
    Z = Lattice(RS, "ZGL")
    J = RS.stabilizer_J(c)
    reps = W.min_coset_reps(J)
    coeffs = {reps[0]: lat_poly(a)}
    if len(reps) > 1:
        coeffs[reps[1]] = lat_poly(b)
    f = assemble(coeffs, c, RS, A)
    back = gamma_decompose(f, c, Z)
    assert assemble(back, c, RS, A) == f
    assert {w: p for w, p in coeffs.items() if not p.is_zero()} == back


@given(st.lists(st.tuples(exps, coefs), max_size=4), st.lists(st.tuples(exps, coefs), max_size=4))
def test_weyl_action_is_ring_map(a, b):
    f, g = lat_poly(a), lat_poly(b)
    s = RS.W.s(1)
    assert (f * g).act_weyl(s) == f.act_weyl(s) * g.act_weyl(s)
    assert (f + g).iota() == f.iota() + g.iota()
