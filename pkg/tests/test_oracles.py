from hypothesis import given, strategies as st

from heckelab.oracles import alternant, casselman_shalika_gl, schur_gl


def test_schur_small():
    assert schur_gl((0, 0)) == {(0, 0): 1}
    assert schur_gl((1, 0)) == {(1, 0): 1, (0, 1): 1}
    assert schur_gl((1, 1, 0)) == {(1, 1, 0): 1, (1, 0, 1): 1, (0, 1, 1): 1}


def test_alternant_sign():
    assert alternant((1, 0)) == {(1, 0): 1, (0, 1): -1}
    assert alternant((1, 1)) == {}


def test_cs_gl2_trivial():
    assert casselman_shalika_gl((0, 0)) == {((0, 0), 0): 1, ((1, -1), 2): -1}


@given(st.lists(st.integers(0, 3), min_size=3, max_size=3))
def test_schur_dimension_and_symmetry(v):
    lam = tuple(sorted(v, reverse=True))
    s = schur_gl(lam)
    a, b, c = lam
    # Weyl dimension formula for GL_3
    assert sum(s.values()) == (a - b + 1) * (b - c + 1) * (a - c + 2) // 2
    assert all(s.get(tuple(reversed(k))) == m for k, m in s.items())
