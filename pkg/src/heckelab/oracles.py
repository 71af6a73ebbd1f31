"""Brute-force reference values that do not go through any Hecke-algebra code.

Only the sparse Laurent division from :mod:`heckelab.coeffring` is shared.
"""
from __future__ import annotations

from itertools import combinations, permutations

from .coeffring import laurent_divide

__all__ = ["alternant", "schur_gl", "casselman_shalika_gl"]


def _sign(perm) -> int:
    inv = sum(1 for a, b in combinations(perm, 2) if a > b)
    return -1 if inv % 2 else 1


def alternant(exp) -> dict:
    """sum over permutations sigma of sgn(sigma) y^{sigma(exp)}."""
    r = len(exp)
    out: dict = {}
    for perm in permutations(range(r)):
        key = tuple(exp[perm[k]] for k in range(r))
        out[key] = out.get(key, 0) + _sign(perm)
    return {k: v for k, v in out.items() if v}


def schur_gl(lam) -> dict:
    """Weyl character of GL_r with highest weight lam, as {exponent: int}."""
    r = len(lam)
    rho = tuple(r - 1 - k for k in range(r))
    return laurent_divide(alternant(tuple(a + b for a, b in zip(lam, rho))), alternant(rho))


def casselman_shalika_gl(lam) -> dict:
    """prod_{i<j} (1 - v y_i/y_j) * s_lam as {(exponent, power of v^1/2): int}."""
    r = len(lam)
    poly = {(k, 0): v for k, v in schur_gl(lam).items()}
    for i, j in combinations(range(r), 2):
        root = tuple(1 if k == i else -1 if k == j else 0 for k in range(r))
        nxt: dict = {}
        for (e, qp), v in poly.items():
            nxt[(e, qp)] = nxt.get((e, qp), 0) + v
            key = (tuple(a + b for a, b in zip(e, root)), qp + 2)
            nxt[key] = nxt.get(key, 0) - v
        poly = {k: v for k, v in nxt.items() if v}
    return poly
