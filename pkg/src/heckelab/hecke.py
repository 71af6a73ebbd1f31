"""Affine Hecke algebra elements in PBW form ``sum_w f_w T_w`` (coefficients on the left).

Products are built from two left-multiplication rules only:

* ``x^l * (sum f_w T_w) = sum (x^l f_w) T_w``
* ``gamma_w(T_i h) = (t_i - t_i^-1) nabla_i gamma_w(h) + s_i gamma_{s_i w}(h)
  + [l(s_i w) < l(w)] (t_i - t_i^-1) s_i gamma_w(h)``
"""
from __future__ import annotations

from typing import Iterable, Mapping

from .coeffring import ParamPoly
from .qpoly import QuasiPolynomial
from .reps import Rep, nabla
from .rootsys import WeylElement

__all__ = ["HeckeElement", "gamma_H", "lmul_T", "lmul_x", "product", "basis_T", "basis_T_inv", "symmetrizer",
           "partial_symmetrizer"]


class HeckeElement:
    """Finite map WeylElement -> polynomial, read as sum f_w T_w.

    ``rep`` is a polynomial or metaplectic :class:`Rep`; it fixes the root
    system, the parameter alphabet, the parameter mode used for t_i and the
    step of the divided difference (alpha^vee, or m alpha^vee for the
    metaplectic subalgebra).
    """

    __slots__ = ("rep", "coeffs")

    def __init__(self, rep: Rep, coeffs: Mapping[WeylElement, QuasiPolynomial] | None = None):
        if rep.flavor == "qp":
            raise ValueError("Hecke elements need a polynomial or metaplectic divided difference")
        self.rep = rep
        out = {}
        for w, f in (coeffs or {}).items():
            if f.is_zero():
                continue
            if not f.is_integral():
                raise ValueError(f"coefficient of T_{w} is not a polynomial")
            out[w] = f
        self.coeffs = out

    # constructors

    @classmethod
    def zero(cls, rep):
        return cls(rep, {})

    @classmethod
    def from_poly(cls, rep, f: QuasiPolynomial):
        return cls(rep, {rep.rs.W.e: f})

    @classmethod
    def one(cls, rep):
        return cls.from_poly(rep, rep.mono([0] * rep.rs.dim))

    @classmethod
    def x(cls, rep, lam):
        return cls.from_poly(rep, rep.mono(lam))

    @classmethod
    def T(cls, rep, w: WeylElement):
        return basis_T(rep, w)

    # arithmetic

    def _zero_poly(self):
        return QuasiPolynomial.zero(self.rep.rs, self.rep.alphabet)

    def gamma(self, w: WeylElement) -> QuasiPolynomial:
        return self.coeffs.get(w, self._zero_poly())

    def items(self):
        return sorted(self.coeffs.items())

    def __add__(self, other: "HeckeElement"):
        out = dict(self.coeffs)
        for w, f in other.coeffs.items():
            out[w] = out[w] + f if w in out else f
        return HeckeElement(self.rep, out)

    def __neg__(self):
        return HeckeElement(self.rep, {w: -f for w, f in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "HeckeElement":
        return HeckeElement(self.rep, {w: f.scale(c) for w, f in self.coeffs.items()})

    def lmul_poly(self, f: QuasiPolynomial) -> "HeckeElement":
        return HeckeElement(self.rep, {w: f * g for w, g in self.coeffs.items()})

    def lmul_x(self, lam) -> "HeckeElement":
        return HeckeElement(self.rep, {w: g.mul_monomial(lam) for w, g in self.coeffs.items()})

    def lmul_T(self, i: int, inverse: bool = False) -> "HeckeElement":
        rep = self.rep
        W = rep.rs.W
        si = W.s(i)
        tdiff = rep.t_poly(rep.rs.orbit_of_simple(i)) - rep.t_poly(rep.rs.orbit_of_simple(i), -1)
        out: dict = {}

        def acc(w, f):
            if f.is_zero():
                return
            out[w] = out[w] + f if w in out else f

        for w, f in self.coeffs.items():
            acc(w, nabla(rep, i, f).scale(tdiff))
            sf = f.act_weyl(si)
            sw = W.lmul_gen(i, w)
            acc(sw, sf)
            if sw.length < w.length:
                # T_i T_w = T_{s_i w} + (t_i - t_i^-1) T_w for a left descent i
                acc(w, sf.scale(tdiff))
            if inverse:
                acc(w, -f.scale(tdiff))
        return HeckeElement(rep, out)

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        return product(self, other)

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self):
        return not self.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"[{f}]*T_{w!r}" for w, f in self.items())

    def to_json(self) -> dict:
        return {"terms": [{"word": list(w.word), "coeff": f.to_json()} for w, f in self.items()]}

    @classmethod
    def from_json(cls, rep, data) -> "HeckeElement":
        W = rep.rs.W
        return cls(rep, {W.from_word(d["word"]): QuasiPolynomial.from_json(rep.rs, rep.alphabet, d["coeff"])
                         for d in data["terms"]})


def gamma_H(h: HeckeElement, w: WeylElement) -> QuasiPolynomial:
    return h.gamma(w)


def lmul_T(i: int, h: HeckeElement, inverse: bool = False) -> HeckeElement:
    return h.lmul_T(i, inverse)


def lmul_x(lam, h: HeckeElement) -> HeckeElement:
    return h.lmul_x(lam)


def product(h1: HeckeElement, h2: HeckeElement) -> HeckeElement:
    """h1 * h2, expanding h1 = sum f_w T_w along canonical reduced words."""
    out = HeckeElement.zero(h1.rep)
    for w, f in h1.items():
        g = h2
        for i in reversed(w.word):
            g = g.lmul_T(i)
        out = out + g.lmul_poly(f)
    return out


def basis_T(rep: Rep, w: WeylElement) -> HeckeElement:
    return HeckeElement(rep, {w: rep.mono([0] * rep.rs.dim)})


def basis_T_inv(rep: Rep, w: WeylElement) -> HeckeElement:
    """T_w^-1 = T_{i_l}^-1 ... T_{i_1}^-1 for the reduced word (i_1, ..., i_l)."""
    h = HeckeElement.one(rep)
    for i in w.word:
        h = h.lmul_T(i, inverse=True)
    return h


def _sym(rep: Rep, elems: Iterable[WeylElement], sign: int) -> HeckeElement:
    one = rep.mono([0] * rep.rs.dim)
    out = {}
    for w in elems:
        c = rep.t_of(w) if sign > 0 else rep.t_of(w, -1) * (-1) ** w.length
        out[w] = one.scale(c)
    return HeckeElement(rep, out)


def symmetrizer(rep: Rep, sign: int) -> HeckeElement:
    """1^+ = sum t(w) T_w and 1^- = sum (-1)^l(w) t(w)^-1 T_w."""
    return _sym(rep, rep.rs.W.elements, sign)


def partial_symmetrizer(rep: Rep, J: Iterable[int], sign: int) -> HeckeElement:
    return _sym(rep, rep.rs.W.parabolic(J), sign)
