"""Polynomial, quasi-polynomial and metaplectic representations of the affine Hecke algebra.

The generator action on a monomial is

* ``pol``: ``T_i x^l = t_i x^{s_i l} + (t_i - t_i^-1) nabla_i x^l``
* ``qp``:  ``T_i x^y = chi_i(alpha_i(y)) x^{s_i y} + (t_i - t_i^-1) nabla^qp_i x^y``
* ``met``: ``T_i x^l = -t_i g_{-B(l, alpha_i^vee)} x^{s_i l} + (t_i - t_i^-1) nabla^m_i x^l``

with all divided differences evaluated as finite geometric sums.  Each
distinct monomial action is computed once per :class:`Rep` and, when the
division oracle is on, cross-checked by exact Laurent division against its
defining fraction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable

from .coeffring import Alphabet, ParamPoly
from .qpoly import QuasiPolynomial
from .rootsys import (Lattice, MetaplecticDatum, PreconditionError, RootSystem, WeylElement, build_root_system,
                      parse_vector)

__all__ = [
    "make_alphabet",
    "Rep",
    "ORACLE",
    "nabla",
    "chi",
    "apply_gen",
    "apply_word",
    "apply_word_inv",
    "apply_hecke",
    "apply_symmetrizer",
    "h_stat",
    "h_m_stat",
    "t_of",
    "dw_apply",
    "dw_apply_definition",
    "dw_word",
    "mdw_apply",
    "mdw_word",
    "d_m_map",
]


def t_symbol(rs: RootSystem, orbit: str) -> str:
    return "t" if len(rs.orbits) == 1 else f"t_{orbit}"


def g_symbol(rs: RootSystem, j: int, orbit: str) -> str:
    return f"g{j}" if len(rs.orbits) == 1 else f"g{j}_{orbit}"


def make_alphabet(rs: RootSystem, n: int = 1) -> Alphabet:
    """Orbit parameters, then q (the square root of v), then the free Gauss-sum symbols."""
    names = [t_symbol(rs, o) for o in rs.orbits] + ["q"]
    for j in range(1, (n - 1) // 2 + 1):
        names += [g_symbol(rs, j, o) for o in rs.orbits]
    return Alphabet(tuple(names))


class _Oracle:
    """Counts divided-difference outputs re-verified by exact division."""

    def __init__(self):
        self.enabled = True
        self.checked = 0
        self.failures: list[str] = []

    def reset(self):
        self.checked = 0
        self.failures = []


ORACLE = _Oracle()


def _sadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _smul(a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = _sadd(e1, e2)
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def _sacc(acc: dict, key, scal: dict, mult: int = 1):
    d = acc.setdefault(key, {})
    for e, c in scal.items():
        v = d.get(e, 0) + mult * c
        if v:
            d[e] = v
        else:
            d.pop(e, None)


class Rep:
    """A representation descriptor together with its memo of monomial actions.

    flavor  : ``pol`` | ``qp`` | ``met``
    tmode   : ``generic`` (orbit symbols t_O) or ``equal`` (every t_O -> q)
    tpow    : +1, or -1 for the representation with inverted Hecke parameters
    gmode   : ``generic`` Gauss-sum symbols or ``specialized`` (g_j -> -q^-1)
    half_sign : value of g_{n/2} * t (default -1; +1 is a deliberate perturbation)
    literal : use the uncorrected displayed metaplectic formula (debug only)
    """

    def __init__(self, rs: RootSystem, flavor: str = "pol", *, n: int = 1, datum: MetaplecticDatum | None = None,
                 tmode: str = "generic", tpow: int = 1, gmode: str = "generic", half_sign: int = -1,
                 literal: bool = False, alphabet: Alphabet | None = None):
        if flavor not in ("pol", "qp", "met"):
            raise ValueError(f"unknown flavor {flavor}")
        if tmode not in ("generic", "equal") or gmode not in ("generic", "specialized") or tpow not in (1, -1):
            raise ValueError("bad parameter mode")
        self.rs = rs
        self.flavor = flavor
        if datum is None:
            datum = MetaplecticDatum(rs, n)
        self.datum = datum
        self.n = datum.n
        self.tmode = tmode
        self.tpow = tpow
        self.gmode = gmode
        self.half_sign = half_sign
        self.literal = literal
        self.alphabet = alphabet or make_alphabet(rs, self.n)
        self._cache: dict = {}
        self._gen_data = []
        for i in range(1, rs.rank + 1):
            orb = rs.orbit_of_simple(i)
            t = self.t_orbit(orb)
            tinv = self.t_orbit(orb, -1)
            tdiff = dict(t)
            for e, c in tinv.items():
                tdiff[e] = tdiff.get(e, 0) - c
            self._gen_data.append((rs.simple_roots[i - 1], rs.simple_coroots[i - 1], orb, t, tdiff,
                                   datum.m(orb), datum.Qval(orb)))

    def __repr__(self):
        return (f"Rep({self.rs.label}, {self.flavor}, n={self.n}, t={self.tmode}{'' if self.tpow == 1 else '^-1'}, "
                f"g={self.gmode})")

    def variant(self, **kw) -> "Rep":
        args = dict(flavor=self.flavor, datum=self.datum, tmode=self.tmode, tpow=self.tpow, gmode=self.gmode,
                    half_sign=self.half_sign, literal=self.literal, alphabet=self.alphabet)
        args.update(kw)
        return Rep(self.rs, args.pop("flavor"), **args)

    # scalars (as {exponent: coeff} dicts over the alphabet)

    def _mono(self, name, power):
        e = [0] * len(self.alphabet)
        e[self.alphabet.index(name)] = power
        return {tuple(e): 1}

    def t_orbit(self, orbit: str, power: int = 1) -> dict:
        if self.tmode == "equal":
            return self._mono("q", self.tpow * power)
        return self._mono(t_symbol(self.rs, orbit), self.tpow * power)

    def t_poly(self, orbit: str, power: int = 1) -> ParamPoly:
        return ParamPoly(self.alphabet, self.t_orbit(orbit, power), _clean=True)

    def g(self, j: int, orbit: str) -> dict:
        n = self.n
        j %= n
        if j == 0:
            return {self.alphabet.zero_exp(): -1}
        if 2 * j == n:
            return {e: self.half_sign * c for e, c in self.t_orbit(orbit, -1).items()}
        if 2 * j > n:
            inv = ParamPoly(self.alphabet, self.g(n - j, orbit), _clean=True).inverse()
            return _smul(self.t_orbit(orbit, -2), inv.terms)
        if self.gmode == "specialized":
            return {e: -c for e, c in self._mono("q", -1).items()}
        return self._mono(g_symbol(self.rs, j, orbit), 1)

    def g_poly(self, j: int, orbit: str) -> ParamPoly:
        return ParamPoly(self.alphabet, self.g(j, orbit), _clean=True)

    def P(self, scal: dict) -> ParamPoly:
        return ParamPoly(self.alphabet, dict(scal), _clean=True)

    # monomial actions

    def _action(self, i: int, xk: tuple, D: int, inverse: bool):
        key = (i, xk, D, inverse)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        alpha, cov, orb, t, tdiff, m, Qv = self._gen_data[i - 1]
        a_num = sum(a * x for a, x in zip(alpha, xk))
        s_xk = tuple(x - a_num * c for x, c in zip(xk, cov))
        acc: dict = {}
        one = {self.alphabet.zero_exp(): 1}
        flavor = self.flavor
        if flavor == "pol":
            if D != 1:
                raise PreconditionError("polynomial representation applied to a non-integral exponent")
            k, step, c1 = a_num, cov, t
        elif flavor == "qp":
            k = a_num // D
            step = tuple(D * c for c in cov)
            c1 = t if a_num % D == 0 else one
        else:
            if D != 1:
                raise PreconditionError("metaplectic representation applied to a non-integral exponent")
            B = Qv * a_num
            g = self.g(-B, orb)
            c1 = {e: -c for e, c in _smul(t, g).items()}
            k = a_num // m
            step = tuple(m * c for c in cov)
        nab = self._nabla_terms(xk, k, step)
        if flavor == "met" and self.literal:
            _sacc(acc, tuple(0 for _ in xk), c1)
            sign = -1
        else:
            _sacc(acc, s_xk, c1)
            sign = 1
        for ok, mult in nab:
            _sacc(acc, ok, tdiff, sign * mult)
        if inverse:
            _sacc(acc, xk, tdiff, -1)
        out = tuple((ok, tuple(sc.items())) for ok, sc in acc.items() if sc)
        if ORACLE.enabled:
            self._oracle_check(xk, D, k, step, nab)
        self._cache[key] = out
        return out

    @staticmethod
    def _nabla_terms(xk, k, step):
        if k > 0:
            return [(tuple(x - j * s for x, s in zip(xk, step)), -1) for j in range(1, k + 1)]
        if k < 0:
            return [(tuple(x + j * s for x, s in zip(xk, step)), 1) for j in range(0, -k)]
        return []

    def _oracle_check(self, xk, D, k, step, nab):
        """Verify the closed geometric sum against (x^{y - k*step} - x^y) / (x^step - 1) by exact division."""
        rs, A = self.rs, self.alphabet
        z = A.zero_exp()
        shifted = tuple(x - k * s for x, s in zip(xk, step))
        num = QuasiPolynomial(rs, A, {(shifted, z): 1}, D) - QuasiPolynomial(rs, A, {(xk, z): 1}, D)
        den = QuasiPolynomial(rs, A, {(step, z): 1}, D) - QuasiPolynomial(rs, A, {(tuple(0 for _ in xk), z): 1}, D)
        closed = QuasiPolynomial(rs, A, {(ok, z): mult for ok, mult in nab}, D)
        ORACLE.checked += 1
        try:
            quo = num.divide_exact(den)
        except ArithmeticError as exc:
            ORACLE.failures.append(f"{self!r} exponent {xk}/{D}: {exc}")
            return
        if quo != closed:
            ORACLE.failures.append(f"{self!r} exponent {xk}/{D}: closed form {closed} != quotient {quo}")

    def apply_gen(self, i: int, f: QuasiPolynomial, inverse: bool = False) -> QuasiPolynomial:
        if f.alphabet != self.alphabet:
            raise ValueError("alphabet mismatch between representation and argument")
        D = f.denom
        out: dict = {}
        by_x = f.grouped()
        for xk, cf in by_x.items():
            for ok, scal in self._action(i, xk, D, inverse):
                for pe, c in scal:
                    for pk, v in cf.items():
                        key = (ok, _sadd(pk, pe))
                        nv = out.get(key, 0) + v * c
                        if nv:
                            out[key] = nv
                        else:
                            del out[key]
        return QuasiPolynomial(self.rs, self.alphabet, out, D, _clean=True)

    # words

    def apply_word(self, word: Iterable[int], f: QuasiPolynomial) -> QuasiPolynomial:
        """pi(T_{i_1} ... T_{i_l}) f (rightmost generator acts first)."""
        for i in reversed(tuple(word)):
            f = self.apply_gen(i, f)
        return f

    def apply_word_inv(self, word: Iterable[int], f: QuasiPolynomial) -> QuasiPolynomial:
        """pi((T_{i_1} ... T_{i_l})^{-1}) f = T_{i_l}^{-1} ... T_{i_1}^{-1} f."""
        for i in tuple(word):
            f = self.apply_gen(i, f, inverse=True)
        return f

    def T(self, w: WeylElement, f, inverse=False):
        return self.apply_word_inv(w.word, f) if inverse else self.apply_word(w.word, f)

    # scalars attached to Weyl elements

    def t_of(self, w: WeylElement, power: int = 1) -> ParamPoly:
        """t(w) = product of t along a reduced word."""
        out = ParamPoly.one(self.alphabet)
        for i in w.word:
            out = out * self.t_poly(self.rs.orbit_of_simple(i), power)
        return out

    def mono(self, y, coeff=1) -> QuasiPolynomial:
        return QuasiPolynomial.monomial(self.rs, self.alphabet, y, coeff)

    def one(self) -> ParamPoly:
        return ParamPoly.one(self.alphabet)

    def q(self, power: int = 1) -> ParamPoly:
        return ParamPoly.symbol(self.alphabet, "q", power)


def nabla(rep: Rep, i: int, f: QuasiPolynomial) -> QuasiPolynomial:
    """The flavor's divided difference nabla_i applied to f."""
    _alpha, cov, orb, _t, _td, m, _Q = rep._gen_data[i - 1]
    D = f.denom
    out = QuasiPolynomial.zero(rep.rs, rep.alphabet)
    terms: dict = {}
    for (xk, pk), v in f.terms.items():
        a_num = sum(a * x for a, x in zip(rep.rs.simple_roots[i - 1], xk))
        if rep.flavor == "pol":
            k, step = a_num, cov
        elif rep.flavor == "qp":
            k, step = a_num // D, tuple(D * c for c in cov)
        else:
            k, step = a_num // m, tuple(m * c for c in cov)
        nab = Rep._nabla_terms(xk, k, step)
        if ORACLE.enabled:
            rep._oracle_check(xk, D, k, step, nab)
        for ok, mult in nab:
            key = (ok, pk)
            terms[key] = terms.get(key, 0) + mult * v
    out = QuasiPolynomial(rep.rs, rep.alphabet, {k: v for k, v in terms.items() if v}, D, _clean=True)
    return out


def chi(rep: Rep, i: int, x) -> ParamPoly:
    x = Fraction(x)
    if x.denominator == 1:
        return rep.t_poly(rep.rs.orbit_of_simple(i))
    return rep.one()


def apply_gen(rep: Rep, i: int, f: QuasiPolynomial, inverse: bool = False) -> QuasiPolynomial:
    return rep.apply_gen(i, f, inverse)


def apply_word(rep, word, f):
    return rep.apply_word(word, f)


def apply_word_inv(rep, word, f):
    return rep.apply_word_inv(word, f)


def apply_hecke(rep: Rep, h, f: QuasiPolynomial) -> QuasiPolynomial:
    """pi(h) f for a HeckeElement h = sum_w f_w T_w."""
    out = QuasiPolynomial.zero(rep.rs, rep.alphabet)
    for w, fw in h.items():
        out = out + fw * rep.apply_word(w.word, f)
    return out


def apply_symmetrizer(rep: Rep, f: QuasiPolynomial, sign: int, J: Iterable[int] | None = None) -> QuasiPolynomial:
    """pi(1^sign_J) f, summing over W_J (all of W when J is None)."""
    rs = rep.rs
    W = rs.W
    elems = W.elements if J is None else W.parabolic(J)
    vals = {0: f}
    out = QuasiPolynomial.zero(rs, rep.alphabet)
    for w in sorted(elems):
        if w.index not in vals:
            i = w.word[0]
            tail = W.lmul_gen(i, w)
            vals[w.index] = rep.apply_gen(i, vals[tail.index])
        if sign > 0:
            c = rep.t_of(w)
        else:
            c = rep.t_of(w, -1) * (-1) ** w.length
        out = out + vals[w.index].scale(c)
    return out


def t_of(rep: Rep, w: WeylElement, power: int = 1) -> ParamPoly:
    return rep.t_of(w, power)


def h_stat(rep: Rep, c, w: WeylElement) -> ParamPoly:
    """Product of t_alpha over inversions alpha of w with alpha(c) = 0."""
    c = parse_vector(c)
    out = rep.one()
    for R in w.inversion_roots():
        if R(c) == 0:
            out = out * rep.t_poly(R.orbit)
    return out


def h_m_stat(rep: Rep, c, w: WeylElement) -> ParamPoly:
    """(-1)^l(w) t(w) prod over inversions of g_{-B(c, alpha^vee)}(alpha)."""
    c = parse_vector(c)
    out = rep.t_of(w) * (-1) ** w.length
    for R in w.inversion_roots():
        B = rep.datum.B(c, R)
        if Fraction(B).denominator != 1:
            raise PreconditionError("B(c, alpha^vee) must be an integer")
        out = out * rep.g_poly(-int(B), R.orbit)
    return out


# Demazure-Whittaker operators


def _dw_rep(rep: Rep, qpow: int = 1) -> Rep:
    """Equal-parameter polynomial representation with t = q^qpow."""
    if rep.flavor == "pol" and rep.tmode == "equal" and rep.tpow == qpow:
        return rep
    key = ("_dw", qpow)
    if key not in rep.__dict__:
        rep.__dict__[key] = Rep(rep.rs, "pol", datum=MetaplecticDatum(rep.rs, 1), tmode="equal", tpow=qpow,
                                alphabet=rep.alphabet)
    return rep.__dict__[key]


def dw_apply(rep: Rep, i: int, f: QuasiPolynomial, inverse: bool = False, qpow: int = 1) -> QuasiPolynomial:
    """Demazure-Whittaker operator at parameter q^qpow: -q^-1 pi_{q^2}(T_i), or its inverse."""
    r = _dw_rep(rep, qpow)
    qq = r.q(qpow)
    if inverse:
        return r.apply_gen(i, f, inverse=True).scale(-qq)
    return r.apply_gen(i, f).scale(-qq.inverse())


def dw_apply_definition(rep: Rep, i: int, f: QuasiPolynomial, qpow: int = 1) -> QuasiPolynomial:
    """Independent route: the defining rational expression, evaluated by exact division."""
    rs = rep.rs
    A = rep.alphabet
    W = rs.W
    q2inv = ParamPoly.symbol(A, "q", -2 * qpow)
    xa = QuasiPolynomial.monomial(rs, A, rs.simple_coroots[i - 1])
    one = QuasiPolynomial.monomial(rs, A, [0] * rs.dim)
    sf = f.act_weyl(W.s(i))
    num = (xa - one.scale(q2inv)) * sf + (one.scale(q2inv) - one) * f
    return num.divide_exact(one - xa)


def dw_word(rep: Rep, word, f, inverse=False, qpow: int = 1):
    """T_{w,q} = T_{i_1} ... T_{i_l} applied to f, or its inverse operator."""
    word = tuple(word)
    if inverse:
        for i in word:
            f = dw_apply(rep, i, f, True, qpow)
    else:
        for i in reversed(word):
            f = dw_apply(rep, i, f, False, qpow)
    return f


def _check_rho(rep: Rep):
    rs = rep.rs
    if not rs.is_gl() and not Lattice(rs, "Pv").contains(rs.rho_lattice):
        raise PreconditionError("rho must lie in the lattice")


def mdw_apply(rep: Rep, i: int, f: QuasiPolynomial, inverse: bool = False) -> QuasiPolynomial:
    """Metaplectic Demazure-Whittaker operator -q y^rho pi^m_v(T_i^-1) y^-rho (rep must be met, equal mode)."""
    if rep.flavor != "met" or rep.tmode != "equal":
        raise PreconditionError("metaplectic operators need the equal-parameter metaplectic representation")
    if f.denom != 1:
        raise PreconditionError("argument must be a polynomial")
    _check_rho(rep)
    rho = rep.rs.rho_lattice
    g = f.mul_monomial(tuple(-x for x in rho))
    if inverse:
        g = rep.apply_gen(i, g).scale(-rep.q(-1))
    else:
        g = rep.apply_gen(i, g, inverse=True).scale(-rep.q())
    return g.mul_monomial(rho)


def mdw_word(rep: Rep, word, f, inverse=False):
    word = tuple(word)
    if inverse:
        for i in word:
            f = mdw_apply(rep, i, f, True)
    else:
        for i in reversed(word):
            f = mdw_apply(rep, i, f)
    return f


def d_m_map(datum: MetaplecticDatum, f: QuasiPolynomial) -> QuasiPolynomial:
    if not datum.is_constant_m():
        raise PreconditionError("d_m needs a constant m(alpha)")
    m = datum.m(datum.rs.orbits[0])
    return f.rescale_exponents(m)
