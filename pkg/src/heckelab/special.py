"""Named objects built from the representations, and closed forms for their coefficients.

Each closed form has a companion "direct" route computing the same quantity
from definitions (Hecke products, gamma-decomposition, component extraction),
so that every identity can be checked by comparing two independent paths.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .coeffring import NonUnitError, ParamPoly
from .hecke import HeckeElement, product, symmetrizer
from .qpoly import QuasiPolynomial, gamma_decompose
from .reps import (Rep, apply_hecke, apply_symmetrizer, dw_word, h_m_stat, mdw_apply, t_of)
from .rootsys import (Lattice, MetaplecticDatum, PreconditionError, RootSystem, WeylElement, fmt_vector,
                      parse_vector)

__all__ = [
    "p_pm", "ebar_limit", "p_J", "is_J_symmetric",
    "A_pm_definition", "A_pm_definition_all", "A_pm_closed",
    "gamma_direct_qp", "gamma_closed_qp", "p_pm_closed",
    "gamma_direct_met", "gamma_closed_met", "F_coeff",
    "sum_over_W", "iwahori_whittaker", "spherical_whittaker", "spherical_whittaker_antisym",
    "dual_whittaker", "spherical_whittaker_dw", "parahoric_whittaker", "WhittakerValue", "whittaker",
    "met_decompose_mu", "phi_theta", "phi_theta_split", "phi_theta_definition", "phi_theta_gamma", "whitt_arb_closed", "coeffs_w0_closed",
    "DualityConstants", "duality_constants", "gl_duality_data", "gl_duality_lhs_all", "gl_duality_rhs_operator",
    "gl_duality_rhs_parahoric", "whitt_duality_rhs",
    "eps_symmetric_test", "qp_symm_conditions", "phi_bij", "phi_bij_inv", "quasi_duality_minus_factor",
]


def _one(rep: Rep) -> QuasiPolynomial:
    return rep.mono([0] * rep.rs.dim)


def _w0_act(rep: Rep, f: QuasiPolynomial) -> QuasiPolynomial:
    return f.act_weyl(rep.rs.W.w0)


def _Tw(rep, w, f):
    return rep.apply_word(w.word, f)


def _Tw_inv(rep, w, f):
    return rep.apply_word_inv(w.word, f)


def _sym(rep, f, sign, J=None):
    return apply_symmetrizer(rep, f, sign, J)


def _J_of(rs: RootSystem, c) -> frozenset:
    return frozenset(i for i in range(1, rs.rank + 1) if rs.alpha(i, c) == 0)


def _require_min_rep(W, w, J, name):
    if not W.in_min_coset_reps(w, J):
        raise PreconditionError(f"{name}={w!r} is not a minimal coset representative for J={sorted(J)}")


# (anti-)symmetric quasi-polynomials and their limits


def p_pm(qrep: Rep, y, c, sign: int, lattice: Lattice | None = None) -> QuasiPolynomial:
    """pi^qp(1^sign) x^y for y in the (lattice, c)-orbit."""
    rs = qrep.rs
    lattice = lattice or Lattice.default(rs)
    c = parse_vector(c)
    if not rs.is_in_C0(c, lattice):
        raise PreconditionError(f"c={','.join(fmt_vector(c))} not in C0_Lambda")
    f = qrep.mono(y)
    gamma_decompose(f, c, lattice)  # raises on orbit mismatch
    return _sym(qrep, f, sign)


def ebar_limit(qrep: Rep, y) -> QuasiPolynomial:
    """Unnormalized limit pi^qp(T_{g_y}^-1) x^{y_-} with y = g_y^-1 y_- and g_y^-1 minimal."""
    rs = qrep.rs
    y = parse_vector(y)
    ym = rs.antidominant_rep(y)
    for u in sorted(rs.W.elements):
        if tuple(u.act(ym)) == y:
            return _Tw_inv(qrep, u.inverse(), qrep.mono(ym))
    raise AssertionError("antidominant representative not in orbit")


def p_J(prep: Rep, lam, J: Iterable[int], sign: int) -> QuasiPolynomial:
    """Partially (anti-)symmetric limit polynomial indexed by a J-dominant weight."""
    rs = prep.rs
    J = frozenset(J)
    dec = rs.j_dominant_decompose(parse_vector(lam), J)
    if dec is None:
        raise PreconditionError(f"lambda={','.join(fmt_vector(parse_vector(lam)))} is not J-dominant for J={sorted(J)}")
    mu, what = dec
    if sign > 0:
        return _sym(prep, _Tw(prep, what.inverse(), prep.mono(mu)), 1, J)
    return _sym(prep, _Tw_inv(prep, what, prep.mono(tuple(-x for x in mu))), -1, J)


def is_J_symmetric(prep: Rep, p: QuasiPolynomial, J: Iterable[int], eps: int) -> bool:
    for j in J:
        t = prep.t_poly(prep.rs.orbit_of_simple(j), eps)
        if prep.apply_gen(j, p) != p.scale(t * eps):
            return False
    return True


# matrix coefficients of (anti-)symmetrizers


def A_pm_definition_all(hrep: Rep, what: WeylElement, f: QuasiPolynomial, sign: int) -> HeckeElement:
    """The full product 1^sign f T_what, whose gamma_w are the A^sign_{w, what}(f)."""
    return product(symmetrizer(hrep, sign), HeckeElement(hrep, {what: f}))


def A_pm_definition(hrep: Rep, w: WeylElement, what: WeylElement, f: QuasiPolynomial, sign: int):
    """gamma_w(1^sign f T_what), by a full Hecke-algebra product."""
    return A_pm_definition_all(hrep, what, f, sign).gamma(w)


def A_pm_closed(hrep: Rep, w: WeylElement, what: WeylElement, f: QuasiPolynomial, sign: int):
    W = hrep.rs.W
    w0 = W.w0
    if sign > 0:
        g = _Tw(hrep, what.inverse(), f)
        g = _Tw_inv(hrep, (w0 * w).inverse(), g)
        return _w0_act(hrep, g).scale(hrep.t_of(w0))
    g = _Tw_inv(hrep, what, f.iota())
    g = _Tw(hrep, w0 * w, g)
    return _w0_act(hrep, g).iota().scale(hrep.t_of(w0, -1) * (-1) ** (w.length + what.length))


def gamma_direct_qp(hrep: Rep, qrep: Rep, w, what, f, c, sign, lattice=None):
    """gamma^qp_w(pi^qp(1^sign f T_what) x^c) computed from the Hecke product."""
    rs = hrep.rs
    lattice = lattice or Lattice.default(rs)
    h = product(symmetrizer(hrep, sign), HeckeElement(hrep, {what: f}))
    g = apply_hecke(qrep, h, qrep.mono(c))
    return gamma_decompose(g, c, lattice).get(w, QuasiPolynomial.zero(rs, qrep.alphabet))


def gamma_closed_qp(prep: Rep, w, what, f, c, sign):
    rs = prep.rs
    W = rs.W
    w0 = W.w0
    c = parse_vector(c)
    J = _J_of(rs, c)
    _require_min_rep(W, w, J, "w")
    _require_min_rep(W, what, J, "what")
    if sign > 0:
        g = _Tw(prep, what.inverse(), f)
        g = _sym(prep, g, 1, J)
        g = _Tw_inv(prep, (w0 * w).inverse(), g)
        return _w0_act(prep, g).scale(prep.t_of(w0))
    w0c = W.longest(J)
    g = _Tw_inv(prep, what, f.iota())
    g = _sym(prep, g, -1, J)
    g = _Tw(prep, w0 * w, g)
    coeff = prep.t_of(w0, -1) * prep.t_of(w0c) ** 2 * (-1) ** (what.length + w.length)
    return _w0_act(prep, g).iota().scale(coeff)


def p_pm_closed(prep: Rep, qrep: Rep, y, c, sign, lattice=None) -> QuasiPolynomial:
    """Assemble p^sign_y from closed-form coefficients (y = mu + what c)."""
    rs = prep.rs
    lattice = lattice or Lattice.default(rs)
    c = parse_vector(c)
    dec = gamma_decompose(qrep.mono(y), c, lattice)
    (what, mono), = dec.items()
    J = _J_of(rs, c)
    mu = next(iter(mono.grouped()))
    out = QuasiPolynomial.zero(rs, qrep.alphabet)
    for w in rs.W.min_coset_reps(J):
        coef = gamma_closed_qp(prep, w, what, prep.mono(mu), c, sign)
        out = out + coef * qrep.mono(w.act(c))
    return out


# metaplectic analogues


def F_coeff(mrep: Rep, c, w: WeylElement, sign: int) -> ParamPoly:
    rs = mrep.rs
    W = rs.W
    h = h_m_stat(mrep, c, w)
    if sign > 0:
        return h * mrep.q(W.w0.length)
    w0c = W.longest(_J_of(rs, parse_vector(c)))
    return h * mrep.q(-W.w0.length + 2 * w0c.length) * (-1) ** w.length


def gamma_direct_met(mrep: Rep, w, what, f, c, sign, lattice=None):
    """gamma^m_w(pi^m_v(1^sign f T_what) x^c) from the product in the metaplectic Hecke algebra."""
    rs = mrep.rs
    datum = mrep.datum
    lattice = lattice or datum.component_lattice()
    h = product(symmetrizer(mrep, sign), HeckeElement(mrep, {what: f}))
    g = apply_hecke(mrep, h, mrep.mono(c))
    dec = gamma_decompose(g, c, lattice, c0_test=lambda x: datum.is_in_C0(x, lattice))
    return dec.get(w, QuasiPolynomial.zero(rs, mrep.alphabet))


def gamma_closed_met(mrep: Rep, w, what, f, c, sign):
    rs = mrep.rs
    W = rs.W
    w0 = W.w0
    c = parse_vector(c)
    J = _J_of(rs, c)
    _require_min_rep(W, w, J, "w")
    _require_min_rep(W, what, J, "what")
    if sign > 0:
        g = _Tw(mrep, what.inverse(), f)
        g = _sym(mrep, g, 1, J)
        g = _Tw_inv(mrep, (w0 * w).inverse(), g)
        return _w0_act(mrep, g).scale(F_coeff(mrep, c, w, 1))
    g = _Tw_inv(mrep, what, f.iota())
    g = _sym(mrep, g, -1, J)
    g = _Tw(mrep, w0 * w, g)
    return _w0_act(mrep, g).iota().scale(F_coeff(mrep, c, w, -1) * (-1) ** what.length)


# Whittaker functions


def sum_over_W(rs: RootSystem, gen: Callable, f: QuasiPolynomial, elems=None) -> QuasiPolynomial:
    """sum_w O_w f where O_w = O_{i_1} ... O_{i_l} along the canonical reduced word."""
    W = rs.W
    elems = sorted(W.elements if elems is None else elems)
    vals = {W.e.index: f}
    out = QuasiPolynomial.zero(rs, f.alphabet)
    need = set()
    for w in elems:
        x = w
        while x.index not in vals and x.index not in need:
            need.add(x.index)
            x = W.lmul_gen(x.word[0], x)
    for w in sorted(W.elements[k] for k in need | set(e.index for e in elems)):
        if w.index not in vals:
            i = w.word[0]
            vals[w.index] = gen(i, vals[W.lmul_gen(i, w).index])
    for w in elems:
        out = out + vals[w.index]
    return out


def _check_dominant(rs, lam, what="lambda"):
    if not rs.is_dominant(lam):
        raise PreconditionError(f"{what}={','.join(fmt_vector(lam))} is not dominant")


def iwahori_whittaker(mrep: Rep, w: WeylElement, lam) -> QuasiPolynomial:
    lam = parse_vector(lam)
    _check_dominant(mrep.rs, lam)
    f = mrep.mono(mrep.rs.W.w0.act(lam))
    for i in reversed(w.word):
        f = mdw_apply(mrep, i, f)
    return f


def spherical_whittaker(mrep: Rep, lam) -> QuasiPolynomial:
    """sum_w T^m_w (y^{w0 lam})."""
    rs = mrep.rs
    lam = parse_vector(lam)
    _check_dominant(rs, lam)
    return sum_over_W(rs, lambda i, g: mdw_apply(mrep, i, g), mrep.mono(rs.W.w0.act(lam)))


def spherical_whittaker_antisym(mrep: Rep, lam) -> QuasiPolynomial:
    """v^{l(w0)} y^rho pi^m_v(1^-) y^{-rho + w0 lam}."""
    rs = mrep.rs
    lam = parse_vector(lam)
    rho = rs.rho_lattice
    f = mrep.mono(tuple(a - b for a, b in zip(rs.W.w0.act(lam), rho)))
    return _sym(mrep, f, -1).mul_monomial(rho).scale(mrep.q(2 * rs.W.w0.length))


def dual_whittaker(mrep: Rep, lam) -> QuasiPolynomial:
    """sum_w iota T^m_w iota (y^lam)."""
    rs = mrep.rs
    lam = parse_vector(lam)
    return sum_over_W(rs, lambda i, g: mdw_apply(mrep, i, g.iota()).iota(), mrep.mono(lam))


def spherical_whittaker_dw(erep: Rep, lam) -> QuasiPolynomial:
    """Non-metaplectic v^{l(w0)} y^rho sum_w T_{w, v^1/2} y^{-rho + w0 lam}."""
    rs = erep.rs
    lam = parse_vector(lam)
    rho = rs.rho_lattice
    f = erep.mono(tuple(a - b for a, b in zip(rs.W.w0.act(lam), rho)))
    s = sum_over_W(rs, lambda i, g: dw_word(erep, (i,), g), f)
    return s.mul_monomial(rho).scale(erep.q(2 * rs.W.w0.length))


def parahoric_whittaker(erep: Rep, J, w: WeylElement, lam, wprime: WeylElement, invert_v: bool = False):
    """v^{l(w')} y^{-rho} sum_{u in W_J} T_{wu, v^-1/2} T_{w', v^-1/2}^-1 y^{lam + rho}.

    With ``invert_v`` the result is evaluated at v^-1 (q -> q^-1 on coefficients).
    """
    rs = erep.rs
    W = rs.W
    J = frozenset(J)
    _require_min_rep(W, w, J, "w")
    lam = parse_vector(lam)
    rho = rs.rho_lattice
    top = tuple(a + b for a, b in zip(lam, rho))
    _check_dominant(rs, top, "lambda+rho")
    g = dw_word(erep, wprime.word, erep.mono(top), inverse=True, qpow=-1)
    out = QuasiPolynomial.zero(rs, erep.alphabet)
    for u in W.parabolic(J):
        out = out + dw_word(erep, (w * u).word, g, qpow=-1)
    out = out.mul_monomial(tuple(-x for x in rho)).scale(erep.q(2 * wprime.length))
    if invert_v:
        out = out.specialize({"q": erep.q(-1)})
    return out


@dataclass(frozen=True)
class WhittakerValue:
    poly: QuasiPolynomial
    flavor: str
    prefactor: tuple = ()

    def to_json(self):
        return {"flavor": self.flavor, "prefactor": fmt_vector(self.prefactor), "poly": self.poly.to_json()}


def whittaker(mrep: Rep, flavor: str, lam, w: WeylElement | None = None) -> WhittakerValue:
    if flavor == "iwahori":
        return WhittakerValue(iwahori_whittaker(mrep, w or mrep.rs.W.e, lam), flavor)
    if flavor == "spherical":
        return WhittakerValue(spherical_whittaker(mrep, lam), flavor)
    if flavor == "dual":
        return WhittakerValue(dual_whittaker(mrep, lam), flavor)
    raise ValueError(f"unknown Whittaker flavor {flavor}")


# metaplectic components


def met_decompose_mu(datum: MetaplecticDatum, mu):
    """w0 mu = eta + what c with c a fixed representative, what in W^c, eta in the component lattice."""
    rs = datum.rs
    lat = datum.component_lattice()
    y = rs.W.w0.act(parse_vector(mu))
    for c in datum.C0_representatives():
        for what in rs.W.min_coset_reps(_J_of(rs, c)):
            eta = tuple(a - b for a, b in zip(y, what.act(c)))
            if lat.contains(eta):
                return tuple(int(x) for x in eta), what, c
    raise PreconditionError("mu is outside the span of the fixed representatives")


def phi_theta_split(mrep: Rep, mu, rho_p=None):
    """Split sum_w iota T^m_w iota y^{mu - rho'} into theta-components.

    Returns ({theta: y^{rho' - theta} * component}, rest) where the component
    collects exponents in theta - rho' + Lambda^m, theta runs over W-images of
    the fixed representatives, and ``rest`` holds exponents not reached by any
    such theta (possible outside GL, where the representatives may be
    incomplete).
    """
    rs = mrep.rs
    datum = mrep.datum
    lat = datum.component_lattice()
    rho_p = tuple(rs.rho_lattice if rho_p is None else rho_p)
    mu = parse_vector(mu)
    F = dual_whittaker(mrep, tuple(a - b for a, b in zip(mu, rho_p)))
    thetas = sorted({tuple(w.act(c)) for c in datum.C0_representatives() for w in rs.W.elements})
    out = {th: QuasiPolynomial.zero(rs, mrep.alphabet) for th in thetas}
    rest = QuasiPolynomial.zero(rs, mrep.alphabet)
    for xk, coeffs in F.grouped().items():
        y = tuple(Fraction(x, F.denom) for x in xk)
        for th in thetas:
            shifted = tuple(a - b + r for a, b, r in zip(y, th, rho_p))
            if lat.contains(shifted):
                part = QuasiPolynomial(rs, mrep.alphabet, {(tuple(int(x) for x in shifted), pk): v
                                                          for pk, v in coeffs.items()}, 1)
                out[th] = out[th] + part
                break
        else:
            rest = rest + QuasiPolynomial(rs, mrep.alphabet, {(xk, pk): v for pk, v in coeffs.items()}, F.denom)
    return out, rest


def phi_theta_definition(mrep: Rep, mu, rho_p=None) -> dict:
    """{theta: y^{rho' - theta} phi_theta} by direct component extraction."""
    return phi_theta_split(mrep, mu, rho_p)[0]


def _theta_support(datum, mu, theta):
    """Return (what, c, eta, wt) with w0 theta = wt c and w0 wt in W^c, or None."""
    rs = datum.rs
    W = rs.W
    eta, what, c = met_decompose_mu(datum, mu)
    theta = parse_vector(theta)
    for u in W.min_coset_reps(_J_of(rs, c)):
        if tuple(u.act(c)) == theta:
            return what, c, eta, W.w0 * u
    return None


def phi_theta_gamma(mrep: Rep, mu, theta) -> QuasiPolynomial:
    """y^{rho'-theta} phi_theta via gamma-extraction of pi^m_v(1^-) y^{-mu}."""
    rs = mrep.rs
    W = rs.W
    datum = mrep.datum
    sup = _theta_support(datum, mu, theta)
    if sup is None:
        return QuasiPolynomial.zero(rs, mrep.alphabet)
    what, c, eta, wt = sup
    mc = tuple(-x for x in W.w0.act(c))
    g = _sym(mrep, mrep.mono(tuple(-x for x in parse_vector(mu))), -1)
    lat = datum.component_lattice()
    dec = gamma_decompose(g, mc, lat, c0_test=lambda x: datum.is_in_C0(x, lat))
    wtc, _ = W.coset_decompose(wt, _J_of(rs, c))
    key = W.w0 * wtc * W.w0
    coef = dec.get(key, QuasiPolynomial.zero(rs, mrep.alphabet))
    return coef.iota().scale(mrep.q(2 * W.w0.length))


def coeffs_w0_closed(mrep: Rep, mu, theta, with_v: bool = False) -> QuasiPolynomial:
    """Closed form of w0 iota gamma^m_{w0 wt^c w0, -w0 c}(pi^m_v(1^-) y^{-mu})."""
    rs = mrep.rs
    W = rs.W
    w0 = W.w0
    datum = mrep.datum
    sup = _theta_support(datum, mu, theta)
    if sup is None:
        return QuasiPolynomial.zero(rs, mrep.alphabet)
    what, c, eta, wt = sup
    mc = tuple(-x for x in w0.act(c))
    Jm = _J_of(rs, mc)
    wtc, _ = W.coset_decompose(wt, _J_of(rs, c))
    a = w0 * wtc * w0
    b = w0 * what * w0
    num = F_coeff(mrep, mc, a, -1) * (-1) ** b.length
    den = h_m_stat(mrep, mc, b)
    if not den.is_unit():
        raise NonUnitError("h-statistic in the denominator is not a unit")
    g = _Tw_inv(mrep, b, mrep.mono(w0.act(eta)))
    g = _sym(mrep, g, -1, Jm)
    g = _Tw(mrep, wtc * w0, g)
    coef = num * den.inverse()
    if with_v:
        coef = coef * mrep.q(2 * w0.length)
    return g.scale(coef)


def phi_theta(mrep: Rep, theta, mu) -> WhittakerValue:
    """y^{rho' - theta} phi_theta (gamma route); the prefactor records y^{theta - rho'}."""
    rs = mrep.rs
    theta = parse_vector(theta)
    if len(theta) != rs.dim:
        raise PreconditionError("theta has the wrong dimension")
    datum = mrep.datum
    if not any(tuple(w.act(c)) == theta for c in datum.C0_representatives() for w in rs.W.elements):
        raise PreconditionError("theta is not a W-image of a fixed representative")
    mu = parse_vector(mu)
    if not rs.is_dominant(tuple(a - b for a, b in zip(mu, rs.rho_lattice))):
        raise PreconditionError("mu - rho is not dominant")
    pre = tuple(a - b for a, b in zip(theta, rs.rho_lattice))
    return WhittakerValue(phi_theta_gamma(mrep, mu, theta), "component-phi", pre)


def whitt_arb_closed(mrep: Rep, mu, theta) -> QuasiPolynomial:
    """w0(y^{rho'-theta} phi_theta) in closed form (zero off the support)."""
    return coeffs_w0_closed(mrep, mu, theta, with_v=True)


# GL_r duality


@dataclass(frozen=True)
class DualityConstants:
    C: ParamPoly
    Cprime: ParamPoly
    w: WeylElement
    wprime: WeylElement
    cvec: tuple
    J: frozenset
    n: int

    def to_json(self):
        return {"C": self.C.to_text(), "Cprime": self.Cprime.to_text(), "w": list(self.w.word),
                "wprime": list(self.wprime.word), "c": [int(x) for x in self.cvec], "J": sorted(self.J),
                "n": self.n}


def _cvec_J(rs, cvec):
    return frozenset(j for j in range(1, rs.rank + 1) if cvec[j - 1] == cvec[j])


def duality_constants(mrep: Rep, w: WeylElement, wprime: WeylElement, cvec) -> DualityConstants:
    rs = mrep.rs
    W = rs.W
    n = mrep.n
    cvec = tuple(int(x) for x in cvec)
    if any(not 1 <= x <= n for x in cvec) or any(a < b for a, b in zip(cvec, cvec[1:])):
        raise PreconditionError("c must be a weakly decreasing tuple in 1..n")
    J = _cvec_J(rs, cvec)
    _require_min_rep(W, wprime, J, "w'")
    _require_min_rep(W, W.w0 * w, J, "w0 w")
    w0 = W.w0
    num = h_m_stat(mrep, cvec, w0 * w)
    den = h_m_stat(mrep, cvec, wprime)
    if not den.is_unit():
        raise NonUnitError("h-statistic of w' is not a unit")
    lwc = W.longest(J).length
    C = num * den.inverse() * mrep.q(w.length - wprime.length + w0.length + 2 * lwc) * (-1) ** w0.length
    _, w_sub = W.coset_decompose(w, J)
    Cp = C * mrep.q(2 * (wprime.length - w_sub.length))
    return DualityConstants(C, Cp, w, wprime, cvec, J, n)


def gl_duality_data(rs: RootSystem, n: int, mu, theta):
    """Solve -mu = w' c and -w0 theta = w c (mod n); None when mu mod n is not a permutation of theta."""
    W = rs.W
    mu = tuple(int(x) for x in parse_vector(mu))
    theta = tuple(int(x) % n for x in parse_vector(theta))
    if sorted(x % n for x in mu) != sorted(theta):
        return None
    cvec = tuple(sorted(((-x) % n) or n for x in mu))[::-1]
    J = _cvec_J(rs, cvec)
    reps = W.min_coset_reps(J)

    def cong(a, b):
        return all((x - y) % n == 0 for x, y in zip(a, b))

    wprime = next(u for u in reps if cong(u.act(cvec), [-x for x in mu]))
    target = [-x for x in W.w0.act(theta)]
    w = next(W.w0 * u for u in reps if cong((W.w0 * u).act(cvec), target))
    lam_rho = tuple(x // n for x in mu)
    return cvec, w, wprime, lam_rho


def gl_duality_lhs_all(mrep: Rep, mu) -> dict:
    """{theta: w0(y^{(rho_GL - theta)/n} phi_theta(y^{1/n}))} for every theta in [0, n)^r."""
    rs = mrep.rs
    n = mrep.n
    comps = phi_theta_definition(mrep, mu, rs.rho_lattice)
    out = {}
    for th, f in comps.items():
        out[tuple(int(x) for x in th)] = f.rescale_exponents(Fraction(1, n)).act_weyl(rs.W.w0)
    return out


def gl_duality_rhs_operator(erep: Rep, consts: DualityConstants, lam_rho) -> QuasiPolynomial:
    """C T_{w} sum_{u in W_c} T_u T_{w'}^-1 y^{lambda + rho_GL} (operators at v^1/2)."""
    rs = erep.rs
    g = dw_word(erep, consts.wprime.word, erep.mono(lam_rho), inverse=True)
    s = sum_over_W(rs, lambda i, x: dw_word(erep, (i,), x), g, rs.W.parabolic(consts.J))
    return dw_word(erep, consts.w.word, s).scale(consts.C)


def gl_duality_rhs_parahoric(erep: Rep, consts: DualityConstants, lam_rho) -> QuasiPolynomial:
    """C' y^{rho_GL} psi^{J_c}_{w^c}(y; varpi^-lambda w'; v^-1)."""
    rs = erep.rs
    rho = rs.rho_lattice
    lam = tuple(a - b for a, b in zip(lam_rho, rho))
    wc, _ = rs.W.coset_decompose(consts.w, consts.J)
    psi = parahoric_whittaker(erep, consts.J, wc, lam, consts.wprime, invert_v=True)
    return psi.mul_monomial(rho).scale(consts.Cprime)


def whitt_duality_rhs(mrep: Rep, erep: Rep, mu, theta):
    """Right-hand sides of the duality: {"operator", "parahoric", "constants"} for GL,
    {"closed"} otherwise; None when theta lies off the support."""
    rs = mrep.rs
    if not rs.is_gl():
        sup = _theta_support(mrep.datum, mu, theta)
        return None if sup is None else {"closed": whitt_arb_closed(mrep, mu, theta)}
    dat = gl_duality_data(rs, mrep.n, mu, theta)
    if dat is None:
        return None
    cvec, w, wprime, lam_rho = dat
    consts = duality_constants(mrep, w, wprime, cvec)
    return {"operator": gl_duality_rhs_operator(erep, consts, lam_rho),
            "parahoric": gl_duality_rhs_parahoric(erep, consts, lam_rho), "constants": consts}


# epsilon-symmetric quasi-polynomials


def eps_symmetric_test(qrep: Rep, f: QuasiPolynomial, eps: int) -> bool:
    rs = qrep.rs
    for i in range(1, rs.rank + 1):
        t = qrep.t_poly(rs.orbit_of_simple(i), eps)
        if qrep.apply_gen(i, f) != f.scale(t * eps):
            return False
    return True


def _w0_parts(rs, c):
    J = _J_of(rs, c)
    w0c_up, w0c_low = rs.W.coset_decompose(rs.W.w0, J)
    return J, w0c_up, w0c_low


def qp_symm_conditions(prep: Rep, f: QuasiPolynomial, c, eps: int, lattice=None) -> bool:
    """Both coefficient conditions characterizing epsilon-symmetric quasi-polynomials."""
    rs = prep.rs
    W = rs.W
    w0 = W.w0
    lattice = lattice or Lattice.default(rs)
    c = parse_vector(c)
    J, w0_up, w0_low = _w0_parts(rs, c)
    dec = gamma_decompose(f, c, lattice)
    zero = QuasiPolynomial.zero(rs, prep.alphabet)
    top = dec.get(w0_up, zero)
    base = _w0_act(prep, top) if eps > 0 else _w0_act(prep, top).iota()
    if not is_J_symmetric(prep, base, J, eps):
        return False
    for w in W.min_coset_reps(J):
        if eps > 0:
            want = _w0_act(prep, _Tw_inv(prep, (w0 * w).inverse(), base)).scale(prep.t_of(w0_low))
        else:
            want = _w0_act(prep, _Tw(prep, w0 * w, base)).iota().scale(
                prep.t_of(w0_low) * (-1) ** (w0.length + w.length))
        if dec.get(w, zero) != want:
            return False
    return True


def quasi_duality_minus_factor(prep: Rep, c, what: WeylElement) -> ParamPoly:
    """(-1)^{l(what) + l(w0)} (t(w0_c) / t(w0))^2: the ratio phi_{c,-}(p^-_{mu + what c}) / p^{J_c,-}_{what^-1 mu}.

    Obtained by composing the closed gamma-coefficient of p^- at w0^c with phi_{c,-}.
    """
    rs = prep.rs
    W = rs.W
    w0c = W.longest(_J_of(rs, parse_vector(c)))
    return (prep.t_of(w0c) * prep.t_of(W.w0, -1)) ** 2 * (-1) ** (what.length + W.w0.length)


def phi_bij(prep: Rep, f: QuasiPolynomial, c, eps: int, lattice=None) -> QuasiPolynomial:
    rs = prep.rs
    lattice = lattice or Lattice.default(rs)
    c = parse_vector(c)
    J, w0_up, w0_low = _w0_parts(rs, c)
    top = gamma_decompose(f, c, lattice).get(w0_up, QuasiPolynomial.zero(rs, prep.alphabet))
    g = _w0_act(prep, top)
    if eps < 0:
        g = g.iota()
    return g.scale(prep.t_of(w0_low) * prep.t_of(rs.W.w0, -1))


def phi_bij_inv(prep: Rep, qrep: Rep, p: QuasiPolynomial, c, eps: int) -> QuasiPolynomial:
    rs = prep.rs
    W = rs.W
    w0 = W.w0
    c = parse_vector(c)
    J = _J_of(rs, c)
    if not is_J_symmetric(prep, p, J, eps):
        raise PreconditionError(f"argument is not J-partially {'symmetric' if eps > 0 else 'anti-symmetric'}")
    out = QuasiPolynomial.zero(rs, qrep.alphabet)
    for w in W.min_coset_reps(J):
        if eps > 0:
            coef = _w0_act(prep, _Tw_inv(prep, (w0 * w).inverse(), p))
        else:
            coef = _w0_act(prep, _Tw(prep, w0 * w, p)).iota().scale((-1) ** (w0.length + w.length))
        out = out + coef * qrep.mono(w.act(c))
    return out.scale(prep.t_of(w0))
