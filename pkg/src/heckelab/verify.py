"""Named identity suites with machine-readable reports.

A suite is split into independent units (one per root system, lattice point,
parameter choice, ...).  Units are plain picklable dicts, so ``jobs > 1`` can
fan them out to worker processes; records are merged back in unit order,
which keeps reports byte-identical across job counts.
"""
from __future__ import annotations

import itertools
import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import oracles
from .coeffring import ParamPoly
from .hecke import HeckeElement, basis_T, basis_T_inv, gamma_H, lmul_T, product, symmetrizer
from .qpoly import QuasiPolynomial, gamma_decompose
from .reps import (ORACLE, Rep, apply_gen, apply_hecke, apply_symmetrizer, chi, d_m_map, dw_apply,
                   dw_apply_definition, dw_word, h_m_stat, h_stat, mdw_apply, mdw_word, nabla)
from .rootsys import Lattice, MetaplecticDatum, PreconditionError, build_root_system, fmt_vector
from . import special as sp

__all__ = ["SuiteConfig", "Report", "run_suite", "SUITES", "OPS", "UnknownSuite", "parse_system"]

OPS = (
    "ring_ops", "exact_divide", "specialize",
    "build_root_system", "weyl_enumerate", "inversion_set", "coset_decompose", "stabilizer_J", "is_in_C0",
    "metaplectic_lattice_membership", "j_dominant_decompose",
    "monomial", "act_weyl", "iota", "gamma_decompose",
    "gamma_H", "lmul_T", "product", "symmetrizer",
    "nabla", "chi", "apply_gen", "apply_hecke", "h_stat", "dw_apply", "mdw_apply", "d_m_map",
    "p_pm", "ebar_limit", "p_J", "A_pm_definition", "A_pm_closed", "gamma_closed_qp", "whittaker",
    "parahoric_whittaker", "phi_theta", "duality_constants", "whitt_duality_rhs", "eps_symmetric_test",
    "phi_bij", "phi_bij_inv",
)


class UnknownSuite(KeyError):
    pass


@dataclass
class SuiteConfig:
    suite: str
    systems: list[str] | None = None
    lattice: str | None = None
    ns: list[int] | None = None
    radius: int | None = None
    seed: int = 0
    samples: int | None = None
    gmode: str | None = None
    max_rank: int | None = None
    flip_half: bool = False
    jobs: int = 1
    timing: bool = False

    def public(self) -> dict:
        d = asdict(self)
        d.pop("jobs")
        d.pop("timing")
        return d


@dataclass
class Report:
    suite: str
    config: dict
    checks: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.summary.get("failed", 0) == 0 and self.summary.get("oracle_failures", 0) == 0

    def to_json(self) -> dict:
        return {"suite": self.suite, "config": self.config, "checks": self.checks, "summary": self.summary}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1, ensure_ascii=False)


# helpers


def parse_system(label: str):
    label = label.strip()
    if label == "G2":
        return build_root_system("G2", 2)
    kind = label.rstrip("0123456789")
    return build_root_system(kind, int(label[len(kind):]))


def _vec(v):
    return fmt_vector(v)


class _Ctx:
    """Per-unit record sink plus a log of touched operations."""

    def __init__(self, suite, unit):
        self.suite = suite
        self.unit = unit
        self.records = []
        self.touched = set()
        self.rng = random.Random(f"{unit.get('seed', 0)}|{suite}|{json.dumps(unit, sort_keys=True)}")

    def t(self, *ops):
        self.touched.update(ops)

    def _rec(self, cid, instance, status, witness=None, reason=None):
        r = {"id": cid, "instance": instance, "status": status}
        if witness is not None:
            r["witness"] = witness
        if reason is not None:
            r["reason"] = reason
        self.records.append(r)

    def eq(self, cid, instance, a, b):
        """Record an exact-equality check of two quasi-polynomials / ring elements."""
        if a == b:
            self._rec(cid, instance, "pass")
            return True
        if isinstance(a, QuasiPolynomial):
            diff = {"difference": (a - b).to_json(), "lhs": a.to_json(), "rhs": b.to_json()}
        else:
            diff = {"difference": str(a - b) if hasattr(a, "__sub__") else None, "lhs": str(a), "rhs": str(b)}
        self._rec(cid, instance, "fail", diff)
        return False

    def truth(self, cid, instance, cond, witness=None):
        self._rec(cid, instance, "pass" if cond else "fail", None if cond else (witness or {"value": False}))
        return cond

    def deviation(self, cid, instance, a, b, reason):
        """A documented mismatch with a literal published statement (not counted as a failure)."""
        self._rec(cid, instance, "known-deviation", {"difference": (a - b).to_json()}, reason)

    def skip(self, cid, instance, reason):
        self._rec(cid, instance, "skipped", reason=reason)


def _rand_vec(ctx, rs, radius, lattice=None, tries=200):
    for _ in range(tries):
        v = tuple(ctx.rng.randint(-radius, radius) for _ in range(rs.dim))
        if lattice is None or lattice.contains(v):
            return v
    raise RuntimeError("could not sample a lattice vector")


def _rand_dominant(ctx, rs, radius, shift=None):
    doms = _dominant_box(rs, radius)
    lam = ctx.rng.choice(doms)
    return lam if shift is None else tuple(a + b for a, b in zip(lam, shift))


def _dominant_box(rs, radius):
    return [v for v in itertools.product(range(-radius, radius + 1), repeat=rs.dim) if rs.is_dominant(v)]


def _met_lattice_vec(ctx, datum, radius):
    lat = datum.lattice()
    ms = [datum.m(o) for o in datum.rs.orbits]
    scale = 1
    for m in ms:
        scale = scale * m // __import__("math").gcd(scale, m)
    for _ in range(200):
        v = tuple(ctx.rng.randint(-radius * scale, radius * scale) for _ in range(datum.rs.dim))
        if lat.contains(v):
            return v
    return tuple(scale * ctx.rng.randint(-radius, radius) for _ in range(datum.rs.dim))


def _component_vec(ctx, datum, radius):
    lat = datum.component_lattice()
    for _ in range(400):
        v = tuple(ctx.rng.randint(-radius * datum.n, radius * datum.n) for _ in range(datum.rs.dim))
        if lat.contains(v):
            return v
    raise RuntimeError("could not sample a component-lattice vector")


def _braid_m(rs, i, j):
    p = rs.cartan[i - 1][j - 1] * rs.cartan[j - 1][i - 1]
    return {0: 2, 1: 3, 2: 4, 3: 6}[p]


def _default_lattice(rs, tag):
    if tag is None:
        return Lattice.default(rs)
    if rs.is_gl():
        return Lattice(rs, "ZGL")
    return Lattice(rs, tag)


def _systems(cfg, default):
    systems = cfg.systems or default
    out = []
    for s in systems:
        rs = parse_system(s)
        if cfg.max_rank is not None and rs.rank > cfg.max_rank:
            continue
        out.append(s)
    return out


# suite: Hecke relations in every representation


def _units_axioms(cfg):
    units = []
    radius = cfg.radius if cfg.radius is not None else 3
    for s in _systems(cfg, ["GL2", "GL3", "A2", "B2"]):
        rs = parse_system(s)
        units.append({"system": s, "flavor": "pol", "radius": radius})
        for c in rs.alcove_points(4, _default_lattice(rs, cfg.lattice)):
            units.append({"system": s, "flavor": "qp", "c": _vec(c), "radius": radius})
        for n in cfg.ns or [1, 2, 3]:
            units.append({"system": s, "flavor": "met", "n": n, "radius": radius})
        units.append({"system": s, "flavor": "algebra", "radius": radius})
    return units


def _orbit_sample(ctx, rs, radius, c, lattice, k):
    W = rs.W
    out = []
    for _ in range(k):
        mu = _rand_vec(ctx, rs, radius, lattice)
        w = ctx.rng.choice(W.elements)
        out.append(tuple(a + b for a, b in zip(mu, w.act(c))))
    return out


def _run_axioms(ctx, u):
    rs = parse_system(u["system"])
    ctx.t("build_root_system", "weyl_enumerate", "apply_gen", "monomial", "nabla", "ring_ops")
    W = rs.W
    R = u["radius"]
    flav = u["flavor"]
    samples = u.get("samples") or 3
    if flav == "algebra":
        _run_algebra(ctx, rs, u)
        return
    if flav == "pol":
        rep = Rep(rs, "pol")
        lat = Lattice.default(rs)
        ys = [_rand_vec(ctx, rs, R) for _ in range(samples)]
        lams = [_rand_vec(ctx, rs, R) for _ in range(samples)]
    elif flav == "qp":
        rep = Rep(rs, "qp")
        lat = Lattice.default(rs)
        c = tuple(Fraction(x) for x in u["c"])
        ctx.t("is_in_C0", "stabilizer_J", "chi")
        rs.stabilizer_J(c)
        ys = _orbit_sample(ctx, rs, R, c, lat, samples)
        lams = [_rand_vec(ctx, rs, R) for _ in range(samples)]
    else:
        datum = MetaplecticDatum(rs, u["n"])
        rep = Rep(rs, "met", datum=datum)
        lat = datum.lattice()
        ctx.t("metaplectic_lattice_membership")
        ys = [_rand_vec(ctx, rs, R) for _ in range(samples)]
        lams = [_met_lattice_vec(ctx, datum, max(1, R // 2)) for _ in range(samples)]
    inst = {k: v for k, v in u.items() if k != "radius"}
    # the relations themselves are cheap: run them on the whole box for pi and pi^m
    box = ys if flav == "qp" else list(itertools.product(range(-R, R + 1), repeat=rs.dim))
    for i in range(1, rs.rank + 1):
        orb = rs.orbit_of_simple(i)
        t, ti = rep.t_poly(orb), rep.t_poly(orb, -1)
        for y in box:
            f = rep.mono(y)
            Tf = rep.apply_gen(i, f)
            ctx.eq("quadratic", {**inst, "i": i, "y": _vec(y)}, rep.apply_gen(i, Tf), Tf.scale(t - ti) + f)
            ctx.eq("inverse", {**inst, "i": i, "y": _vec(y)}, rep.apply_gen(i, Tf, inverse=True), f)
        for y in ys:
            f = rep.mono(y)
            Tf = rep.apply_gen(i, f)
            if flav == "qp":
                a = rs.alpha(i, y)
                want = f.act_weyl(W.s(i)).scale(chi(rep, i, a)) + nabla(rep, i, f).scale(t - ti)
                ctx.eq("qp-action-formula", {**inst, "i": i, "y": _vec(y)}, Tf, want)
            for lam in lams:
                lhs = rep.apply_gen(i, f.mul_monomial(lam))
                rhs = Tf.mul_monomial(W.s(i).act(lam)) + nabla(rep, i, rep.mono(lam)).scale(t - ti) * f
                ctx.eq("commutation", {**inst, "i": i, "y": _vec(y), "lambda": _vec(lam)}, lhs, rhs)
    for i in range(1, rs.rank + 1):
        for j in range(i + 1, rs.rank + 1):
            m = _braid_m(rs, i, j)
            w1 = tuple(itertools.islice(itertools.cycle((i, j)), m))
            w2 = tuple(itertools.islice(itertools.cycle((j, i)), m))
            for y in box:
                f = rep.mono(y)
                ctx.eq("braid", {**inst, "i": i, "j": j, "y": _vec(y)},
                       rep.apply_word(w1, f), rep.apply_word(w2, f))


def _rand_hecke(ctx, rep, R, lattice=None, k=None):
    W = rep.rs.W
    elems = W.elements if k is None else ctx.rng.sample(W.elements, min(k, len(W.elements)))
    coeffs = {}
    for w in elems:
        y = _rand_vec(ctx, rep.rs, R, lattice) if lattice is not None else _rand_vec(ctx, rep.rs, R)
        coeffs[w] = rep.mono(y, ctx.rng.choice([1, -1, 2]))
    return HeckeElement(rep, coeffs)


def _run_algebra(ctx, rs, u):
    ctx.t("product", "lmul_T", "gamma_H", "symmetrizer", "apply_hecke", "inversion_set")
    W = rs.W
    rep = Rep(rs, "pol")
    inst = {"system": u["system"], "flavor": "algebra"}
    R = min(u["radius"], 2)
    one = HeckeElement.one(rep)
    for w in W.elements:
        # T_{w w0} = T_{w^-1}^-1 T_{w0}
        lhs = basis_T(rep, w * W.w0)
        rhs = product(basis_T_inv(rep, w.inverse()), basis_T(rep, W.w0))
        ctx.eq("Tww0", {**inst, "w": list(w.word)}, _H(lhs), _H(rhs))
        ctx.eq("T-times-inverse", {**inst, "w": list(w.word)},
               _H(product(basis_T(rep, w), basis_T_inv(rep, w))), _H(one))
        ctx.truth("inversion-set-size", {**inst, "w": list(w.word)}, len(w.inversion_set()) == w.length)
    for k in range(2):
        a, b, c = (_rand_hecke(ctx, rep, R, k=3) for _ in range(3))
        ctx.eq("associativity", {**inst, "sample": k}, _H(product(product(a, b), c)), _H(product(a, product(b, c))))
        f = rep.mono(_rand_vec(ctx, rs, R))
        ctx.eq("module", {**inst, "sample": k}, apply_hecke(rep, product(a, b), f),
               apply_hecke(rep, a, apply_hecke(rep, b, f)))
    for sign in (1, -1):
        S = symmetrizer(rep, sign)
        for i in range(1, rs.rank + 1):
            t = rep.t_poly(rs.orbit_of_simple(i), sign)
            ctx.eq("symmetrizer-absorption", {**inst, "sign": sign, "i": i},
                   _H(lmul_T(i, S)), _H(S.scale(t * sign)))
        g = gamma_H(product(S, S), W.e)
        ctx.truth("symmetrizer-square-nonzero", {**inst, "sign": sign}, not g.is_zero())


class _H:
    """Equality wrapper turning Hecke elements into comparable/serializable values."""

    def __init__(self, h):
        self.h = h

    def __eq__(self, other):
        return self.h == other.h

    def __sub__(self, other):
        return self.h - other.h

    def __str__(self):
        return repr(self.h)


# suite: n = 1 degeneration and the d_m intertwiner


def _units_n1(cfg):
    return [{"system": s, "samples": cfg.samples or 100, "radius": cfg.radius if cfg.radius is not None else 3}
            for s in _systems(cfg, ["GL2", "GL3", "A2", "B2"])]


def _run_n1(ctx, u):
    ctx.t("mdw_apply", "dw_apply", "d_m_map", "apply_gen", "whittaker")
    rs = parse_system(u["system"])
    W = rs.W
    R = u["radius"]
    d1 = MetaplecticDatum(rs, 1)
    pm = Rep(rs, "met", datum=d1)
    pp = Rep(rs, "pol", alphabet=pm.alphabet)
    em = Rep(rs, "met", datum=d1, tmode="equal")
    ep = Rep(rs, "pol", tmode="equal", alphabet=em.alphabet)
    rho = rs.rho_lattice
    mrho = tuple(-x for x in rho)
    for k in range(u["samples"]):
        y1, y2 = _rand_vec(ctx, rs, R), _rand_vec(ctx, rs, R)
        f = pm.mono(y1) + pm.mono(y2, -2)
        w = ctx.rng.choice(W.elements)
        inv = bool(ctx.rng.getrandbits(1))
        inst = {"system": u["system"], "sample": k, "w": list(w.word), "inverse": inv}
        if inv:
            a, b = pm.apply_word_inv(w.word, f), pp.apply_word_inv(w.word, f)
        else:
            a, b = pm.apply_word(w.word, f), pp.apply_word(w.word, f)
        ctx.eq("pi-m-equals-pi", inst, a, b)
        # T^m_w f against the Demazure-Whittaker chain: y^rho T_{i1,q}^-1 ... T_{il,q}^-1 y^-rho
        g = mdw_word(em, w.word, f)
        chain = f.mul_monomial(mrho)
        for i in reversed(w.word):
            chain = dw_apply(ep, i, chain, inverse=True)
        ctx.eq("Tm-equals-DW-chain", inst, g, chain.mul_monomial(rho))
        if w.word:
            i = w.word[0]
            # re-apply the generator through its defining fraction to undo the first letter
            back = dw_apply_definition(ep, i, g.mul_monomial(mrho)).mul_monomial(rho)
            ctx.eq("Tm-inverts-DW-definition", inst, back, mdw_word(em, W.lmul_gen(i, w).word, f))
    for k, lam in enumerate(_dominant_box(rs, 2)[: max(3, u["samples"] // 10)]):
        inst = {"system": u["system"], "lambda": _vec(lam)}
        ctx.eq("spherical-n1-DW", inst, sp.whittaker(em, "spherical", lam).poly, sp.spherical_whittaker_dw(ep, lam))
    for n in (2, 3):
        d = MetaplecticDatum(rs, n)
        if not d.is_constant_m():
            ctx.skip("d_m-intertwines", {"system": u["system"], "n": n}, "m(alpha) not constant")
            continue
        mr = Rep(rs, "met", datum=d)
        pr = Rep(rs, "pol", alphabet=mr.alphabet)
        for k in range(5):
            y = _rand_vec(ctx, rs, R)
            w = ctx.rng.choice(W.elements)
            f = pr.mono(y)
            ctx.eq("d_m-intertwines", {"system": u["system"], "n": n, "y": _vec(y), "w": list(w.word)},
                   mr.apply_word(w.word, d_m_map(d, f)), d_m_map(d, pr.apply_word(w.word, f)))


# suite: matrix coefficients of symmetrizers


def _units_HA(cfg):
    return [{"system": s, "samples": cfg.samples or 10, "radius": cfg.radius if cfg.radius is not None else 2}
            for s in _systems(cfg, ["GL2", "GL3", "B2", "A2"])]


def _run_HA(ctx, u):
    ctx.t("A_pm_definition", "A_pm_closed", "product", "symmetrizer", "gamma_H", "act_weyl", "iota")
    rs = parse_system(u["system"])
    W = rs.W
    rep = Rep(rs, "pol")
    for k in range(u["samples"]):
        y = _rand_vec(ctx, rs, u["radius"])
        f = rep.mono(y)
        for sign in (1, -1):
            for what in W.elements:
                h = sp.A_pm_definition_all(rep, what, f, sign)
                for w in W.elements:
                    inst = {"system": u["system"], "y": _vec(y), "sign": sign, "w": list(w.word),
                            "what": list(what.word)}
                    ctx.eq("main-HA", inst, gamma_H(h, w), sp.A_pm_closed(rep, w, what, f, sign))
    # assemble 1^sign h from closed-form coefficients
    for k in range(2):
        h = _rand_hecke(ctx, rep, u["radius"], k=2)
        for sign in (1, -1):
            full = product(symmetrizer(rep, sign), h)
            coeffs = {}
            for w in W.elements:
                acc = QuasiPolynomial.zero(rs, rep.alphabet)
                for what, fw in h.items():
                    acc = acc + sp.A_pm_closed(rep, w, what, fw, sign)
                coeffs[w] = acc
            ctx.eq("PBW-assembly", {"system": u["system"], "sample": k, "sign": sign},
                   _H(full), _H(HeckeElement(rep, coeffs)))
    ctx.eq("A-definition-single", {"system": u["system"]},
           sp.A_pm_definition(rep, W.w0, W.e, rep.mono([0] * rs.dim), 1), rep.mono([0] * rs.dim).scale(rep.t_of(W.w0)))


# suite: XT formulas and gamma corollaries


def _units_XT(cfg):
    units = []
    R = cfg.radius if cfg.radius is not None else 2
    for s in _systems(cfg, ["GL2", "GL3", "A2", "B2"]):
        rs = parse_system(s)
        for c in rs.alcove_points(4, _default_lattice(rs, cfg.lattice)):
            units.append({"system": s, "kind": "qp", "c": _vec(c), "radius": R})
        for n in cfg.ns or [1, 2, 3]:
            units.append({"system": s, "kind": "met", "n": n, "radius": R, "gmode": cfg.gmode or "generic"})
    return units


def _run_XT(ctx, u):
    ctx.t("apply_hecke", "h_stat", "gamma_decompose", "coset_decompose")
    rs = parse_system(u["system"])
    W = rs.W
    R = u["radius"]
    if u["kind"] == "qp":
        c = tuple(Fraction(x) for x in u["c"])
        qrep = Rep(rs, "qp")
        lat = Lattice.default(rs)
        J = rs.stabilizer_J(c)
        mu = _rand_vec(ctx, rs, R)
        for w in W.elements:
            h = HeckeElement(qrep.variant(flavor="pol"), {w: qrep.mono(mu)})
            lhs = apply_hecke(qrep, h, qrep.mono(c))
            rhs = qrep.mono(tuple(a + b for a, b in zip(mu, w.act(c)))).scale(h_stat(qrep, c, w))
            ctx.eq("XT-qp", {"system": u["system"], "c": u["c"], "mu": _vec(mu), "w": list(w.word)}, lhs, rhs)
        prep = qrep.variant(flavor="pol")
        h = _rand_hecke(ctx, prep, R)
        dec = gamma_decompose(apply_hecke(qrep, h, qrep.mono(c)), c, lat)
        for w in W.min_coset_reps(J):
            want = QuasiPolynomial.zero(rs, qrep.alphabet)
            for uu in W.parabolic(J):
                want = want + h.gamma(w * uu).scale(qrep.t_of(uu))
            got = dec.get(w, QuasiPolynomial.zero(rs, qrep.alphabet))
            ctx.eq("gammas-qp", {"system": u["system"], "c": u["c"], "w": list(w.word)}, got, want)
        return
    ctx.t("metaplectic_lattice_membership")
    datum = MetaplecticDatum(rs, u["n"])
    mrep = Rep(rs, "met", datum=datum, gmode=u["gmode"])
    clat = datum.component_lattice()
    for c in datum.C0_representatives():
        J = frozenset(i for i in range(1, rs.rank + 1) if rs.alpha(i, c) == 0)
        mu = _met_lattice_vec(ctx, datum, 1)
        for w in W.elements:
            h = HeckeElement(mrep, {w: mrep.mono(mu)})
            lhs = apply_hecke(mrep, h, mrep.mono(c))
            rhs = mrep.mono(tuple(a + b for a, b in zip(mu, w.act(c)))).scale(h_m_stat(mrep, c, w))
            ctx.eq("XT-met", {"system": u["system"], "n": u["n"], "c": _vec(c), "mu": _vec(mu),
                              "w": list(w.word)}, lhs, rhs)
        # coefficients from the component lattice, so that x^{wc} stays a free basis
        h = HeckeElement(mrep, {w: mrep.mono(_component_vec(ctx, datum, 1)) for w in W.elements})
        dec = gamma_decompose(apply_hecke(mrep, h, mrep.mono(c)), c, clat,
                              c0_test=lambda x: datum.is_in_C0(x, clat))
        for w in W.min_coset_reps(J):
            want = QuasiPolynomial.zero(rs, mrep.alphabet)
            for uu in W.parabolic(J):
                want = want + h.gamma(w * uu).scale(mrep.t_of(uu))
            got = dec.get(w, QuasiPolynomial.zero(rs, mrep.alphabet))
            ctx.eq("met-coeffs", {"system": u["system"], "n": u["n"], "c": _vec(c), "w": list(w.word)},
                   got, want.scale(h_m_stat(mrep, c, w)))


# suite: quasi-polynomial duality


def _units_qp(cfg):
    units = []
    for s in _systems(cfg, ["GL2", "GL3", "B2"]):
        rs = parse_system(s)
        for c in rs.alcove_points(4, _default_lattice(rs, cfg.lattice)):
            units.append({"system": s, "c": _vec(c), "samples": cfg.samples or 5,
                          "radius": cfg.radius if cfg.radius is not None else 2})
    return units


def _run_qp(ctx, u):
    ctx.t("gamma_closed_qp", "p_pm", "gamma_decompose", "product", "apply_hecke", "coset_decompose")
    rs = parse_system(u["system"])
    W = rs.W
    c = tuple(Fraction(x) for x in u["c"])
    prep = Rep(rs, "pol")
    qrep = Rep(rs, "qp", alphabet=prep.alphabet)
    J = rs.stabilizer_J(c)
    reps = W.min_coset_reps(J)
    for k in range(u["samples"]):
        mu = _rand_vec(ctx, rs, u["radius"])
        f = prep.mono(mu)
        for sign in (1, -1):
            for what in reps:
                h = product(symmetrizer(prep, sign), HeckeElement(prep, {what: f}))
                dec = gamma_decompose(apply_hecke(qrep, h, qrep.mono(c)), c, Lattice.default(rs))
                for w in reps:
                    got = dec.get(w, QuasiPolynomial.zero(rs, qrep.alphabet))
                    inst = {"system": u["system"], "c": u["c"], "mu": _vec(mu), "sign": sign,
                            "w": list(w.word), "what": list(what.word)}
                    ctx.eq("qp-gamma", inst, got, sp.gamma_closed_qp(prep, w, what, f, c, sign))
                y = tuple(a + b for a, b in zip(mu, what.act(c)))
                ctx.eq("qp-main", {"system": u["system"], "c": u["c"], "y": _vec(y), "sign": sign},
                       sp.p_pm(qrep, y, c, sign), sp.p_pm_closed(prep, qrep, y, c, sign))


# suite: metaplectic duality


def _met_configs(cfg, default):
    out = []
    for s, n in default:
        if cfg.systems and s not in cfg.systems:
            continue
        if cfg.ns and n not in cfg.ns:
            continue
        if cfg.max_rank is not None and parse_system(s).rank > cfg.max_rank:
            continue
        out.append((s, n))
    return out


def _units_met(cfg):
    gmodes = [cfg.gmode] if cfg.gmode else ["generic", "specialized"]
    units = []
    for s, n in _met_configs(cfg, [("GL2", 2), ("GL2", 3), ("GL3", 2), ("A2", 2), ("B2", 2)]):
        for gm in gmodes:
            units.append({"system": s, "n": n, "gmode": gm, "part": "main", "samples": cfg.samples or 2})
            units.append({"system": s, "n": n, "gmode": gm, "part": "components",
                          "radius": cfg.radius if cfg.radius is not None else 1})
    return units


def _run_met(ctx, u):
    rs = parse_system(u["system"])
    W = rs.W
    datum = MetaplecticDatum(rs, u["n"])
    mrep = Rep(rs, "met", datum=datum, tmode="equal", gmode=u["gmode"])
    base = {"system": u["system"], "n": u["n"], "gmode": u["gmode"]}
    if u["part"] == "main":
        ctx.t("h_stat", "gamma_decompose", "product")
        for c in datum.C0_representatives():
            J = frozenset(i for i in range(1, rs.rank + 1) if rs.alpha(i, c) == 0)
            reps = W.min_coset_reps(J)
            for k in range(u["samples"]):
                mu = _component_vec(ctx, datum, 1)
                f = mrep.mono(mu)
                for sign in (1, -1):
                    for what in reps:
                        for w in reps:
                            inst = {**base, "c": _vec(c), "mu": _vec(mu), "sign": sign, "w": list(w.word),
                                    "what": list(what.word)}
                            ctx.eq("met-main", inst, sp.gamma_direct_met(mrep, w, what, f, c, sign),
                                   sp.gamma_closed_met(mrep, w, what, f, c, sign))
        return
    ctx.t("phi_theta", "whitt_duality_rhs", "whittaker", "iota", "act_weyl")
    rho = rs.rho_lattice
    gen = mrep.variant(gmode="generic") if u["gmode"] == "specialized" else None
    for lam in _dominant_box(rs, u["radius"]):
        mu = tuple(a + b for a, b in zip(lam, rho))
        inst0 = {**base, "mu": _vec(mu)}
        comps, rest = sp.phi_theta_split(mrep, mu)
        try:
            sp.met_decompose_mu(datum, mu)
        except PreconditionError:
            ctx.skip("components", inst0, "w0 mu outside the span of the fixed representatives")
            continue
        ctx.truth("components-complete", inst0, rest.is_zero(), {"rest": rest.to_json()})
        total = QuasiPolynomial.zero(rs, mrep.alphabet)
        for th, val in comps.items():
            inst = {**inst0, "theta": _vec(th)}
            ctx.eq("phi-to-gamma", inst, sp.phi_theta(mrep, th, mu).poly, val)
            rhs = sp.whitt_duality_rhs(mrep, None, mu, th) if not rs.is_gl() else None
            closed = rhs["closed"] if rhs else sp.whitt_arb_closed(mrep, mu, th)
            ctx.eq("whitt-arb", inst, closed, val.act_weyl(W.w0))
            total = total + val.mul_monomial(th)
        dual = sp.whittaker(mrep, "dual", lam).poly
        ctx.eq("components-sum", inst0, total, dual.mul_monomial(rho))
        sph = sp.whittaker(mrep, "spherical", lam).poly
        ctx.eq("dual-is-w0-spherical", inst0, dual, sph.act_weyl(W.w0))
        ctx.eq("dual-is-iota-spherical", inst0, dual,
               sp.spherical_whittaker(mrep, tuple(-x for x in W.w0.act(lam))).iota())
        ctx.eq("spherical-antisymmetrizer", inst0, sph, sp.spherical_whittaker_antisym(mrep, lam))
        if gen is not None:
            ctx.t("specialize")
            spec = {}
            for sym in mrep.alphabet.names:
                if sym.startswith("g"):
                    spec[sym] = -ParamPoly.symbol(mrep.alphabet, "q", -1)
            ctx.eq("specialization-commutes", inst0, sp.whittaker(gen, "spherical", lam).poly.specialize(spec), sph)


# suite: GL_r parahoric-metaplectic duality


def _units_gl_duality(cfg):
    gmodes = [cfg.gmode] if cfg.gmode else ["generic", "specialized"]
    units = []
    for s, n in _met_configs(cfg, [("GL2", 1), ("GL2", 2), ("GL2", 3), ("GL3", 2)]):
        if not s.startswith("GL"):
            continue
        for gm in gmodes:
            units.append({"system": s, "n": n, "gmode": gm, "radius": cfg.radius if cfg.radius is not None else 2,
                          "flip_half": bool(cfg.flip_half)})
    return units


def _run_gl_duality(ctx, u):
    ctx.t("duality_constants", "whitt_duality_rhs", "parahoric_whittaker", "dw_apply", "mdw_apply", "phi_theta")
    rs = parse_system(u["system"])
    n = u["n"]
    datum = MetaplecticDatum(rs, n)
    mrep = Rep(rs, "met", datum=datum, tmode="equal", gmode=u["gmode"])
    lhs_rep = mrep.variant(half_sign=1) if u["flip_half"] else mrep
    erep = Rep(rs, "pol", tmode="equal", alphabet=mrep.alphabet)
    rho = rs.rho_lattice
    base = {"system": u["system"], "n": n, "gmode": u["gmode"]}
    if u["flip_half"]:
        base["flip_half"] = True
    for lam in _dominant_box(rs, u["radius"]):
        mu = tuple(a + b for a, b in zip(lam, rho))
        lhs = sp.gl_duality_lhs_all(lhs_rep, mu)
        for th, val in sorted(lhs.items()):
            inst = {**base, "mu": _vec(mu), "theta": _vec(th)}
            rhs = sp.whitt_duality_rhs(mrep, erep, mu, th)
            if rhs is None:
                ctx.truth("support", inst, val.is_zero(), {"lhs": val.to_json()})
                continue
            C = rhs["constants"]
            inst.update({"c": [int(x) for x in C.cvec], "w": list(C.w.word), "wprime": list(C.wprime.word)})
            ctx.eq("operator-form", inst, val, rhs["operator"])
            ctx.eq("parahoric-form", inst, val, rhs["parahoric"])


# suite: Casselman-Shalika oracle


def _units_cs(cfg):
    return [{"system": s, "radius": cfg.radius if cfg.radius is not None else 2}
            for s in _systems(cfg, ["GL2", "GL3"]) if s.startswith("GL")]


def _from_oracle(rep, data):
    rs = rep.rs
    out = QuasiPolynomial.zero(rs, rep.alphabet)
    for (e, qp), v in data.items():
        out = out + rep.mono(e, v).scale(rep.q(qp))
    return out


def _run_cs(ctx, u):
    ctx.t("whittaker", "mdw_apply")
    rs = parse_system(u["system"])
    mrep = Rep(rs, "met", datum=MetaplecticDatum(rs, 1), tmode="equal")
    for lam in _dominant_box(rs, u["radius"]):
        got = sp.whittaker(mrep, "spherical", lam).poly
        ctx.eq("casselman-shalika", {"system": u["system"], "lambda": _vec(lam)}, got,
               _from_oracle(mrep, oracles.casselman_shalika_gl(lam)))


# suite: epsilon-symmetric quasi-polynomials


def _units_eps(cfg):
    units = []
    for s in _systems(cfg, ["GL2", "GL3", "B2"]):
        rs = parse_system(s)
        units.append({"system": s, "part": "bijection", "samples": cfg.samples or 50,
                      "radius": cfg.radius if cfg.radius is not None else 2})
        for c in rs.alcove_points(4, _default_lattice(rs, cfg.lattice)):
            units.append({"system": s, "part": "duality", "c": _vec(c), "samples": 5,
                          "radius": cfg.radius if cfg.radius is not None else 2})
    return units


def _run_eps(ctx, u):
    ctx.t("eps_symmetric_test", "phi_bij", "phi_bij_inv", "p_pm", "p_J", "j_dominant_decompose",
          "coset_decompose", "gamma_decompose")
    rs = parse_system(u["system"])
    W = rs.W
    prep = Rep(rs, "pol")
    qrep = Rep(rs, "qp", alphabet=prep.alphabet)
    lat = Lattice.default(rs)
    R = u["radius"]
    if u["part"] == "bijection":
        pts = rs.alcove_points(4, lat)
        for k in range(u["samples"]):
            c = ctx.rng.choice(pts)
            J = rs.stabilizer_J(c)
            eps = ctx.rng.choice([1, -1])
            ys = _orbit_sample(ctx, rs, R, c, lat, 2)
            g = qrep.mono(ys[0]) + qrep.mono(ys[1], -3)
            f = apply_symmetrizer(qrep, g, eps)
            inst = {"system": u["system"], "c": _vec(c), "eps": eps, "sample": k}
            ctx.truth("symmetrized-is-eps", inst, sp.eps_symmetric_test(qrep, f, eps))
            ctx.truth("conditions-hold", inst, sp.qp_symm_conditions(prep, f, c, eps))
            p = sp.phi_bij(prep, f, c, eps)
            ctx.eq("phi-inverse-phi", inst, sp.phi_bij_inv(prep, qrep, p, c, eps), f)
            # perturbation: both the eigen-test and the coefficient conditions must fail together
            pert = f + qrep.mono(ys[0])
            a, b = sp.eps_symmetric_test(qrep, pert, eps), sp.qp_symm_conditions(prep, pert, c, eps)
            ctx.truth("test-iff-conditions", {**inst, "perturbed": True}, a == b, {"test": a, "conditions": b})
            # the other direction of the bijection, from a J_c-partially symmetrized polynomial
            y = _rand_vec(ctx, rs, R)
            pp = apply_symmetrizer(prep, prep.mono(y) + prep.mono(_rand_vec(ctx, rs, R), 2), eps, J)
            ctx.eq("phi-phi-inverse", {**inst, "y": _vec(y)}, sp.phi_bij(prep, sp.phi_bij_inv(prep, qrep, pp, c, eps),
                                                                         c, eps), pp)
            # Hecke-symmetrizer invariances on F[Lambda]
            w = ctx.rng.choice(W.elements)
            h = prep.mono(y)
            ctx.eq("plus-w-invariant", {**inst, "w": list(w.word)}, apply_symmetrizer(prep, h, 1).act_weyl(w),
                   apply_symmetrizer(prep, h, 1))
            ctx.eq("minus-w-alternating", {**inst, "w": list(w.word)}, apply_symmetrizer(prep, h.act_weyl(w), -1),
                   apply_symmetrizer(prep, h, -1).scale((-1) ** w.length))
        return
    c = tuple(Fraction(x) for x in u["c"])
    J = rs.stabilizer_J(c)
    w0c = W.longest(J)
    doms = _dominant_box(rs, R)
    for k in range(u["samples"]):
        mu = ctx.rng.choice(doms)
        Jmu = frozenset(i for i in range(1, rs.rank + 1) if rs.alpha(i, mu) == 0)
        for what in W.min_coset_reps(J):
            y = tuple(a + b for a, b in zip(mu, what.act(c)))
            lam = what.inverse().act(mu)
            for sign in (1, -1):
                inst = {"system": u["system"], "c": u["c"], "mu": _vec(mu), "what": list(what.word), "sign": sign}
                if not W.in_min_coset_reps(what.inverse(), Jmu):
                    ctx.skip("quasi-duality", inst, "what^-1 is not minimal modulo the stabilizer of mu, so the "
                                                    "partially symmetric polynomial is indexed by another element")
                    continue
                lhs = sp.phi_bij(prep, sp.p_pm(qrep, y, c, sign), c, sign)
                rhs = sp.p_J(prep, lam, J, sign)
                if sign > 0:
                    ctx.eq("quasi-duality", inst, lhs, rhs)
                    continue
                fac = sp.quasi_duality_minus_factor(prep, c, what)
                ctx.eq("quasi-duality-normalized", inst, lhs, rhs.scale(fac))
                if lhs == rhs:
                    ctx.eq("quasi-duality", inst, lhs, rhs)
                else:
                    ctx.deviation("quasi-duality", inst, lhs, rhs,
                                  "literal minus-sign statement; holds after the normalization factor")


# suite: limits, Whittaker examples


def _units_limits(cfg):
    return [{"system": s, "radius": cfg.radius if cfg.radius is not None else 2}
            for s in _systems(cfg, ["GL2", "GL3", "A2", "B2"])]


def _run_limits(ctx, u):
    ctx.t("ebar_limit", "p_pm", "p_J", "parahoric_whittaker", "whittaker", "j_dominant_decompose", "exact_divide")
    rs = parse_system(u["system"])
    W = rs.W
    prep = Rep(rs, "pol")
    qrep = Rep(rs, "qp", alphabet=prep.alphabet)
    lat = Lattice.default(rs)
    R = u["radius"]
    for c in rs.alcove_points(2, lat):
        for y in _orbit_sample(ctx, rs, R, c, lat, 3):
            inst = {"system": u["system"], "c": _vec(c), "y": _vec(y)}
            ym = rs.antidominant_rep(y)
            ctx.eq("ebar-antidominant", {**inst, "y": _vec(ym)}, sp.ebar_limit(qrep, ym), qrep.mono(ym))
            e = sp.ebar_limit(qrep, y)
            ctx.truth("ebar-leading-unit", inst, e.coefficient(y).is_unit(), {"coefficient": str(e.coefficient(y))})
    for lam in _dominant_box(rs, R)[:6]:
        ctx.eq("p-plus-c0", {"system": u["system"], "lambda": _vec(lam)}, sp.p_pm(qrep, lam, [0] * rs.dim, 1),
               apply_symmetrizer(prep, prep.mono(lam), 1))
        ctx.eq("pJ-empty", {"system": u["system"], "lambda": _vec(lam)}, sp.p_J(prep, lam, [], 1), prep.mono(lam))
        full = frozenset(range(1, rs.rank + 1))
        ctx.eq("pJ-full", {"system": u["system"], "lambda": _vec(lam)}, sp.p_J(prep, lam, full, 1),
               apply_symmetrizer(prep, prep.mono(lam), 1))
    erep = Rep(rs, "pol", tmode="equal", alphabet=Rep(rs, "met", datum=MetaplecticDatum(rs, 1)).alphabet)
    rho = rs.rho_lattice
    for w in W.elements:
        for wp in W.elements:
            lam = tuple(0 for _ in rho)
            got = sp.parahoric_whittaker(erep, [], w, lam, wp)
            g = dw_word(erep, wp.word, erep.mono(rho), inverse=True, qpow=-1)
            want = dw_word(erep, w.word, g, qpow=-1).mul_monomial(tuple(-x for x in rho)).scale(erep.q(2 * wp.length))
            ctx.eq("parahoric-J-empty", {"system": u["system"], "w": list(w.word), "wprime": list(wp.word)}, got, want)
    mrep = Rep(rs, "met", datum=MetaplecticDatum(rs, 1), tmode="equal")
    for lam in _dominant_box(rs, 1):
        ctx.eq("iwahori-identity", {"system": u["system"], "lambda": _vec(lam)},
               sp.whittaker(mrep, "iwahori", lam, W.e).poly, mrep.mono(W.w0.act(lam)))
        total = QuasiPolynomial.zero(rs, mrep.alphabet)
        for w in W.elements:
            total = total + sp.whittaker(mrep, "iwahori", lam, w).poly
        ctx.eq("iwahori-sum-spherical", {"system": u["system"], "lambda": _vec(lam)}, total,
               sp.whittaker(mrep, "spherical", lam).poly)


# registry


SUITES = {
    "hecke-axioms": (_units_axioms, _run_axioms, "Hecke relations for pi, pi^qp and pi^m (generators, braid, "
                                                   "commutation) and algebra-level identities"),
    "n1-degeneration": (_units_n1, _run_n1, "n = 1 metaplectic objects against the non-metaplectic ones; d_m"),
    "thm-main-HA": (_units_HA, _run_HA, "matrix coefficients of symmetrizers: definition vs closed form"),
    "xt-formula": (_units_XT, _run_XT, "x^mu T_w on x^c and gamma-coefficient corollaries (qp and metaplectic)"),
    "qp-duality": (_units_qp, _run_qp, "closed gamma-coefficients of pi^qp(1^pm f T) x^c"),
    "met-duality": (_units_met, _run_met, "metaplectic closed forms, phi_theta components, Whittaker relations"),
    "thm-1.1-GLr": (_units_gl_duality, _run_gl_duality, "GL_r parahoric-metaplectic Whittaker duality with constants"),
    "casselman-shalika": (_units_cs, _run_cs, "spherical Whittaker vs product formula oracle"),
    "eps-symmetric": (_units_eps, _run_eps, "epsilon-symmetric quasi-polynomials, bijection and duality"),
    "limits": (_units_limits, _run_limits, "E-bar limits, partially symmetric polynomials, Whittaker examples"),
}


def _units_for(cfg: SuiteConfig):
    if cfg.suite not in SUITES:
        raise UnknownSuite(cfg.suite)
    units = SUITES[cfg.suite][0](cfg)
    for k, u in enumerate(units):
        u["seed"] = cfg.seed
        u["unit"] = k
    return units


def _run_unit(suite: str, unit: dict):
    ORACLE.reset()
    ctx = _Ctx(suite, unit)
    ctx.t("run_suite")
    try:
        SUITES[suite][1](ctx, unit)
    except PreconditionError as exc:
        ctx.skip("unit", {k: v for k, v in unit.items() if k not in ("seed",)}, f"precondition: {exc}")
    if ORACLE.checked:
        ctx.t("exact_divide", "nabla")
    return ctx.records, sorted(ctx.touched), ORACLE.checked, [str(x) for x in ORACLE.failures]


_STATUS_KEY = {"pass": "passed", "fail": "failed", "skipped": "skipped", "known-deviation": "deviations"}


def run_suite(cfg: SuiteConfig) -> Report:
    """Run one named suite (or ``all``) and return its report."""
    start = time.perf_counter()
    names = list(SUITES) if cfg.suite == "all" else [cfg.suite]
    for n in names:
        if n not in SUITES:
            raise UnknownSuite(n)
    jobs = max(1, int(cfg.jobs or 1))
    tasks = []
    for name in names:
        sub = SuiteConfig(**{**asdict(cfg), "suite": name})
        tasks.extend((name, u) for u in _units_for(sub))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_unit, [t[0] for t in tasks], [t[1] for t in tasks]))
    else:
        results = [_run_unit(name, u) for name, u in tasks]
    checks = []
    touched = set()
    oracle_checked = 0
    oracle_failures = []
    per_suite: dict = {}
    for (name, u), (records, tch, oc, of) in zip(tasks, results):
        touched.update(tch)
        oracle_checked += oc
        oracle_failures.extend(of)
        for k, r in enumerate(records):
            r = dict(r)
            r["id"] = f"{name}/{r['id']}/{u['unit']}.{k}"
            checks.append(r)
            s = per_suite.setdefault(name, {"passed": 0, "failed": 0, "skipped": 0, "deviations": 0})
            s[_STATUS_KEY[r["status"]]] += 1
    summary = {
        "total": len(checks),
        "passed": sum(r["status"] == "pass" for r in checks),
        "failed": sum(r["status"] == "fail" for r in checks),
        "skipped": sum(r["status"] == "skipped" for r in checks),
        "deviations": sum(r["status"] == "known-deviation" for r in checks),
        "oracle_checked": oracle_checked,
        "oracle_failures": len(oracle_failures),
        "per_suite": per_suite,
        "ops_touched": sorted(touched & set(OPS) | ({"run_suite"} & touched)),
    }
    if cfg.suite == "all":
        missing = sorted(set(OPS) - touched)
        summary["coverage_missing"] = missing
        assert not missing, f"suites do not touch: {missing}"
    if cfg.timing:
        summary["wall_time_s"] = round(time.perf_counter() - start, 3)
    return Report(cfg.suite, cfg.public(), checks, summary)


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("HECKELAB_JOBS", "1")))
    except ValueError:
        return 1
