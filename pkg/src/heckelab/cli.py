"""Command-line front end: ``heckelab compute | verify | list``."""
from __future__ import annotations

import argparse
import json
import sys

from .coeffring import InexactDivision, NonUnitError
from .hecke import HeckeElement, basis_T, product
from .qpoly import QuasiPolynomial
from .reps import Rep
from .rootsys import (Lattice, MetaplecticDatum, PreconditionError, build_root_system, fmt_vector,
                      parse_vector)
from . import special as sp
from .verify import SUITES, SuiteConfig, UnknownSuite, default_jobs, run_suite

OBJECTS = {
    "p_pm": "pi^qp(1^sign) x^y  (--c, --y, --sign)",
    "ebar": "unnormalized E-bar limit  (--y)",
    "pJ": "partially (anti-)symmetric limit polynomial  (--lambda, --J, --sign)",
    "whittaker": "Whittaker function  (--flavor iwahori|spherical|dual|parahoric, --lambda, --n, --w, --J, --wprime)",
    "phi_theta": "theta-component y^{rho-theta} phi_theta  (--n, --mu, --theta)",
    "gamma": "gamma-coefficient of pi^qp(1^sign f T_what) x^c  (--c, --w, --what, --f, --sign, --route)",
    "hecke-product": "product of two Hecke elements  (--h1, --h2)",
    "duality-constants": "constants C, C' of the GL_r duality  (--n, --c, --w, --wprime)",
}


class UsageError(Exception):
    pass


def _word(text):
    if text is None or text.strip() in ("", "e"):
        return ()
    return tuple(int(x) for x in text.split(","))


def _sign(text):
    if text in ("+", "1", "+1", "plus"):
        return 1
    if text in ("-", "-1", "minus"):
        return -1
    raise UsageError(f"bad sign {text!r}")


def _need(args, *names):
    for nm in names:
        if getattr(args, nm) is None:
            raise UsageError(f"--{nm.replace('_', '-')} is required for this object")


def _system(args):
    if args.type is None or args.rank is None:
        raise UsageError("--type and --rank are required")
    try:
        return build_root_system(args.type, args.rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _lattice(rs, args):
    if args.lattice is None:
        return Lattice.default(rs)
    tag = args.lattice
    if rs.is_gl():
        if tag not in ("ZGL", "Z"):
            raise UsageError("GL supports only the lattice ZGL")
        return Lattice(rs, "ZGL")
    if tag not in ("Pv", "Qv"):
        raise UsageError("lattice must be Pv or Qv")
    return Lattice(rs, tag)


def _met(rs, args, tmode="equal"):
    datum = MetaplecticDatum(rs, args.n or 1)
    return Rep(rs, "met", datum=datum, tmode=tmode, gmode=args.gmode)


def _qp_value(f: QuasiPolynomial, var="x"):
    return {"kind": "quasi-polynomial", "text": f.to_text(var), **f.to_json()}


def _parse_hecke(rep, text):
    """``T:1,2`` (basis element), ``x:1,0`` (monomial), or HeckeElement JSON."""
    W = rep.rs.W
    text = text.strip()
    if text.startswith("T:"):
        return basis_T(rep, W.from_word(_word(text[2:])))
    if text.startswith("x:"):
        return HeckeElement.x(rep, parse_vector(text[2:]))
    try:
        return HeckeElement.from_json(rep, json.loads(text))
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot parse Hecke element {text!r}: {exc}") from None


def compute(args) -> dict:
    obj = args.object
    rs = _system(args)
    W = rs.W
    if obj == "p_pm":
        _need(args, "c", "y", "sign")
        qrep = Rep(rs, "qp")
        f = sp.p_pm(qrep, parse_vector(args.y), parse_vector(args.c), _sign(args.sign), _lattice(rs, args))
        return _qp_value(f)
    if obj == "ebar":
        _need(args, "y")
        return _qp_value(sp.ebar_limit(Rep(rs, "qp"), parse_vector(args.y)))
    if obj == "pJ":
        _need(args, "lambda_", "sign")
        J = [int(x) for x in args.J.split(",")] if args.J else []
        return _qp_value(sp.p_J(Rep(rs, "pol"), parse_vector(args.lambda_), J, _sign(args.sign)))
    if obj == "whittaker":
        _need(args, "lambda_")
        flavor = args.flavor or "spherical"
        lam = parse_vector(args.lambda_)
        if flavor == "parahoric":
            rep = _met(rs, args)
            erep = Rep(rs, "pol", tmode="equal", alphabet=rep.alphabet)
            J = [int(x) for x in args.J.split(",")] if args.J else []
            val = sp.parahoric_whittaker(erep, J, W.from_word(_word(args.w)), lam, W.from_word(_word(args.wprime)))
            return {**_qp_value(val, "y"), "flavor": flavor}
        rep = _met(rs, args)
        wv = sp.whittaker(rep, flavor, lam, W.from_word(_word(args.w)))
        return {**_qp_value(wv.poly, "y"), "flavor": flavor}
    if obj == "phi_theta":
        _need(args, "mu", "theta")
        rep = _met(rs, args)
        wv = sp.phi_theta(rep, parse_vector(args.theta), parse_vector(args.mu))
        return {**_qp_value(wv.poly, "y"), "flavor": wv.flavor, "prefactor_exponent": fmt_vector(wv.prefactor)}
    if obj == "gamma":
        _need(args, "c", "w", "what", "f", "sign")
        prep = Rep(rs, "pol")
        qrep = Rep(rs, "qp", alphabet=prep.alphabet)
        c = parse_vector(args.c)
        w, what = W.from_word(_word(args.w)), W.from_word(_word(args.what))
        f = prep.mono(parse_vector(args.f))
        s = _sign(args.sign)
        if args.route == "direct":
            val = sp.gamma_direct_qp(prep, qrep, w, what, f, c, s, _lattice(rs, args))
        else:
            val = sp.gamma_closed_qp(prep, w, what, f, c, s)
        return {**_qp_value(val), "route": args.route}
    if obj == "hecke-product":
        _need(args, "h1", "h2")
        rep = Rep(rs, "pol")
        h = product(_parse_hecke(rep, args.h1), _parse_hecke(rep, args.h2))
        return {"kind": "hecke-element", "text": repr(h), **h.to_json()}
    if obj == "duality-constants":
        _need(args, "n", "c")
        if not rs.is_gl():
            raise UsageError("duality constants are defined for GL only")
        rep = _met(rs, args)
        consts = sp.duality_constants(rep, W.from_word(_word(args.w)), W.from_word(_word(args.wprime)),
                                      [int(x) for x in args.c.split(",")])
        return {"kind": "duality-constants", **consts.to_json()}
    raise UsageError(f"unknown object {obj!r}")


def _print_value(val: dict, as_json: bool):
    if as_json:
        print(json.dumps(val, sort_keys=True, ensure_ascii=False))
    elif val.get("kind") == "duality-constants":
        print(f"C  = {val['C']}\nC' = {val['Cprime']}\nw = {val['w']}  w' = {val['wprime']}  c = {val['c']}")
    else:
        print(val.get("text"))


def _int_list(text):
    return [int(x) for x in text.split(",")] if text else None


def cmd_verify(args) -> int:
    systems = args.systems.split(",") if args.systems else None
    if systems is None and args.rank:
        systems = [f"{args.type or 'GL'}{args.rank}"]
    cfg = SuiteConfig(suite=args.suite, systems=systems, lattice=args.lattice, ns=_int_list(args.n_list),
                      radius=args.radius, seed=args.seed, samples=args.samples, gmode=args.gmode_filter,
                      max_rank=args.max_rank, flip_half=args.flip_half,
                      jobs=args.jobs if args.jobs is not None else default_jobs(), timing=args.timing)
    report = run_suite(cfg)
    text = report.dumps()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    s = report.summary
    line = (f"{report.suite}: {s['passed']} passed, {s['failed']} failed, {s['skipped']} skipped, "
            f"{s['deviations']} known deviations; oracle {s['oracle_checked']} checked, "
            f"{s['oracle_failures']} failed")
    if args.json and not args.out:
        print(text)
    elif args.json:
        print(json.dumps({"summary": s, "out": args.out}, sort_keys=True))
    else:
        print(line)
    return 0 if report.ok else 1


def cmd_list(args) -> int:
    data = {"suites": {k: v[2] for k, v in SUITES.items()}, "objects": OBJECTS}
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print("suites:")
        for k, v in data["suites"].items():
            print(f"  {k:20s} {v}")
        print("objects:")
        for k, v in OBJECTS.items():
            print(f"  {k:20s} {v}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="heckelab", description="Hecke-algebra dualities: compute and verify")
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp_):
        sp_.add_argument("--type", help="GL, A, B, C, D or G2")
        sp_.add_argument("--rank", type=int, help="rank (for GL: the size r of GL_r)")
        sp_.add_argument("--lattice", help="ZGL (GL), Pv or Qv")
        sp_.add_argument("--json", action="store_true", help="JSON output")

    c = sub.add_parser("compute", help="compute one object")
    c.add_argument("object", choices=sorted(OBJECTS))
    common(c)
    c.add_argument("--c")
    c.add_argument("--y")
    c.add_argument("--sign")
    c.add_argument("--lambda", dest="lambda_")
    c.add_argument("--J")
    c.add_argument("--w")
    c.add_argument("--what")
    c.add_argument("--wprime")
    c.add_argument("--f")
    c.add_argument("--mu")
    c.add_argument("--theta")
    c.add_argument("--n", type=int)
    c.add_argument("--flavor", choices=["iwahori", "spherical", "dual", "parahoric"])
    c.add_argument("--gmode", choices=["generic", "specialized"], default="generic")
    c.add_argument("--route", choices=["closed", "direct"], default="closed")
    c.add_argument("--h1")
    c.add_argument("--h2")

    v = sub.add_parser("verify", help="run an identity suite")
    common(v)
    v.add_argument("--suite", required=True)
    v.add_argument("--systems", help="comma-separated labels such as GL2,GL3,B2")
    v.add_argument("--n", dest="n_list", help="comma-separated metaplectic degrees")
    v.add_argument("--max-rank", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--radius", type=int)
    v.add_argument("--samples", type=int)
    v.add_argument("--gmode", dest="gmode_filter", choices=["generic", "specialized"])
    v.add_argument("--flip-half", action="store_true", help="perturb g_{n/2} on the metaplectic side")
    v.add_argument("--jobs", type=int, help="worker processes (default: $HECKELAB_JOBS or 1)")
    v.add_argument("--timing", action="store_true", help="include wall time in the report")
    v.add_argument("--out")

    ls = sub.add_parser("list", help="list suites and objects")
    ls.add_argument("--json", action="store_true")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.cmd == "list":
            return cmd_list(args)
        if args.cmd == "verify":
            if args.suite != "all" and args.suite not in SUITES:
                raise UnknownSuite(args.suite)
            return cmd_verify(args)
        _print_value(compute(args), args.json)
        return 0
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"heckelab: error: {exc}", file=sys.stderr)
        return 2
    except UnknownSuite as exc:
        print(f"heckelab: error: unknown suite {exc.args[0]!r} (see 'heckelab list')", file=sys.stderr)
        return 2
    except (PreconditionError, NonUnitError, InexactDivision) as exc:
        print(f"heckelab: precondition violated: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"heckelab: invalid input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
