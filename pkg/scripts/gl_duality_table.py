"""Tabulate the GL_r Whittaker duality: for each mu and theta, the data (c, w, w'), C, C' and the check result."""
import argparse
import itertools

from heckelab import special as sp
from heckelab.reps import Rep
from heckelab.rootsys import MetaplecticDatum, build_root_system


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rank", type=int, default=2, help="r in GL_r")
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--radius", type=int, default=1)
    ap.add_argument("--gmode", choices=["generic", "specialized"], default="generic")
    args = ap.parse_args(argv)
    rs = build_root_system("GL", args.rank)
    mrep = Rep(rs, "met", datum=MetaplecticDatum(rs, args.n), tmode="equal", gmode=args.gmode)
    erep = Rep(rs, "pol", tmode="equal", alphabet=mrep.alphabet)
    rho = rs.rho_lattice
    print(f"{'mu':>10s} {'theta':>10s} {'c':>10s} {'w':>8s} {'wprime':>8s}  {'C':>16s} {'Cprime':>16s}  ok")
    R = args.radius
    for lam in itertools.product(range(-R, R + 1), repeat=rs.dim):
        if not rs.is_dominant(lam):
            continue
        mu = tuple(a + b for a, b in zip(lam, rho))
        for th, lhs in sorted(sp.gl_duality_lhs_all(mrep, mu).items()):
            rhs = sp.whitt_duality_rhs(mrep, erep, mu, th)
            if rhs is None:
                print(f"{str(mu):>10s} {str(th):>10s} {'-':>10s} {'-':>8s} {'-':>8s}  {'0':>16s} {'0':>16s}  "
                      f"{lhs.is_zero()}")
                continue
            C = rhs["constants"]
            ok = lhs == rhs["operator"] == rhs["parahoric"]
            print(f"{str(mu):>10s} {str(th):>10s} {str(tuple(C.cvec)):>10s} {str(C.w.word):>8s} "
                  f"{str(C.wprime.word):>8s}  {C.C.to_text():>16s} {C.Cprime.to_text():>16s}  {ok}")


if __name__ == "__main__":
    main()
