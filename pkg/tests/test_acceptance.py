"""Acceptance gate: one suite run per criterion, one PASS/FAIL line each.

Run directly (``python tests/test_acceptance.py``) or through pytest; under
pytest the lines are printed in the terminal summary.
"""
from __future__ import annotations

import sys
from collections import Counter
from functools import lru_cache

import pytest

from heckelab.verify import SuiteConfig, run_suite

SEED = 7

CRITERIA = {
    1: ("hecke-axioms", "Hecke relations for pi, pi^qp, pi^m on GL2, GL3, A2, B2"),
    2: ("n1-degeneration", "n = 1 metaplectic objects equal the non-metaplectic ones"),
    3: ("thm-main-HA", "symmetrizer matrix coefficients: definition = closed form"),
    4: ("xt-formula", "x^mu T_w on x^c and gamma-coefficient corollaries"),
    5: ("qp-duality", "closed gamma-coefficients of pi^qp(1^pm f T) x^c"),
    6: ("met-duality", "metaplectic closed forms and components, generic and specialized g"),
    7: ("thm-1.1-GLr", "GL_r parahoric-metaplectic Whittaker duality with constants"),
    8: ("casselman-shalika", "spherical Whittaker vs brute-force product formula"),
    9: ("eps-symmetric", "epsilon-symmetric test, bijection, quasi-duality"),
}

LINES: dict[int, str] = {}


@lru_cache(maxsize=None)
def report(suite: str):
    return run_suite(SuiteConfig(suite, seed=SEED, max_rank=3))


def _counts(rep, *keys):
    c = Counter()
    for ch in rep.checks:
        kind = ch["id"].split("/")[1]
        c[(kind,) + tuple(ch["instance"].get(k) for k in keys)] += 1
    return c


def _record(k: int, ok: bool, detail: str):
    LINES[k] = f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


def _summary_line(rep) -> str:
    s = rep.summary
    return (f"{s['passed']} passed, {s['failed']} failed, {s['skipped']} skipped, "
            f"{s['deviations']} known deviations")


def _check_suite(k: int, extra_ok: bool = True, note: str = ""):
    suite, what = CRITERIA[k]
    rep = report(suite)
    ok = rep.summary["failed"] == 0 and rep.summary["passed"] > 0 and extra_ok
    _record(k, ok, f"[{suite}] {what}: {_summary_line(rep)}{note}")
    return rep, ok


def test_criterion_1():
    rep, ok = _check_suite(1)
    seen = _counts(rep, "system", "flavor", "n")
    for s in ("GL2", "GL3", "A2", "B2"):
        assert seen[("quadratic", s, "qp", None)] > 0
        for n in (1, 2, 3):
            assert seen[("quadratic", s, "met", n)] > 0
    assert ok


def test_criterion_2():
    rep, ok = _check_suite(2)
    seen = _counts(rep, "system")
    for s in ("GL2", "GL3", "A2", "B2"):
        assert seen[("pi-m-equals-pi", s)] == 100
        assert seen[("Tm-equals-DW-chain", s)] == 100
    assert ok


def test_criterion_3():
    rep, ok = _check_suite(3)
    seen = _counts(rep, "system")
    # |W|^2 pairs x 10 random f x 2 signs
    assert seen[("main-HA", "GL2")] == 4 * 20
    assert seen[("main-HA", "GL3")] == 36 * 20
    assert seen[("main-HA", "B2")] == 64 * 20
    assert ok


def test_criterion_4():
    rep, ok = _check_suite(4)
    kinds = {k[0] for k in _counts(rep)}
    assert {"XT-qp", "XT-met", "gammas-qp", "met-coeffs"} <= kinds
    assert ok


def test_criterion_5():
    rep, ok = _check_suite(5)
    seen = _counts(rep, "system")
    assert all(seen[("qp-gamma", s)] > 0 for s in ("GL2", "GL3", "B2"))
    assert ok


def test_criterion_6():
    rep, ok = _check_suite(6)
    seen = _counts(rep, "system", "n", "gmode")
    for s, n in (("GL2", 2), ("GL2", 3), ("GL3", 2)):
        for gm in ("generic", "specialized"):
            for kind in ("met-main", "phi-to-gamma", "whitt-arb", "components-sum"):
                assert seen[(kind, s, n, gm)] > 0, (kind, s, n, gm)
    assert ok


def test_criterion_7():
    rep, ok = _check_suite(7)
    seen = _counts(rep, "system", "n")
    for s, n in (("GL2", 1), ("GL2", 2), ("GL2", 3), ("GL3", 2)):
        assert seen[("operator-form", s, n)] > 0 and seen[("parahoric-form", s, n)] > 0
    assert seen[("support", "GL2", 2)] > 0
    assert ok


def test_criterion_8():
    rep, ok = _check_suite(8)
    seen = _counts(rep, "system")
    assert seen[("casselman-shalika", "GL2")] > 0 and seen[("casselman-shalika", "GL3")] > 0
    assert ok


def _criterion_9():
    rep = report("eps-symmetric")
    devs = [c for c in rep.checks if c["status"] == "known-deviation"]
    plus_fail = [c for c in rep.checks if c["id"].split("/")[1] == "quasi-duality" and c["status"] == "fail"]
    note = ""
    if devs:
        note = (f"; literal minus-sign quasi-duality fails on {len(devs)} instances "
                f"(holds after a sign and t-power normalization)")
    return rep, devs, plus_fail, note


def test_criterion_9_components():
    rep, devs, plus_fail, note = _criterion_9()
    _check_suite(9, extra_ok=not devs, note=note)
    seen = _counts(rep, "system")
    for s in ("GL2", "GL3", "B2"):
        for kind in ("test-iff-conditions", "phi-inverse-phi", "phi-phi-inverse", "quasi-duality-normalized"):
            assert seen[(kind, s)] > 0
    assert rep.summary["failed"] == 0 and not plus_fail


@pytest.mark.xfail(strict=True, reason="the minus-sign quasi-duality identity fails as literally stated; "
                                       "it holds up to (-1)^{l(what)+l(w0)} (t(w0_c)/t(w0))^2")
def test_criterion_9_literal_minus_sign():
    _, devs, _, _ = _criterion_9()
    assert not devs, devs[0]


def test_criterion_10():
    total = failures = 0
    for suite, _ in CRITERIA.values():
        s = report(suite).summary
        total += s["oracle_checked"]
        failures += s["oracle_failures"]
    ok = total > 0 and failures == 0
    _record(10, ok, f"[oracle] divided differences re-checked by exact division: {total} checked, "
                    f"{failures} residues")
    assert ok


def lines() -> list[str]:
    return [LINES[k] for k in sorted(LINES)]


if __name__ == "__main__":
    tests = [test_criterion_1, test_criterion_2, test_criterion_3, test_criterion_4, test_criterion_5,
             test_criterion_6, test_criterion_7, test_criterion_8, test_criterion_9_components, test_criterion_10]
    for fn in tests:
        try:
            fn()
        except AssertionError:
            pass
    print("\n".join(lines()))
    sys.exit(0 if all(" PASS " in ln for ln in lines()) else 1)
