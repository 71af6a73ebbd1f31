"""Quasi-polynomials: finite sums of monomials x^y with rational exponents.

Exponents share a common denominator ``denom``; internally a term is keyed by
``(scaled_exponent, param_exponent)`` where ``scaled_exponent = denom * y`` is
an integer tuple, and the value is an integer coefficient.  Grouping by the
first component recovers the ParamPoly coefficient of each x^y.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping

from .coeffring import Alphabet, ParamPoly, laurent_divide
from .rootsys import Lattice, PreconditionError, RootSystem, WeylElement, fmt_vector, parse_vector

__all__ = ["QuasiPolynomial", "gamma_decompose", "assemble", "OrbitError"]


class OrbitError(PreconditionError):
    pass


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class QuasiPolynomial:
    __slots__ = ("rs", "alphabet", "denom", "terms")

    def __init__(self, rs: RootSystem, alphabet: Alphabet, terms: Mapping | None = None, denom: int = 1,
                 _clean=False):
        self.rs = rs
        self.alphabet = alphabet
        if terms is None:
            terms = {}
        elif not _clean:
            terms = {k: v for k, v in terms.items() if v}
        if denom > 1 and terms:
            g = denom
            for (xk, _pk) in terms:
                for x in xk:
                    g = gcd(g, x)
                    if g == 1:
                        break
                if g == 1:
                    break
            if g > 1:
                terms = {(tuple(x // g for x in xk), pk): v for (xk, pk), v in terms.items()}
                denom //= g
        elif not terms:
            denom = 1
        self.terms = terms
        self.denom = denom

    # constructors

    @classmethod
    def zero(cls, rs, alphabet):
        return cls(rs, alphabet, {}, 1, _clean=True)

    @classmethod
    def monomial(cls, rs, alphabet, y, coeff=1):
        y = parse_vector(y)
        if len(y) != rs.dim:
            raise ValueError(f"exponent {fmt_vector(y)} has wrong dimension for {rs.label}")
        D = 1
        for x in y:
            D = lcm(D, x.denominator)
        xk = tuple(int(x * D) for x in y)
        if isinstance(coeff, int):
            coeff = ParamPoly.const(alphabet, coeff)
        if coeff.alphabet != alphabet:
            raise ValueError("coefficient alphabet mismatch")
        return cls(rs, alphabet, {(xk, pe): c for pe, c in coeff.terms.items()}, D)

    @classmethod
    def from_terms(cls, rs, alphabet, items: Iterable):
        """Build from (exponent, ParamPoly-or-int) pairs."""
        out = cls.zero(rs, alphabet)
        for y, c in items:
            out = out + cls.monomial(rs, alphabet, y, c)
        return out

    def _like(self, terms, denom=None, clean=True):
        return QuasiPolynomial(self.rs, self.alphabet, terms, self.denom if denom is None else denom, _clean=clean)

    # denominators

    def with_denom(self, D: int) -> dict:
        """Terms rescaled to denominator D (a multiple of self.denom)."""
        if D == self.denom:
            return self.terms
        f, r = divmod(D, self.denom)
        if r:
            raise ValueError("denominator must be a multiple")
        return {(tuple(x * f for x in xk), pk): v for (xk, pk), v in self.terms.items()}

    def _check(self, other):
        if not isinstance(other, QuasiPolynomial):
            raise TypeError(f"expected QuasiPolynomial, got {type(other).__name__}")
        if other.alphabet != self.alphabet or other.rs is not self.rs:
            raise ValueError("ambient mismatch between quasi-polynomials")

    # arithmetic

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        D = lcm(self.denom, other.denom)
        out = dict(self.with_denom(D))
        for k, v in other.with_denom(D).items():
            nv = out.get(k, 0) + v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return self._like(out, D)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "QuasiPolynomial":
        if isinstance(c, int):
            if c == 0:
                return self.zero(self.rs, self.alphabet)
            return self._like({k: v * c for k, v in self.terms.items()})
        if c.alphabet != self.alphabet:
            raise ValueError("scalar alphabet mismatch")
        out: dict = {}
        for (xk, pk), v in self.terms.items():
            for pe, c2 in c.terms.items():
                key = (xk, _add(pk, pe))
                nv = out.get(key, 0) + v * c2
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
        return self._like(out)

    def __rmul__(self, c):
        if isinstance(c, (int, ParamPoly)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, ParamPoly)):
            return self.scale(other)
        self._check(other)
        D = lcm(self.denom, other.denom)
        a, b = self.with_denom(D), other.with_denom(D)
        out: dict = {}
        for (x1, p1), v1 in a.items():
            for (x2, p2), v2 in b.items():
                key = (_add(x1, x2), _add(p1, p2))
                nv = out.get(key, 0) + v1 * v2
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
        return self._like(out, D)

    def mul_monomial(self, lam) -> "QuasiPolynomial":
        return self * QuasiPolynomial.monomial(self.rs, self.alphabet, lam)

    # Weyl group and iota

    def act_matrix(self, M) -> "QuasiPolynomial":
        out = {}
        for (xk, pk), v in self.terms.items():
            key = (tuple(sum(m * x for m, x in zip(row, xk)) for row in M), pk)
            out[key] = out.get(key, 0) + v
        return self._like(out)

    def act_weyl(self, w: WeylElement) -> "QuasiPolynomial":
        if w.is_identity():
            return self
        return self.act_matrix(w.matrix)

    def iota(self) -> "QuasiPolynomial":
        return self._like({(tuple(-x for x in xk), pk): v for (xk, pk), v in self.terms.items()})

    def rescale_exponents(self, factor) -> "QuasiPolynomial":
        """x^y -> x^{factor * y}."""
        factor = Fraction(factor)
        if factor == 0:
            raise ValueError("factor must be nonzero")
        D = self.denom * factor.denominator
        out = {(tuple(x * factor.numerator for x in xk), pk): v for (xk, pk), v in self.terms.items()}
        return self._like(out, D)

    # queries

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def grouped(self) -> dict[tuple[int, ...], dict]:
        """Scaled exponent -> {param exponent: coeff}."""
        out: dict = {}
        for (xk, pk), v in self.terms.items():
            out.setdefault(xk, {})[pk] = v
        return out

    def items(self):
        """Sorted (exponent as Fractions, ParamPoly coefficient) pairs."""
        D = self.denom
        for xk, cf in sorted(self.grouped().items()):
            yield tuple(Fraction(x, D) for x in xk), ParamPoly(self.alphabet, cf, _clean=True)

    def exponents(self) -> list[tuple[Fraction, ...]]:
        return [y for y, _ in self.items()]

    def coefficient(self, y) -> ParamPoly:
        y = parse_vector(y)
        D = self.denom
        if any((x * D).denominator != 1 for x in y):
            return ParamPoly.zero(self.alphabet)
        xk = tuple(int(x * D) for x in y)
        return ParamPoly(self.alphabet, {pk: v for (k, pk), v in self.terms.items() if k == xk}, _clean=True)

    def is_integral(self) -> bool:
        return self.denom == 1

    def in_lattice(self, lattice: Lattice) -> bool:
        if self.denom != 1:
            return False
        return all(lattice.contains_int(xk) for xk in self.grouped())

    def filter(self, pred) -> "QuasiPolynomial":
        """Keep the monomials whose exponent (Fractions) satisfies ``pred``."""
        D = self.denom
        keep = {}
        cache = {}
        for (xk, pk), v in self.terms.items():
            if xk not in cache:
                cache[xk] = pred(tuple(Fraction(x, D) for x in xk))
            if cache[xk]:
                keep[(xk, pk)] = v
        return self._like(keep)

    def map_coefficients(self, fn) -> "QuasiPolynomial":
        """Apply a ParamPoly -> ParamPoly map (e.g. a specialization) to each coefficient."""
        out = QuasiPolynomial.zero(self.rs, self.alphabet)
        terms = {}
        for xk, cf in self.grouped().items():
            img = fn(ParamPoly(self.alphabet, cf, _clean=True))
            for pe, c in img.terms.items():
                terms[(xk, pe)] = terms.get((xk, pe), 0) + c
        out = self._like({k: v for k, v in terms.items() if v})
        return out

    def specialize(self, mapping) -> "QuasiPolynomial":
        return self.map_coefficients(lambda p: p.specialize(mapping))

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, QuasiPolynomial):
            return NotImplemented
        if other.alphabet != self.alphabet or other.rs is not self.rs:
            return False
        return self.denom == other.denom and self.terms == other.terms

    def __hash__(self):
        return hash((self.denom, frozenset(self.terms.items())))

    # division (used only as an oracle)

    def _flat(self, D):
        return {xk + pk: v for (xk, pk), v in self.with_denom(D).items()}

    def divide_exact(self, other: "QuasiPolynomial") -> "QuasiPolynomial":
        self._check(other)
        D = lcm(self.denom, other.denom)
        q = laurent_divide(self._flat(D), other._flat(D))
        d = self.rs.dim
        return self._like({(k[:d], k[d:]): v for k, v in q.items()}, D, clean=False)

    # serialization

    def to_json(self) -> dict:
        return {"terms": [{"exponent": fmt_vector(y), "coeff": c.to_json()} for y, c in self.items()]}

    @classmethod
    def from_json(cls, rs, alphabet, data) -> "QuasiPolynomial":
        return cls.from_terms(rs, alphabet, ((parse_vector(t["exponent"]), ParamPoly.from_json(alphabet, t["coeff"]))
                                             for t in data["terms"]))

    def to_text(self, var: str = "x") -> str:
        if not self.terms:
            return "0"
        parts = []
        for y, c in self.items():
            mono = f"{var}^(" + ",".join(fmt_vector(y)) + ")"
            if all(x == 0 for x in y):
                parts.append(f"({c})")
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    __str__ = to_text

    def __repr__(self):
        return f"QP[{self.to_text()}]"


def gamma_decompose(f: QuasiPolynomial, c, lattice: Lattice, check_C0=True, c0_test=None) -> dict:
    """Coefficients p_w (w in W^c) with f = sum_w p_w x^{wc}, p_w polynomials with exponents in ``lattice``.

    ``c0_test`` overrides the C^0 membership test (used for metaplectic lattices).
    """
    rs = f.rs
    c = parse_vector(c)
    if check_C0:
        ok = c0_test(c) if c0_test is not None else rs.is_in_C0(c, lattice)
        if not ok:
            raise PreconditionError(f"c={fmt_vector(c)} is not in C0 for lattice {lattice}")
    J = rs.stabilizer_J(c) if rs.in_closed_alcove(c) else frozenset(
        i for i in range(1, rs.rank + 1) if rs.alpha(i, c) == 0)
    reps = rs.W.min_coset_reps(J)
    D = f.denom
    for x in c:
        D = lcm(D, x.denominator)
    orbit = [(w, tuple(int(x * D) for x in w.act(c))) for w in reps]
    terms = f.with_denom(D)
    buckets: dict = {}
    which: dict = {}
    for (xk, pk), v in terms.items():
        if xk not in which:
            for w, wc in orbit:
                diff = tuple(a - b for a, b in zip(xk, wc))
                if all(x % D == 0 for x in diff) and lattice.contains_int(tuple(x // D for x in diff)):
                    which[xk] = (w, tuple(x // D for x in diff))
                    break
            else:
                raise OrbitError(f"exponent {fmt_vector(Fraction(x, D) for x in xk)} not in lattice + W c")
        w, lam = which[xk]
        buckets.setdefault(w, {})[(lam, pk)] = v
    return {w: QuasiPolynomial(rs, f.alphabet, t, 1) for w, t in sorted(buckets.items())}


def assemble(coeffs: Mapping, c, rs: RootSystem, alphabet: Alphabet) -> QuasiPolynomial:
    """Inverse of gamma_decompose: sum_w p_w x^{wc}."""
    out = QuasiPolynomial.zero(rs, alphabet)
    for w, p in coeffs.items():
        out = out + p * QuasiPolynomial.monomial(rs, alphabet, w.act(parse_vector(c)))
    return out
