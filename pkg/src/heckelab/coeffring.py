"""Sparse Laurent polynomials with integer coefficients in named parameters.

A :class:`ParamPoly` lives over a fixed :class:`Alphabet` (an ordered tuple of
symbol names).  Terms are stored as ``{exponent tuple: int}`` with no zero
coefficients, so the zero polynomial is the empty map.

>>> A = Alphabet(("t",))
>>> t = ParamPoly.symbol(A, "t")
>>> (t - t**-1) * t
1*t^2 + -1
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

__all__ = [
    "Alphabet",
    "ParamPoly",
    "InexactDivision",
    "AlphabetMismatch",
    "NonUnitError",
    "exact_divide",
    "specialize",
    "laurent_divide",
]


class AlphabetMismatch(ValueError):
    pass


class InexactDivision(ArithmeticError):
    """Raised when a Laurent division leaves a nonzero residue."""

    def __init__(self, message, residue=None):
        super().__init__(message)
        self.residue = residue


class NonUnitError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Alphabet:
    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate symbol names in {self.names}")
        for nm in self.names:
            if not nm or not (nm[0].isalpha() and all(ch.isalnum() or ch == "_" for ch in nm)):
                raise ValueError(f"bad symbol name {nm!r}")

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"symbol {name!r} not in alphabet {self.names}") from None

    def zero_exp(self) -> tuple[int, ...]:
        return (0,) * len(self.names)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def laurent_divide(num: Mapping[tuple, int], den: Mapping[tuple, int]) -> dict[tuple, int]:
    """Exact division of sparse Laurent polynomials with integer coefficients.

    Leading-term division in lexicographic order.  The quotient's support must
    lie in the box determined by coordinatewise min/max of numerator and
    denominator (Newton polytopes add under multiplication), which both
    bounds the loop and detects inexact division.
    """
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    if not num:
        return {}
    dim = len(next(iter(den)))
    lo = [min(e[k] for e in num) - min(e[k] for e in den) for k in range(dim)]
    hi = [max(e[k] for e in num) - max(e[k] for e in den) for k in range(dim)]
    lead_d = max(den)
    cd = den[lead_d]
    rem = dict(num)
    quot: dict[tuple, int] = {}
    while rem:
        lead_r = max(rem)
        e = _sub(lead_r, lead_d)
        if any(e[k] < lo[k] or e[k] > hi[k] for k in range(dim)):
            raise InexactDivision(f"inexact division: residue leading exponent {lead_r}", rem)
        c, r = divmod(rem[lead_r], cd)
        if r:
            raise InexactDivision(f"inexact division: coefficient {rem[lead_r]} not divisible by {cd}", rem)
        quot[e] = c
        for k, v in den.items():
            key = _add(e, k)
            nv = rem.get(key, 0) - c * v
            if nv:
                rem[key] = nv
            else:
                rem.pop(key, None)
    return quot


class ParamPoly:
    """Immutable sparse Laurent polynomial over an :class:`Alphabet`."""

    __slots__ = ("alphabet", "terms", "_hash")

    def __init__(self, alphabet: Alphabet, terms: Mapping[tuple, int] | None = None, _clean=False):
        self.alphabet = alphabet
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = terms
        else:
            n = len(alphabet)
            clean = {}
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} has wrong length for alphabet {alphabet.names}")
                if c:
                    clean[e] = clean.get(e, 0) + int(c)
            self.terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    # constructors

    @classmethod
    def zero(cls, alphabet):
        return cls(alphabet, {}, _clean=True)

    @classmethod
    def const(cls, alphabet, c: int):
        return cls(alphabet, {alphabet.zero_exp(): c} if c else {}, _clean=True)

    @classmethod
    def one(cls, alphabet):
        return cls.const(alphabet, 1)

    @classmethod
    def monomial(cls, alphabet, exps, coeff: int = 1):
        return cls(alphabet, {tuple(exps): coeff})

    @classmethod
    def symbol(cls, alphabet, name: str, power: int = 1):
        e = [0] * len(alphabet)
        e[alphabet.index(name)] = power
        return cls(alphabet, {tuple(e): 1}, _clean=True)

    # basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_unit(self) -> bool:
        """True for a single signed monomial, the units of Z[symbols^(+-1)]."""
        return len(self.terms) == 1 and abs(next(iter(self.terms.values()))) == 1

    def constant_value(self):
        if not self.terms:
            return 0
        if len(self.terms) == 1 and self.alphabet.zero_exp() in self.terms:
            return self.terms[self.alphabet.zero_exp()]
        return None

    def _coerce(self, other) -> "ParamPoly":
        if isinstance(other, ParamPoly):
            if other.alphabet != self.alphabet:
                raise AlphabetMismatch(f"{self.alphabet.names} vs {other.alphabet.names}")
            return other
        if isinstance(other, int):
            return ParamPoly.const(self.alphabet, other)
        return NotImplemented

    # ring operations

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return ParamPoly(self.alphabet, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly(self.alphabet, {e: -c for e, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add(e1, e2)
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return ParamPoly(self.alphabet, out, _clean=True)

    __rmul__ = __mul__

    def shift(self, exps) -> "ParamPoly":
        """Multiply by the monomial with exponent vector ``exps``."""
        exps = tuple(exps)
        return ParamPoly(self.alphabet, {_add(e, exps): c for e, c in self.terms.items()}, _clean=True)

    def inverse(self) -> "ParamPoly":
        if not self.is_unit():
            raise NonUnitError(f"{self} is not a unit")
        (e, c), = self.terms.items()
        return ParamPoly(self.alphabet, {tuple(-x for x in e): c}, _clean=True)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ParamPoly.one(self.alphabet)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def exact_divide(self, den: "ParamPoly") -> "ParamPoly":
        den = self._coerce(den)
        if den is NotImplemented:
            raise TypeError("cannot divide by non-polynomial")
        return ParamPoly(self.alphabet, laurent_divide(self.terms, den.terms), _clean=True)

    def specialize(self, mapping: Mapping[str, "ParamPoly"], target: Alphabet | None = None) -> "ParamPoly":
        """Apply the ring homomorphism sending each named symbol to its image.

        Symbols absent from ``mapping`` are sent to themselves (they must then
        exist in ``target``).
        """
        target = target or self.alphabet
        images = []
        for nm in self.alphabet.names:
            if nm in mapping:
                img = mapping[nm]
                if isinstance(img, int):
                    img = ParamPoly.const(target, img)
                if img.alphabet != target:
                    raise AlphabetMismatch(f"image of {nm} lives over {img.alphabet.names}")
                images.append(img)
            else:
                images.append(ParamPoly.symbol(target, nm))
        cache: dict[tuple[int, int], ParamPoly] = {}
        out = ParamPoly.zero(target)
        for e, c in self.terms.items():
            term = ParamPoly.const(target, c)
            for k, x in enumerate(e):
                if x == 0:
                    continue
                key = (k, x)
                if key not in cache:
                    if x < 0 and not images[k].is_unit():
                        raise NonUnitError(
                            f"symbol {self.alphabet.names[k]} appears inverted but maps to non-unit {images[k]}")
                    cache[key] = images[k] ** x
                term = term * cache[key]
            out = out + term
        return out

    # comparison

    def __eq__(self, other):
        if isinstance(other, int):
            other = ParamPoly.const(self.alphabet, other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self.alphabet == other.alphabet and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.alphabet, frozenset(self.terms.items())))
        return self._hash

    # serialization

    def sorted_terms(self):
        return sorted(self.terms.items())

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = [str(c)]
            for nm, x in zip(self.alphabet.names, e):
                if x:
                    factors.append(f"{nm}^{x}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    __str__ = to_text

    def __repr__(self):
        return self.to_text()

    @classmethod
    def from_text(cls, alphabet: Alphabet, text: str) -> "ParamPoly":
        text = text.strip()
        if text == "0":
            return cls.zero(alphabet)
        out = {}
        for part in text.split(" + "):
            factors = part.strip().split("*")
            c = int(factors[0])
            e = [0] * len(alphabet)
            for f in factors[1:]:
                nm, _, x = f.partition("^")
                e[alphabet.index(nm)] += int(x) if x else 1
            e = tuple(e)
            out[e] = out.get(e, 0) + c
        return cls(alphabet, out)

    def to_json(self) -> list:
        return [{"exponents": list(e), "coeff": str(c)} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, alphabet: Alphabet, data: Iterable) -> "ParamPoly":
        return cls(alphabet, {tuple(d["exponents"]): int(d["coeff"]) for d in data})

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def exact_divide(num: ParamPoly, den: ParamPoly) -> ParamPoly:
    return num.exact_divide(den)


def specialize(p: ParamPoly, mapping, target=None) -> ParamPoly:
    return p.specialize(mapping, target)
