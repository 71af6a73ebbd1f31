"""Root systems, Weyl groups, lattices and alcove combinatorics.

Coordinates.  For ``GL`` of size r the space is R^r with
``alpha_j(y) = y_j - y_{j+1}`` and ``alpha_j^vee = e_j - e_{j+1}``.  For the
Cartan types A/B/C/D/G2 the space is written in the basis of fundamental
coweights, so ``alpha_i(y) = y_i``, the coweight lattice is Z^r and the simple
coroots are the columns of the Cartan matrix ``A[i][j] = alpha_i(alpha_j^vee)``.

Generators are labelled 1..rank everywhere in the public API.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "RootSystem",
    "Root",
    "WeylGroup",
    "WeylElement",
    "Lattice",
    "MetaplecticDatum",
    "build_root_system",
    "UnsupportedLattice",
    "PreconditionError",
    "parse_vector",
    "fmt_vector",
]

SUPPORTED = {
    "GL": range(2, 6),
    "A": range(1, 5),
    "B": range(2, 5),
    "C": range(2, 5),
    "D": range(3, 5),
    "G2": range(2, 3),
}


class PreconditionError(ValueError):
    """A mathematical precondition of an operation is violated."""


class UnsupportedLattice(PreconditionError):
    pass


def parse_vector(text) -> tuple[Fraction, ...]:
    if isinstance(text, str):
        parts = [p for p in text.replace(" ", "").split(",") if p != ""]
        return tuple(Fraction(p) for p in parts)
    return tuple(Fraction(x) for x in text)


def fmt_vector(vec) -> list[str]:
    return [str(Fraction(x)) for x in vec]


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _matvec(M, v):
    return tuple(sum(m * x for m, x in zip(row, v)) for row in M)


def _matmul(A, B):
    n = len(A)
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(A[i], cols[j])) for j in range(n)) for i in range(n))


def _solve(A, b):
    """Solve A x = b over Q by Gauss-Jordan; A square and invertible."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [x / pv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return tuple(M[r][n] for r in range(n))


def _euclid_simple_roots(kind, r):
    def e(i, n):
        v = [0] * n
        v[i] = 1
        return v

    def diff(i, n):
        v = e(i, n)
        v[i + 1] = -1
        return v

    if kind == "A":
        return [diff(i, r + 1) for i in range(r)]
    if kind == "B":
        return [diff(i, r) for i in range(r - 1)] + [e(r - 1, r)]
    if kind == "C":
        return [diff(i, r) for i in range(r - 1)] + [[2 * x for x in e(r - 1, r)]]
    if kind == "D":
        last = [0] * r
        last[r - 2] = last[r - 1] = 1
        return [diff(i, r) for i in range(r - 1)] + [last]
    if kind == "G2":
        return [[1, -1, 0], [-2, 1, 1]]
    raise ValueError(kind)


@dataclass(frozen=True)
class Root:
    index: int  # position in RootSystem.positive_roots
    root: tuple[int, ...]  # row vector: root(y) = <root, y>
    coroot: tuple[int, ...]  # column vector in E
    orbit: str
    simple_coeffs: tuple[int, ...]

    def __call__(self, y):
        return _dot(self.root, y)


class RootSystem:
    """A reduced irreducible root system (or GL_r) in integer coordinates."""

    def __init__(self, kind: str, rank: int):
        if kind not in SUPPORTED or rank not in SUPPORTED[kind]:
            raise ValueError(f"unsupported root system {kind}{rank}")
        self.kind = kind
        self.label = "G2" if kind == "G2" else f"{kind}{rank}"
        if kind == "GL":
            self.size = rank
            self.rank = rank - 1
            self.dim = rank
            d = rank
            roots, coroots = [], []
            for i in range(rank - 1):
                v = [0] * d
                v[i], v[i + 1] = 1, -1
                roots.append(tuple(v))
                coroots.append(tuple(v))
            self.cartan = tuple(tuple(_dot(roots[i], coroots[j]) for j in range(self.rank)) for i in range(self.rank))
            euclid = [list(v) for v in roots]
        else:
            self.size = None
            self.rank = rank
            self.dim = rank
            euclid = _euclid_simple_roots(kind, rank)
            cart = []
            for i in range(rank):
                row = []
                for j in range(rank):
                    val = Fraction(2 * _dot(euclid[i], euclid[j]), _dot(euclid[j], euclid[j]))
                    assert val.denominator == 1
                    row.append(int(val))
                cart.append(tuple(row))
            self.cartan = tuple(cart)
            roots = [tuple(1 if k == i else 0 for k in range(rank)) for i in range(rank)]
            coroots = [tuple(self.cartan[k][j] for k in range(rank)) for j in range(rank)]
        self.simple_roots = tuple(roots)
        self.simple_coroots = tuple(coroots)
        self._euclid = euclid
        self._build_roots()

    def __repr__(self):
        return f"RootSystem({self.label})"

    def __reduce__(self):
        return (build_root_system, (self.kind, self.size if self.kind == "GL" else self.rank))

    # roots

    def _reflect_root(self, i, beta, beta_cov):
        a = self.simple_roots[i]
        av = self.simple_coroots[i]
        k = _dot(beta, av)
        new = tuple(x - k * y for x, y in zip(beta, a))
        kv = _dot(a, beta_cov)
        new_cov = tuple(x - kv * y for x, y in zip(beta_cov, av))
        return new, new_cov

    def _build_roots(self):
        r = self.rank
        # generate all roots (positive and negative) with simple-root coefficients
        start = []
        for i in range(r):
            coeff = tuple(1 if k == i else 0 for k in range(r))
            start.append((self.simple_roots[i], self.simple_coroots[i], coeff))
        seen = {s[0]: s for s in start}
        frontier = list(start)
        while frontier:
            nxt = []
            for beta, cov, coeff in frontier:
                for i in range(r):
                    nb, nc = self._reflect_root(i, beta, cov)
                    if nb not in seen:
                        k = _dot(beta, self.simple_coroots[i])
                        ncoeff = tuple(c - (k if j == i else 0) for j, c in enumerate(coeff))
                        seen[nb] = (nb, nc, ncoeff)
                        nxt.append(seen[nb])
            frontier = nxt
        pos = [v for v in seen.values() if all(c >= 0 for c in v[2])]
        pos.sort(key=lambda v: (sum(v[2]), tuple(-c for c in v[2])))
        # orbits by Euclidean length of the root
        lengths = {}
        for beta, cov, coeff in pos:
            ev = [sum(c * self._euclid[i][k] for i, c in enumerate(coeff)) for k in range(len(self._euclid[0]))]
            lengths[beta] = _dot(ev, ev)
        distinct = sorted(set(lengths.values()))
        if len(distinct) == 1:
            names = {distinct[0]: ""}
        else:
            names = {distinct[0]: "short", distinct[1]: "long"}
        self.orbits = tuple(sorted(names.values(), key=lambda s: (s != "long", s)))
        self._orbit_sqlen = {names[L]: L for L in distinct}
        self.positive_roots = tuple(
            Root(k, beta, cov, names[lengths[beta]], coeff) for k, (beta, cov, coeff) in enumerate(pos)
        )
        self._by_coroot = {}
        for R in self.positive_roots:
            self._by_coroot[R.coroot] = (R, 1)
            self._by_coroot[tuple(-x for x in R.coroot)] = (R, -1)
        self.simple = tuple(self.positive_roots[[R.root for R in self.positive_roots].index(a)]
                            for a in self.simple_roots)
        self.highest_root = max(self.positive_roots, key=lambda R: sum(R.simple_coeffs))

    def orbit_of_simple(self, i: int) -> str:
        return self.simple[i - 1].orbit

    def alpha(self, i: int, y) -> Fraction:
        return _dot(self.simple_roots[i - 1], y)

    def root_sign(self, coroot) -> tuple[Root, int]:
        """Return (positive root, sign) for a coroot vector."""
        return self._by_coroot[tuple(coroot)]

    def is_gl(self) -> bool:
        return self.kind == "GL"

    # distinguished vectors

    @cached_property
    def rho(self) -> tuple[Fraction, ...]:
        """Half-sum-type Weyl vector with alpha_i(rho) = 1."""
        if self.is_gl():
            r = self.size
            return tuple(Fraction(r - 1, 2) - k for k in range(r))
        return tuple(Fraction(1) for _ in range(self.rank))

    @cached_property
    def rho_lattice(self) -> tuple[int, ...]:
        """The lattice Weyl vector used by Whittaker operators (rho_GL for GL)."""
        if self.is_gl():
            return tuple(self.size - 1 - k for k in range(self.size))
        return tuple(1 for _ in range(self.rank))

    @cached_property
    def fundamental_coweights(self) -> tuple[tuple[Fraction, ...], ...]:
        if self.is_gl():
            r = self.size
            out = []
            for i in range(1, r):
                out.append(tuple(Fraction(1 if k < i else 0) - Fraction(i, r) for k in range(r)))
            return tuple(out)
        return tuple(tuple(Fraction(1 if k == i else 0) for k in range(self.rank)) for i in range(self.rank))

    def sqlen_ratio(self, orbit: str) -> Fraction:
        """Squared length of roots in ``orbit`` relative to the shortest roots."""
        return Fraction(self._orbit_sqlen[orbit], min(self._orbit_sqlen.values()))

    # Weyl group

    @cached_property
    def W(self) -> "WeylGroup":
        return WeylGroup(self)

    def reflect(self, i: int, y):
        a = _dot(self.simple_roots[i - 1], y)
        return tuple(x - a * c for x, c in zip(y, self.simple_coroots[i - 1]))

    def dominant_rep(self, y):
        """Dominant element of the W-orbit of y."""
        y = tuple(y)
        while True:
            for i in range(1, self.rank + 1):
                if self.alpha(i, y) < 0:
                    y = self.reflect(i, y)
                    break
            else:
                return y

    def antidominant_rep(self, y):
        y = tuple(y)
        while True:
            for i in range(1, self.rank + 1):
                if self.alpha(i, y) > 0:
                    y = self.reflect(i, y)
                    break
            else:
                return y

    def is_dominant(self, y) -> bool:
        return all(self.alpha(i, y) >= 0 for i in range(1, self.rank + 1))

    # alcoves

    def in_closed_alcove(self, c) -> bool:
        return all(self.alpha(i, c) >= 0 for i in range(1, self.rank + 1)) and self.highest_root(c) <= 1

    def stabilizer_J(self, c) -> frozenset[int]:
        c = parse_vector(c)
        if not self.in_closed_alcove(c):
            raise PreconditionError(f"c={fmt_vector(c)} is not in the closed fundamental alcove")
        return frozenset(i for i in range(1, self.rank + 1) if self.alpha(i, c) == 0)

    def _alcove_vertices(self, scales):
        """Vertices of {alpha_i >= 0, theta <= 1} with alpha_i(v_j) = delta_ij * scales[j] (non-GL)."""
        verts = [tuple(Fraction(0) for _ in range(self.dim))]
        for j, s in enumerate(scales):
            verts.append(tuple(Fraction(s) if k == j else Fraction(0) for k in range(self.dim)))
        return verts

    def omega_elements(self, lattice: "Lattice", scales=None):
        """Length-zero elements (w, nu): y -> w y + nu permuting the alcove vertices, nu in lattice."""
        if self.is_gl():
            raise UnsupportedLattice("Omega enumeration is not used for GL (stabilizer condition is automatic)")
        if scales is None:
            scales = [Fraction(1, k) for k in self.highest_root.simple_coeffs]
        verts = self._alcove_vertices(scales)
        vset = set(verts)
        out = []
        for w in self.W.elements:
            imgs = [w.act(v) for v in verts]
            for p in verts:
                nu = tuple(p[k] - imgs[0][k] for k in range(self.dim))
                if not lattice.contains(nu):
                    continue
                if {tuple(x + d for x, d in zip(im, nu)) for im in imgs} == vset:
                    out.append((w, nu))
        return out

    def is_in_C0(self, c, lattice: "Lattice") -> bool:
        c = parse_vector(c)
        if not self.in_closed_alcove(c) or self.highest_root(c) >= 1:
            return False
        if self.is_gl() or lattice.tag == "Qv":
            return True
        if lattice.tag not in ("Pv", "Qv"):
            raise UnsupportedLattice(f"Omega-stabilizer test not implemented for lattice {lattice.tag}")
        return self._omega_trivial_at(c, self.omega_elements(lattice))

    def alcove_points(self, max_den: int, lattice: "Lattice") -> list[tuple[Fraction, ...]]:
        """Points of C^0_Lambda whose coordinates have denominators at most ``max_den``.

        For GL the coordinates are taken in [0, 1), which fixes the translation
        by the center modulo the lattice.
        """
        pts = set()
        for D in range(1, max_den + 1):
            if self.is_gl():
                grid = product(range(D), repeat=self.size)
            else:
                grid = product(range(D + 1), repeat=self.dim)
            for ks in grid:
                c = tuple(Fraction(k, D) for k in ks)
                if c not in pts and self.is_in_C0(c, lattice):
                    pts.add(c)
        return sorted(pts)

    def _omega_trivial_at(self, c, omega):
        for w, nu in omega:
            if w.is_identity() and all(x == 0 for x in nu):
                continue
            if tuple(x + d for x, d in zip(w.act(c), nu)) == tuple(c):
                return False
        return True

    def j_dominant_decompose(self, lam, J: Iterable[int]):
        """Return (mu, what) with lam = what^{-1} mu, mu dominant, what^{-1} in W^{J_mu}; None if not J-dominant."""
        lam = tuple(lam)
        J = frozenset(J)
        if any(self.alpha(j, lam) < 0 for j in J):
            return None
        mu = self.dominant_rep(lam)
        Jmu = frozenset(i for i in range(1, self.rank + 1) if self.alpha(i, mu) == 0)
        for u in self.W.min_coset_reps(Jmu):
            if tuple(u.act(mu)) == lam:
                return mu, u.inverse()
        raise AssertionError("orbit search failed")


@lru_cache(maxsize=None)
def build_root_system(kind: str, rank: int) -> RootSystem:
    kind = kind.upper() if kind.upper() != "G" else "G2"
    if kind == "G2" and rank != 2:
        raise ValueError("G2 has rank 2")
    return RootSystem(kind, rank)


class WeylElement:
    """An element of a finite Weyl group, identified by its index in the group."""

    __slots__ = ("group", "index")

    def __init__(self, group: "WeylGroup", index: int):
        self.group = group
        self.index = index

    def __eq__(self, other):
        return isinstance(other, WeylElement) and other.group is self.group and other.index == self.index

    def __hash__(self):
        return hash(self.index)

    def __lt__(self, other):
        return (self.length, self.word) < (other.length, other.word)

    def __repr__(self):
        return "e" if not self.word else "s" + "s".join(str(i) for i in self.word)

    def __reduce__(self):
        return (_weyl_from_word, (self.group.rs, self.word))

    @property
    def matrix(self):
        return self.group._mats[self.index]

    @property
    def word(self) -> tuple[int, ...]:
        return self.group._words[self.index]

    @property
    def length(self) -> int:
        return self.group._lengths[self.index]

    def is_identity(self):
        return self.index == 0

    def inverse(self) -> "WeylElement":
        return self.group.elements[self.group._inv[self.index]]

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return self.group.mul(self, other)

    def act(self, y):
        return _matvec(self.matrix, y)

    def inversion_set(self) -> frozenset[int]:
        """Indices (into rs.positive_roots) of the positive roots made negative by self."""
        return self.group._inversions[self.index]

    def inversion_roots(self) -> list[Root]:
        return [self.group.rs.positive_roots[k] for k in sorted(self.inversion_set())]

    def left_descent(self, i: int) -> bool:
        return self.group._lengths[self.group._lmul[i - 1][self.index]] < self.length

    def right_descent(self, i: int) -> bool:
        return self.group._lengths[self.group._rmul[i - 1][self.index]] < self.length


def _weyl_from_word(rs, word):
    return rs.W.from_word(word)


class WeylGroup:
    """Breadth-first enumeration of W with multiplication tables by generators."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        d, r = rs.dim, rs.rank
        ident = tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))
        gens = []
        for i in range(r):
            a, av = rs.simple_roots[i], rs.simple_coroots[i]
            gens.append(tuple(tuple((1 if p == q else 0) - av[p] * a[q] for q in range(d)) for p in range(d)))
        self._gens = gens
        mats = [ident]
        index = {ident: 0}
        lengths = [0]
        frontier = [0]
        while frontier:
            nxt = []
            for k in frontier:
                for g in gens:
                    m = _matmul(g, mats[k])
                    if m not in index:
                        index[m] = len(mats)
                        mats.append(m)
                        lengths.append(lengths[k] + 1)
                        nxt.append(index[m])
            frontier = nxt
        if len(mats) > 1152:
            raise ValueError("Weyl group too large")
        self._mats = mats
        self._index = index
        self._lengths = lengths
        self._lmul = [[index[_matmul(g, m)] for m in mats] for g in gens]
        self._rmul = [[index[_matmul(m, g)] for m in mats] for g in gens]
        inv = [0] * len(mats)
        words: list[tuple[int, ...] | None] = [None] * len(mats)
        words[0] = ()
        for k in sorted(range(len(mats)), key=lambda k: lengths[k]):
            if k == 0:
                continue
            for i in range(r):
                j = self._lmul[i][k]
                if lengths[j] < lengths[k]:
                    words[k] = (i + 1,) + words[j]
                    break
        self._words = words
        for k in range(len(mats)):
            x = 0
            for i in words[k]:  # inverse word is the reversed word
                x = self._lmul[i - 1][x]
            inv[k] = x
        self._inv = inv
        self.elements = [WeylElement(self, k) for k in range(len(mats))]
        pos_cov = {R.coroot: R.index for R in rs.positive_roots}
        invs = []
        for m in mats:
            s = set()
            for R in rs.positive_roots:
                img = _matvec(m, R.coroot)
                if img not in pos_cov:
                    s.add(R.index)
            invs.append(frozenset(s))
        self._inversions = invs
        self.e = self.elements[0]
        self.w0 = max(self.elements, key=lambda w: w.length)
        self._parabolic_cache = {}
        self._cosets_cache = {}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def s(self, i: int) -> WeylElement:
        return self.elements[self._lmul[i - 1][0]]

    def lmul_gen(self, i: int, w: WeylElement) -> WeylElement:
        return self.elements[self._lmul[i - 1][w.index]]

    def rmul_gen(self, w: WeylElement, i: int) -> WeylElement:
        return self.elements[self._rmul[i - 1][w.index]]

    def from_word(self, word: Sequence[int]) -> WeylElement:
        x = 0
        for i in reversed(tuple(word)):
            if not 1 <= i <= self.rs.rank:
                raise ValueError(f"generator index {i} out of range 1..{self.rs.rank}")
            x = self._lmul[i - 1][x]
        return self.elements[x]

    def from_matrix(self, m) -> WeylElement:
        return self.elements[self._index[tuple(tuple(r) for r in m)]]

    def mul(self, a: WeylElement, b: WeylElement) -> WeylElement:
        x = b.index
        for i in reversed(a.word):
            x = self._lmul[i - 1][x]
        return self.elements[x]

    def parabolic(self, J: Iterable[int]) -> list[WeylElement]:
        """The parabolic subgroup W_J, sorted by (length, word)."""
        J = frozenset(J)
        if J not in self._parabolic_cache:
            seen = {0}
            frontier = [0]
            while frontier:
                nxt = []
                for k in frontier:
                    for j in J:
                        x = self._lmul[j - 1][k]
                        if x not in seen:
                            seen.add(x)
                            nxt.append(x)
                frontier = nxt
            self._parabolic_cache[J] = sorted((self.elements[k] for k in seen))
        return self._parabolic_cache[J]

    def min_coset_reps(self, J: Iterable[int]) -> list[WeylElement]:
        """W^J: elements w with w alpha_j > 0 for all j in J."""
        J = frozenset(J)
        if J not in self._cosets_cache:
            self._cosets_cache[J] = [w for w in sorted(self.elements)
                                     if all(not w.right_descent(j) for j in J)]
        return self._cosets_cache[J]

    def longest(self, J: Iterable[int]) -> WeylElement:
        return max(self.parabolic(J), key=lambda w: w.length)

    def coset_decompose(self, w: WeylElement, J: Iterable[int]) -> tuple[WeylElement, WeylElement]:
        J = frozenset(J)
        wJ = w
        changed = True
        while changed:
            changed = False
            for j in sorted(J):
                if wJ.right_descent(j):
                    wJ = self.rmul_gen(wJ, j)
                    changed = True
        return wJ, wJ.inverse() * w

    def in_min_coset_reps(self, w: WeylElement, J: Iterable[int]) -> bool:
        return all(not w.right_descent(j) for j in J)

    def t_word_orbits(self, w: WeylElement) -> list[str]:
        """Orbit labels of the generators along the canonical reduced word."""
        return [self.rs.orbit_of_simple(i) for i in w.word]

    def w0_index_map(self) -> dict[int, int]:
        """i -> w0(i), where w0 alpha_i^vee = -alpha_{w0(i)}^vee."""
        out = {}
        for i in range(1, self.rs.rank + 1):
            img = tuple(-x for x in self.w0.act(self.rs.simple_coroots[i - 1]))
            out[i] = self.rs.simple_coroots.index(img) + 1
        return out


class Lattice:
    """A lattice in E specified by a membership test.

    Tags: ``Qv`` (coroot lattice), ``Pv`` (coweight lattice, non-GL),
    ``ZGL`` (Z^r for GL), ``Lm`` (metaplectic sublattice of a base lattice, by
    divisibility), ``nZGL`` ((nZ)^r for GL, the component lattice used for
    GL_r metaplectic Whittaker components).
    """

    def __init__(self, rs: RootSystem, tag: str, datum: "MetaplecticDatum | None" = None,
                 base: "Lattice | None" = None, n: int | None = None):
        if tag not in ("Qv", "Pv", "ZGL", "Lm", "nZGL"):
            raise ValueError(f"unknown lattice tag {tag}")
        if tag == "Pv" and rs.is_gl():
            raise UnsupportedLattice("use ZGL for GL")
        if tag in ("ZGL", "nZGL") and not rs.is_gl():
            raise UnsupportedLattice(f"{tag} is only defined for GL")
        if tag == "Lm" and datum is None:
            raise ValueError("Lm needs a metaplectic datum")
        if tag == "nZGL" and not n:
            raise ValueError("nZGL needs n")
        self.rs = rs
        self.tag = tag
        self.datum = datum
        self.base = base or (Lattice.default(rs) if tag in ("Lm",) else None)
        self.n = n

    @staticmethod
    def default(rs: RootSystem) -> "Lattice":
        return Lattice(rs, "ZGL") if rs.is_gl() else Lattice(rs, "Pv")

    def __repr__(self):
        extra = f"(n={self.n})" if self.n else (f"(n={self.datum.n})" if self.datum else "")
        return f"{self.tag}{extra}"

    def __eq__(self, other):
        return (isinstance(other, Lattice) and self.rs is other.rs and self.tag == other.tag
                and self.n == other.n and self.datum == other.datum and self.base == other.base)

    def __hash__(self):
        return hash((self.tag, self.n))

    def contains(self, y) -> bool:
        y = tuple(Fraction(x) for x in y)
        if any(x.denominator != 1 for x in y):
            return False
        return self.contains_int(tuple(int(x) for x in y))

    def contains_int(self, y: tuple[int, ...]) -> bool:
        rs = self.rs
        if self.tag in ("ZGL", "Pv"):
            return True
        if self.tag == "nZGL":
            return all(x % self.n == 0 for x in y)
        if self.tag == "Qv":
            if rs.is_gl():
                return sum(y) == 0
            cols = rs.simple_coroots
            A = [[cols[j][i] for j in range(rs.rank)] for i in range(rs.rank)]
            return all(x.denominator == 1 for x in _solve(A, y))
        # Lm
        if not self.base.contains(y):
            return False
        d = self.datum
        return all(R(y) % d.m(R.orbit) == 0 for R in rs.positive_roots)

    def scale_of_alcove(self):
        """Scales of the vertices of the alcove relevant to this lattice."""
        if self.tag == "Lm":
            return self.datum.alcove_scales()
        return None


@dataclass(frozen=True)
class MetaplecticDatum:
    rs: RootSystem = field(compare=False)
    n: int
    Q: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if not self.Q:
            # smallest W-invariant form: Q(alpha^vee) proportional to |alpha^vee|^2 ~ 1/|alpha|^2
            longest = max(self.rs.sqlen_ratio(o) for o in self.rs.orbits)
            vals = tuple((o, int(longest / self.rs.sqlen_ratio(o))) for o in self.rs.orbits)
            object.__setattr__(self, "Q", vals)
        else:
            qd = dict(self.Q)
            if set(qd) != set(self.rs.orbits):
                raise ValueError(f"Q must give a value for each orbit {self.rs.orbits}")
            ref = self.rs.orbits[0]
            for o in self.rs.orbits:
                # Q(alpha^vee) * |alpha|^2 must be constant across orbits
                if Fraction(qd[o]) * self.rs.sqlen_ratio(o) != Fraction(qd[ref]) * self.rs.sqlen_ratio(ref):
                    raise ValueError("Q values are not those of a W-invariant quadratic form")
            object.__setattr__(self, "Q", tuple((o, qd[o]) for o in self.rs.orbits))

    def Qval(self, orbit: str) -> int:
        return dict(self.Q)[orbit]

    def m(self, orbit: str) -> int:
        return self.n // gcd(self.n, self.Qval(orbit))

    def m_simple(self, i: int) -> int:
        return self.m(self.rs.orbit_of_simple(i))

    def B(self, lam, R: Root):
        """B(lam, R^vee) = Q(R^vee) R(lam)."""
        return self.Qval(R.orbit) * R(lam)

    def is_constant_m(self) -> bool:
        return len({self.m(o) for o in self.rs.orbits}) == 1

    def lattice(self, base: Lattice | None = None) -> Lattice:
        return Lattice(self.rs, "Lm", datum=self, base=base or Lattice.default(self.rs))

    def component_lattice(self) -> Lattice:
        """Lattice indexing Whittaker components: (nZ)^r for GL, Lambda^m in P^vee otherwise."""
        if self.rs.is_gl():
            return Lattice(self.rs, "nZGL", n=self.n)
        return self.lattice(Lattice(self.rs, "Pv"))

    def highest_root_m(self) -> tuple[Root, tuple[Fraction, ...]]:
        """Highest root of the metaplectic system and its coefficients in the alpha_i/m_i basis."""
        rs = self.rs
        best = None
        for R in rs.positive_roots:
            mb = self.m(R.orbit)
            coeffs = tuple(Fraction(k * self.m_simple(i + 1), mb) for i, k in enumerate(R.simple_coeffs))
            h = sum(coeffs)
            if best is None or h > best[0]:
                best = (h, R, coeffs)
        return best[1], best[2]

    def theta_m(self, y) -> Fraction:
        R, _ = self.highest_root_m()
        return Fraction(R(y), self.m(R.orbit))

    def alcove_scales(self):
        _, coeffs = self.highest_root_m()
        return [Fraction(self.m_simple(j + 1)) / coeffs[j] for j in range(self.rs.rank)]

    def in_closed_alcove(self, c) -> bool:
        rs = self.rs
        return all(rs.alpha(i, c) >= 0 for i in range(1, rs.rank + 1)) and self.theta_m(c) <= 1

    def is_in_C0(self, c, lattice: Lattice) -> bool:
        """Membership in the metaplectic C^0 for the lattice ``lattice`` (a metaplectic lattice)."""
        c = parse_vector(c)
        if not self.in_closed_alcove(c) or self.theta_m(c) >= 1:
            return False
        if self.rs.is_gl():
            return True
        return self.rs._omega_trivial_at(c, self.rs.omega_elements(lattice, self.alcove_scales()))

    def C0_representatives(self) -> list[tuple[Fraction, ...]]:
        """Representatives of C^0 modulo the length-zero group, for the component lattice."""
        rs = self.rs
        if rs.is_gl():
            from itertools import combinations_with_replacement
            reps = []
            for combo in combinations_with_replacement(range(self.n - 1, -1, -1), rs.size):
                reps.append(tuple(Fraction(x) for x in combo))
            return sorted(reps)
        lat = self.component_lattice()
        scales = self.alcove_scales()
        bound = [int(s) for s in scales]
        from itertools import product
        cands = []
        for pt in product(*[range(b + 1) for b in bound]):
            c = tuple(Fraction(x) for x in pt)
            if self.is_in_C0(c, lat):
                cands.append(c)
        omega = rs.omega_elements(lat, scales)
        reps = []
        seen = set()
        for c in sorted(cands):
            if c in seen:
                continue
            reps.append(c)
            for w, nu in omega:
                seen.add(tuple(x + d for x, d in zip(w.act(c), nu)))
        return reps
