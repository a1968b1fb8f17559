"""Constructors for the permutation groups studied here, and family-level checks.

Finite fields are small explicit tables (prime fields, and the prime powers in
IRREDUCIBLE).  Projective groups act by Mobius maps on GF(q) plus infinity,
affine groups on GF(p)^d; products and wreath products act on disjoint unions
or Cartesian products of the factors' point sets.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from importlib import resources
from typing import Sequence

from . import perm_core as pcore
from .perm_core import PermGroup, _compose, parse_catalog
from .spectral import Spectrum

# coefficients c_0..c_k of a monic irreducible polynomial of degree k over GF(p)
IRREDUCIBLE = {
    4: (2, (1, 1, 1)),          # x^2 + x + 1
    8: (2, (1, 1, 0, 1)),       # x^3 + x + 1
    9: (3, (1, 0, 1)),          # x^2 + 1
    16: (2, (1, 1, 0, 0, 1)),   # x^4 + x + 1
    25: (5, (2, 0, 1)),         # x^2 + 2
    27: (3, (1, 2, 0, 1)),      # x^3 + 2x + 1
    32: (2, (1, 0, 1, 0, 0, 1)),  # x^5 + x^2 + 1
}


class InvalidParameter(ValueError):
    pass


class NotFrobenius(ValueError):
    pass


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def prime_power(q: int):
    """(p, k) with q = p^k, or None."""
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            return (p, k) if r == 1 and _is_prime(p) else None
    return None


class GF:
    """The field with q elements; element i encodes the polynomial with base-p digits of i."""

    def __init__(self, q: int):
        pk = prime_power(q)
        if pk is None:
            raise InvalidParameter(f"{q} is not a prime power")
        self.q = q
        self.p, self.k = pk
        if self.k == 1:
            self._mul = [[(a * b) % q for b in range(q)] for a in range(q)]
            self._add = [[(a + b) % q for b in range(q)] for a in range(q)]
        else:
            if q not in IRREDUCIBLE:
                raise InvalidParameter(f"no field table for q = {q}")
            p, poly = IRREDUCIBLE[q]
            digits = [self._digits(a) for a in range(q)]
            self._add = [[self._undigits([(x + y) % p for x, y in zip(digits[a], digits[b])])
                          for b in range(q)] for a in range(q)]
            self._mul = [[self._undigits(self._polymul(digits[a], digits[b], poly))
                          for b in range(q)] for a in range(q)]
        self._neg = [next(b for b in range(q) if self._add[a][b] == 0) for a in range(q)]
        self._inv = [None] + [next(b for b in range(1, q) if self._mul[a][b] == 1) for a in range(1, q)]
        self.primitive = next(g for g in range(1, q) if self._order(g) == q - 1)

    def _digits(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, ds):
        return sum(d * self.p ** i for i, d in enumerate(ds))

    def _polymul(self, a, b, poly):
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        for deg in range(2 * k - 2, k - 1, -1):
            c = prod[deg]
            if c:
                for i in range(k + 1):
                    prod[deg - k + i] = (prod[deg - k + i] - c * poly[i]) % p
        return prod[:k]

    def _order(self, g):
        x, n = g, 1
        while x != 1:
            x = self._mul[x][g]
            n += 1
        return n

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def mul(self, a, b):
        return self._mul[a][b]

    def neg(self, a):
        return self._neg[a]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._inv[a]

    def power(self, a, e):
        r = 1
        for _ in range(e):
            r = self._mul[r][a]
        return r

    def frobenius(self, a):
        return self.power(a, self.p)

    def elements(self):
        return range(self.q)


# ------------------------------------------------------------------ projective line

def _mobius(f: GF, mat) -> tuple:
    """Images of x -> (a x + b)/(c x + d) on GF(q) + {inf}; inf has index q."""
    (a, b), (c, d) = mat
    q = f.q
    out = []
    for x in range(q):
        num = f.add(f.mul(a, x), b)
        den = f.add(f.mul(c, x), d)
        out.append(q if den == 0 else f.mul(num, f.inv(den)))
    out.append(q if c == 0 else f.mul(a, f.inv(c)))
    return tuple(out)


def _frobenius_line(f: GF) -> tuple:
    return tuple(f.frobenius(x) for x in range(f.q)) + (f.q,)


def _projective_gens(f: GF, special: bool) -> list:
    w = f.primitive
    one, zero = 1, 0
    gens = [((one, one), (zero, one)), ((one, w), (zero, one)),
            ((zero, f.neg(one)), (one, zero))]
    if special:
        gens.append(((w, zero), (zero, f.inv(w))))
    else:
        gens.append(((w, zero), (zero, one)))
    return [_mobius(f, m) for m in gens]


def psl2(q: int) -> PermGroup:
    f = GF(q)
    return PermGroup(_projective_gens(f, True), name=f"PSL(2,{q})")


def pgl2(q: int) -> PermGroup:
    f = GF(q)
    return PermGroup(_projective_gens(f, False), name=f"PGL(2,{q})")


def psigmal2(q: int) -> PermGroup:
    f = GF(q)
    return PermGroup(_projective_gens(f, True) + [_frobenius_line(f)], name=f"PSigmaL(2,{q})")


def pgammal2(q: int) -> PermGroup:
    f = GF(q)
    return PermGroup(_projective_gens(f, False) + [_frobenius_line(f)], name=f"PGammaL(2,{q})")


def psl2_order(q: int) -> int:
    return q * (q * q - 1) // math.gcd(2, q - 1)


def psl2_spectrum_closed_form(q: int) -> Spectrum:
    """Four-eigenvalue spectrum of the derangement graph of PSL(2,q) on q+1 points."""
    if prime_power(q) is None:
        raise InvalidParameter(f"{q} is not a prime power")
    if q % 2 == 0:
        vals = [(q * q * (q - 1) // 2, 1), (-q * (q - 1) // 2, q * q),
                (q, q * (q - 1) ** 2 // 2), (0, (q + 1) ** 2 * (q - 2) // 2)]
    else:
        vals = [(q * (q - 1) ** 2 // 4, 1), (-(q - 1) ** 2 // 4, q * q),
                (q, (q - 1) ** 3 // 4), (0, (q + 1) ** 2 * (q - 3) // 4)]
    return Spectrum(vals, True)


# ------------------------------------------------------------------ affine and linear

def _vectors(p: int, d: int) -> list:
    out = [()]
    for _ in range(d):
        out = [v + (x,) for v in out for x in range(p)]
    return out


def _matvec(m, v, p):
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) % p for i in range(len(m)))


def affine_group(p: int, d: int, linear_gens: Sequence, name: str = "") -> PermGroup:
    """Translations of GF(p)^d together with the given matrices, acting on p^d points."""
    vecs = _vectors(p, d)
    pos = {v: i for i, v in enumerate(vecs)}
    gens = []
    for m in linear_gens:
        gens.append(tuple(pos[_matvec(m, v, p)] for v in vecs))
    for i in range(d):
        e = tuple(1 if j == i else 0 for j in range(d))
        gens.append(tuple(pos[tuple((a + b) % p for a, b in zip(v, e))] for v in vecs))
    return PermGroup(gens, name=name)


def linear_on_nonzero(p: int, d: int, gens: Sequence, name: str = "") -> PermGroup:
    vecs = [v for v in _vectors(p, d) if any(v)]
    pos = {v: i for i, v in enumerate(vecs)}
    return PermGroup([tuple(pos[_matvec(m, v, p)] for v in vecs) for m in gens], name=name)


GL32 = [((1, 1, 0), (0, 1, 0), (0, 0, 1)), ((0, 0, 1), (1, 0, 0), (0, 1, 0))]
SL23 = [((1, 1), (0, 1)), ((1, 0), (1, 1))]
GL23_EXTRA = [((2, 0), (0, 1))]
Q8_IN_SL23 = [((0, 2), (1, 0)), ((1, 1), (1, 2))]


def field_affine_group(q: int, multiplier_order: int | None = None, frobenius: bool = False,
                       name: str = "") -> PermGroup:
    """x -> a x + b on GF(q), a in the subgroup of order `multiplier_order` (default q-1)."""
    f = GF(q)
    k = q - 1 if multiplier_order is None else multiplier_order
    if (q - 1) % k:
        raise InvalidParameter(f"{k} does not divide {q - 1}")
    a = f.power(f.primitive, (q - 1) // k)
    gens = [tuple(f.mul(a, x) for x in range(q))]
    basis = [f.p ** i for i in range(f.k)]  # additive basis 1, x, x^2, ...
    for b in basis:
        gens.append(tuple(f.add(x, b) for x in range(q)))
    if frobenius:
        gens.append(tuple(f.frobenius(x) for x in range(q)))
    return PermGroup(gens, name=name or f"AGL(1,{q})")


def frobenius_affine(p: int, k: int) -> PermGroup:
    """Z_p semidirect Z_k acting on GF(p); a Frobenius group when 1 < k."""
    if not _is_prime(p):
        raise InvalidParameter(f"{p} is not prime")
    return field_affine_group(p, k, name=f"Z{p}:Z{k}")


# ------------------------------------------------------------------ small families

def cyclic(sigma) -> PermGroup:
    s = sigma.images if isinstance(sigma, pcore.Permutation) else tuple(sigma)
    return PermGroup([s], name="cyclic")


def cyclic_from_cycle_type(lengths: Sequence[int]) -> PermGroup:
    """Group generated by one permutation with the given disjoint cycle lengths."""
    img = []
    start = 0
    for r in lengths:
        img += [start + (i + 1) % r for i in range(r)]
        start += r
    return PermGroup([tuple(img)], name=f"C{tuple(lengths)}")


def dihedral(n: int) -> PermGroup:
    if n < 3:
        raise InvalidParameter("dihedral group needs n >= 3")
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return PermGroup([rot, ref], name=f"D{n}")


def symmetric(n: int) -> PermGroup:
    return pcore.symmetric_group(n)


def alternating(n: int) -> PermGroup:
    return pcore.alternating_group(n)


def _shift(g: tuple, offset: int, total: int) -> tuple:
    img = list(range(total))
    for i, v in enumerate(g):
        img[offset + i] = offset + v
    return tuple(img)


def internal_product(groups: Sequence[PermGroup], name: str = "") -> PermGroup:
    """Direct product acting on the disjoint union of the point sets."""
    total = sum(g.degree for g in groups)
    gens = []
    off = 0
    for g in groups:
        gens += [_shift(x, off, total) for x in g.generators]
        off += g.degree
    return PermGroup(gens, name=name or " x ".join(g.name or "?" for g in groups))


def external_product(groups: Sequence[PermGroup], name: str = "") -> PermGroup:
    """Direct product acting coordinatewise on the Cartesian product of the point sets."""
    degs = [g.degree for g in groups]
    points = [()]
    for d in degs:
        points = [p + (x,) for p in points for x in range(d)]
    pos = {p: i for i, p in enumerate(points)}
    gens = []
    for k, g in enumerate(groups):
        for x in g.generators:
            gens.append(tuple(pos[p[:k] + (x[p[k]],) + p[k + 1:]] for p in points))
    return PermGroup(gens, name=name or " (x) ".join(g.name or "?" for g in groups))


def young(lam: Sequence[int]) -> PermGroup:
    """Sym(lam_1) x ... x Sym(lam_k) on consecutive blocks of [n]."""
    lam = tuple(sorted(lam, reverse=True))
    if any(x < 1 for x in lam):
        raise InvalidParameter("parts must be positive")
    parts = [symmetric(x) for x in lam]
    g = internal_product(parts, name=f"Sym({list(lam)})")
    return g


def wreath(g: PermGroup, h: PermGroup, name: str = "") -> PermGroup:
    """G wr H on [m] x [n]: (x, j) -> (g_j(x), h(j)); point (x, j) has index j*m + x."""
    m, n = g.degree, h.degree
    gens = []
    for x in g.generators:
        gens.append(tuple(j * m + x[i] if j == 0 else j * m + i for j in range(n) for i in range(m)))
    for y in h.generators:
        gens.append(tuple(y[j] * m + i for j in range(n) for i in range(m)))
    return PermGroup(gens, name=name or f"{g.name} wr {h.name}")


# ------------------------------------------------------------------ Mathieu groups

def _catalog_text() -> str:
    return resources.files("ekrperm").joinpath("catalog/thesis_appendix_a.txt").read_text()


def catalog_entries() -> list:
    return parse_catalog(_catalog_text())


def catalog_entry(name: str):
    for e in catalog_entries():
        if e.name == name:
            return e
    raise KeyError(name)


def mathieu(n: int) -> PermGroup:
    if n not in (10, 11, 12, 20, 21, 22):
        raise InvalidParameter(f"no Mathieu group M{n} here")
    e = catalog_entry(f"M{n}")
    return e.group()


# ------------------------------------------------------------------ subgroup helpers

def coset_action(g: PermGroup, h_elements: Sequence[tuple], name: str = "") -> PermGroup:
    """Action of g on the right cosets H x of a subgroup H (given by its elements)."""
    hset = set(h_elements)
    reps = [g.identity()]
    rep_key = {min(hset): 0}

    def key(x):
        return min(_compose(hh, x) for hh in hset)

    k = 0
    while k < len(reps):
        r = reps[k]
        k += 1
        for s in g.generators:
            y = _compose(r, s)
            ky = key(y)
            if ky not in rep_key:
                rep_key[ky] = len(reps)
                reps.append(y)
    gens = []
    for s in g.generators:
        gens.append(tuple(rep_key[key(_compose(r, s))] for r in reps))
    return PermGroup(gens, name=name)


def point_stabilizer_action(g: PermGroup, point: int = 0, name: str = "", seed: int = 1) -> PermGroup:
    """Stabilizer of `point` (0-based) acting on the remaining points."""
    stab = [e for e in g.elements() if e[point] == point]
    target = len(stab)
    rng = random.Random(seed)
    rest = [i for i in range(g.degree) if i != point]
    pos = {v: i for i, v in enumerate(rest)}

    def restrict(e):
        return tuple(pos[e[i]] for i in rest)

    gens = []
    while True:
        gens.append(restrict(rng.choice(stab)))
        h = PermGroup(gens)
        if h.order == target:
            return PermGroup(gens, name=name)


# ------------------------------------------------------------------ family checks

@dataclass
class FrobeniusEvidence:
    kernel_size: int
    complement_size: int
    components: int
    components_complete: bool
    spectrum: Spectrum
    spectrum_matches: bool


def frobenius_structure_check(g: PermGroup) -> FrobeniusEvidence:
    from .cayley import derangement_graph
    from .graphs import connected_components
    from .spectral import spectrum_numeric_certified
    info = g.is_frobenius()
    if info is None:
        raise NotFrobenius(g.name or "group")
    n, h = info.kernel_size, info.complement_size
    x = derangement_graph(g)
    comps = connected_components(x)
    complete = all(len(c) == n and x.is_clique(c) for c in comps)
    spec = spectrum_numeric_certified(x)
    expected = Spectrum([(n - 1, h), (-1, h * (n - 1))])
    return FrobeniusEvidence(n, h, len(comps), complete, spec, spec.entries == expected.entries)
