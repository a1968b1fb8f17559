"""Cayley graphs of permutation groups and their spectra.

Vertices of a Cayley graph are the group elements in canonical (sorted) order;
g ~ h iff g h^-1 lies in the connection set.  Spectra of normal Cayley graphs on
Sym(n) and Alt(n) come from characters; for any other group the spectrum is
computed exactly inside the centre of the group algebra (class sums).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import partitions_chars as pc
from .graphs import Graph
from .partitions_chars import QuadraticValue
from .perm_core import PermGroup, _compose, _inverse
from .spectral import (DEFAULT_SEED, SNAP_TOL, NumericAmbiguity, Spectrum, _snap_values,
                       multiplicities_from_traces, spectrum_transitive_certified)


class InvalidConnectionSet(ValueError):
    pass


class NotDerangementClass(ValueError):
    pass


class NotNormal(ValueError):
    pass


class IntersectsConnectionSet(ValueError):
    pass


# ------------------------------------------------------------------ element table

class ElementTable:
    """Vectorised lookups on the sorted element list of a group."""

    def __init__(self, g: PermGroup):
        self.group = g
        self.elements = g.elements()
        self.n = g.degree
        self.array = np.array(self.elements, dtype=np.int64)
        if self.n <= 15:
            self.weights = self.n ** np.arange(self.n - 1, -1, -1, dtype=np.int64)
            self.codes = self.array @ self.weights
        else:
            self.weights = None
            self.codes = None

    def index_of(self, perms: np.ndarray) -> np.ndarray:
        perms = np.asarray(perms, dtype=np.int64)
        if self.codes is not None:
            c = perms @ self.weights
            pos = np.searchsorted(self.codes, c)
            if np.any(pos >= len(self.codes)) or np.any(self.codes[np.minimum(pos, len(self.codes) - 1)] != c):
                raise KeyError("permutation not in group")
            return pos
        idx = self.group.index()
        return np.array([idx[tuple(int(v) for v in row)] for row in perms], dtype=np.int64)

    def left_multiply(self, s: Sequence[int]) -> np.ndarray:
        """Index of s*g for every element g."""
        return self.index_of(np.asarray(s, dtype=np.int64)[self.array])

    def right_multiply(self, x: Sequence[int]) -> np.ndarray:
        """Index of g*x for every element g."""
        return self.index_of(self.array[:, np.asarray(x, dtype=np.int64)])


_TABLES: dict = {}


def element_table(g: PermGroup) -> ElementTable:
    key = id(g)
    t = _TABLES.get(key)
    if t is None or t.group is not g:
        t = ElementTable(g)
        _TABLES[key] = t
    return t


# ------------------------------------------------------------------ connection sets

@dataclass
class ConnectionSet:
    group: PermGroup
    members: frozenset

    def __post_init__(self):
        self.members = frozenset(tuple(m) for m in self.members)
        ident = self.group.identity()
        if ident in self.members:
            raise InvalidConnectionSet("connection set contains the identity")
        for m in self.members:
            if not self.group.contains(m):
                raise InvalidConnectionSet(f"{m} is not in the group")
            if _inverse(m) not in self.members:
                raise InvalidConnectionSet("connection set is not closed under inversion")

    @property
    def is_normal(self) -> bool:
        return self.group.is_normal_subset(self.members)

    def sorted_members(self) -> list:
        return sorted(self.members)

    def __len__(self):
        return len(self.members)


def cayley_neighbours(g: PermGroup, s: ConnectionSet | Iterable) -> np.ndarray:
    """(|G|, |S|) array: row i lists the indices of s*g_i, sorted."""
    members = s.sorted_members() if isinstance(s, ConnectionSet) else sorted(set(map(tuple, s)))
    table = element_table(g)
    if not members:
        return np.zeros((len(table.elements), 0), dtype=np.int64)
    cols = [table.left_multiply(m) for m in members]
    return np.sort(np.stack(cols, axis=1), axis=1)


def right_translations(g: PermGroup) -> list:
    """Vertex permutations g -> g*x for the generators x; automorphisms of every Cayley graph."""
    table = element_table(g)
    return [table.right_multiply(x) for x in g.generators]


def cayley_graph(g: PermGroup, s: ConnectionSet) -> Graph:
    if not isinstance(s, ConnectionSet):
        s = ConnectionSet(g, s)
    nb = cayley_neighbours(g, s)
    return Graph.from_neighbour_array(nb, labels=g.elements())


def _class_members(g: PermGroup, classes) -> list:
    all_classes = g.conjugacy_classes()
    out = []
    for c in classes:
        cl = all_classes[c] if isinstance(c, int) else c
        out.append(cl)
    return out


def derangement_set(g: PermGroup, classes=None) -> list:
    """Elements of the given classes (default: every derangement class)."""
    if classes is None:
        return g.derangements()
    out = []
    for cl in _class_members(g, classes):
        if any(i == v for i, v in enumerate(cl.members[0])):
            raise NotDerangementClass(f"class of {cl.representative} has fixed points")
        out.extend(cl.members)
    return sorted(out)


def derangement_graph(g: PermGroup) -> Graph:
    return cayley_graph(g, ConnectionSet(g, g.derangements()))


def derangement_graph_wrt(g: PermGroup, classes) -> Graph:
    return cayley_graph(g, ConnectionSet(g, derangement_set(g, classes)))


def certified_cayley_spectrum(g: PermGroup, s) -> Spectrum:
    """Spectrum of the explicit Cayley graph, certified through walks and automorphisms."""
    nb = cayley_neighbours(g, s)
    return spectrum_transitive_certified(nb, right_translations(g))


# ------------------------------------------------------------------ Sym(n), Alt(n)

def sym_class_type(t) -> tuple:
    return tuple(sorted((int(x) for x in t if x > 0), reverse=True))


def sym_cayley_spectrum(n: int, classes: Iterable[Sequence[int]]) -> Spectrum:
    """Exact spectrum of Gamma(Sym(n); union of classes with the given cycle types)."""
    if n > 30:
        raise ValueError("n must be at most 30")
    types = {sym_class_type(t) for t in classes}
    for t in types:
        if sum(t) != n:
            raise ValueError(f"{t} is not a cycle type of degree {n}")
        if t == (1,) * n:
            raise InvalidConnectionSet("connection set contains the identity")
    sizes = {t: pc.class_size(t) for t in types}
    entries = []
    for lam in pc.partitions_of(n):
        d = pc.dimension(lam)
        total = sum(sizes[t] * pc.mn_character(lam, t) for t in types)
        eta = Fraction(total, d)
        if eta.denominator != 1:
            raise ArithmeticError(f"non-integral eigenvalue for {lam}")
        entries.append((int(eta), d * d))
    return Spectrum(entries, True)


def alt_class_list(n: int, derangements_only: bool = True) -> list:
    """Alt(n) classes as (cycle type, half); half is None for types that do not split."""
    out = []
    for t in pc.partitions_of(n):
        if pc.sign_of_type(t) != 1 or t == (1,) * n:
            continue
        if derangements_only and not pc.is_derangement_type(t):
            continue
        if pc.is_split_type(t):
            out += [(t, 0), (t, 1)]
        else:
            out.append((t, None))
    return out


def alt_constituents(n: int) -> list:
    """(partition, index) for each irreducible of Alt(n); index 0/1 for the split pairs."""
    out = []
    for lam in pc.partitions_of(n):
        lt = pc.transpose(lam)
        if lam == lt:
            out += [(lam, 0), (lam, 1)]
        elif lam > lt:
            out.append((lam, 0))
    return out


def alt_cayley_spectrum(n: int, alt_classes: Iterable) -> Spectrum:
    """Exact spectrum of Gamma(Alt(n); union of Alt classes).

    Each class is (cycle type, half) with half None for non-split types; a bare
    split type stands for both halves.
    """
    if not 3 <= n <= 20:
        raise ValueError("n must be in 3..20")
    chosen: dict = {}
    for item in alt_classes:
        if isinstance(item, tuple) and len(item) == 2 and isinstance(item[0], tuple):
            t, half = sym_class_type(item[0]), item[1]
        else:
            t, half = sym_class_type(item), None
        if sum(t) != n or pc.sign_of_type(t) != 1 or t == (1,) * n:
            raise ValueError(f"{t} is not a non-identity class of Alt({n})")
        if pc.is_split_type(t):
            halves = (0, 1) if half is None else (half,)
        else:
            halves = (None,)
        for h in halves:
            chosen[(t, h)] = True
    entries = []
    for lam, k in alt_constituents(n):
        dim = pc.alt_character_dimensions(lam)[k]
        total = QuadraticValue(Fraction(0))
        for (t, h) in chosen:
            rows = pc.alt_characters(lam, t)
            row = rows[k]
            size = pc.class_size(t)
            if h is None:
                total = total + row[0] * size
            else:
                total = total + row[h] * Fraction(size, 2)
        entries.append((total / dim, dim * dim))
    return Spectrum(entries, True)


# ------------------------------------------------------------------ class algebra

@dataclass
class ClassAlgebra:
    """Multiplication by z = sum of a normal connection set, on class sums."""

    group: PermGroup
    matrix: np.ndarray  # matrix[k, j] = #{d in D : d^-1 g_k in K_j}
    identity_class: int


def class_algebra(g: PermGroup, members: Iterable) -> ClassAlgebra:
    members = sorted(set(map(tuple, members)))
    if not g.is_normal_subset(members):
        raise NotNormal("connection set is not a union of conjugacy classes")
    table = element_table(g)
    classes = g.conjugacy_classes()
    class_of = np.array(g.class_of(), dtype=np.int64)
    r = len(classes)
    inv = np.array([_inverse(m) for m in members], dtype=np.int64).reshape(len(members), g.degree)
    mat = np.zeros((r, r), dtype=np.int64)
    for k, cl in enumerate(classes):
        if len(members):
            rep = np.array(cl.representative.images, dtype=np.int64)
            prods = inv[:, rep]  # (d^-1 * rep)(i) = d^-1[rep[i]]
            js = class_of[table.index_of(prods)]
            mat[k] = np.bincount(js, minlength=r)
    ident_class = class_of[g.index()[g.identity()]]
    return ClassAlgebra(g, mat, int(ident_class))


def class_algebra_spectrum(g: PermGroup, members: Iterable, seed: int = DEFAULT_SEED) -> Spectrum:
    """Exact spectrum of Gamma(G; S) for a normal S, without a character table.

    The eigenvalues of the class matrix are the eta_chi; the product of the
    snapped factors is checked to annihilate it exactly, and multiplicities come
    from the identity coefficient of z^k (closed walks) via
    multiplicities_from_traces.
    """
    ca = class_algebra(g, members)
    c = ca.matrix
    r = c.shape[0]
    vals = np.linalg.eigvals(c.astype(float))
    if np.max(np.abs(vals.imag)) > 1e-6:
        raise NumericAmbiguity("class matrix has non-real eigenvalues")
    ints, pairs = _snap_values(np.sort(vals.real), SNAP_TOL)
    exact = c.astype(object)
    ident = np.eye(r, dtype=object)
    prod = ident.copy()
    for lam in ints:
        prod = prod.dot(exact - lam * ident)
    for s, q in pairs:
        prod = prod.dot(exact.dot(exact) - s * exact + q * ident)
    if any(x != 0 for x in prod.flat):
        raise NumericAmbiguity("snapped eigenvalues do not annihilate the class matrix")
    e = ca.identity_class
    cache: dict = {}

    def walk(k, p):
        seq = cache.setdefault(p, [np.eye(1, r, e, dtype=np.int64)[0]])
        cm = c % p
        while len(seq) <= k:
            seq.append(cm.dot(seq[-1]) % p)
        return int(seq[k][e])

    order = len(g.elements())
    mults = multiplicities_from_traces(ints, pairs, walk, order, seed)
    entries = list(zip(ints, mults))
    for (s, q), m in zip(pairs, mults[len(ints):]):
        hi = QuadraticValue(Fraction(s, 2), Fraction(1, 2), s * s - 4 * q)
        entries += [(hi, m), (hi.conjugate(), m)]
    spec = Spectrum(entries, True)
    if spec.total != order:
        raise NumericAmbiguity("multiplicities do not add up to the group order")
    return spec


def standard_eigenvalue(g: PermGroup, members: Iterable) -> Fraction:
    """Eigenvalue of the standard character: sum over S of (fix - 1), divided by n - 1."""
    n = g.degree
    total = 0
    for m in members:
        total += sum(1 for i, v in enumerate(m) if i == v) - 1
    return Fraction(total, n - 1)


# ------------------------------------------------------------------ quotients

@dataclass
class QuotientChecks:
    fibre_size: int | None  # |sN ∩ S| when constant over S/N, else None
    scaled_contained: bool | None
    unscaled_contained: bool | None
    quotient_spectrum: Spectrum
    spectrum: Spectrum


def _cosets(g: PermGroup, normal: Sequence[tuple]):
    elems = g.elements()
    rep_of = {}
    reps = []
    for e in elems:
        if e in rep_of:
            continue
        coset = [_compose(e, x) for x in normal]
        r = min(coset)
        reps.append(r)
        for y in coset:
            rep_of[y] = r
    reps.sort()
    return reps, rep_of


def quotient_cayley(g: PermGroup, normal: Iterable, s: Iterable, seed: int = DEFAULT_SEED):
    """Gamma(G/N; S/N) with the eigenvalue relations to Gamma(G; S).

    If every coset of S/N meets S in the same number c of elements then c times
    each quotient eigenvalue must occur in the spectrum of Gamma(G; S); when
    c = 1 (no two elements of S differ by N) the quotient spectrum is a subset.
    """
    normal = sorted(set(map(tuple, normal)))
    s = sorted(set(map(tuple, s)))
    ident = g.identity()
    if ident not in normal or not g.is_normal_subset(normal):
        raise NotNormal("N is not a normal subgroup")
    nset = set(normal)
    for a in normal:
        for b in normal:
            if _compose(a, b) not in nset:
                raise NotNormal("N is not closed under multiplication")
    if nset & set(s):
        raise IntersectsConnectionSet("N meets the connection set")
    reps, rep_of = _cosets(g, normal)
    pos = {r: i for i, r in enumerate(reps)}
    fibres: dict = {}
    for x in s:
        fibres[rep_of[x]] = fibres.get(rep_of[x], 0) + 1
    edges = set()
    for i, a in enumerate(reps):
        for sc in fibres:
            b = rep_of[_compose(_inverse(sc), a)]  # h with a h^-1 in sN
            j = pos[b]
            if i != j:
                edges.add((min(i, j), max(i, j)))
    quotient = Graph.from_edges(len(reps), sorted(edges), labels=reps)
    sizes = set(fibres.values())
    c = sizes.pop() if len(sizes) == 1 else None
    from .spectral import spectrum_numeric_certified
    qspec = spectrum_numeric_certified(quotient, seed=seed)
    gspec = certified_cayley_spectrum(g, s) if s else Spectrum([(0, len(g.elements()))])
    scaled = unscaled = None
    if c is not None:
        have = set(gspec.values())
        scaled = all(_scale(v, c) in have for v in qspec.values())
        if c == 1:
            unscaled = scaled
    return quotient, QuotientChecks(c, scaled, unscaled, qspec, gspec)


def _scale(v, c):
    if isinstance(v, QuadraticValue):
        w = v * c
        return w.a if w.is_rational() else w
    if isinstance(v, float):
        return v * c
    f = Fraction(v) * c
    return int(f) if f.denominator == 1 else f
