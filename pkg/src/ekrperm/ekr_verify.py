"""Strict EKR by the module method, with exhaustive ground truth for small groups.

For a group G of degree n and a normal set C of derangements (all of them by
default) the derangement graph is the Cayley graph Gamma(G; C).  The module
method proves that every maximum independent set is a coset S_{i,j} of a point
stabilizer from three facts:

  (a) alpha = |G|/n (ratio bound, or a clique of size n);
  (b) the characteristic vector of a maximum set lies in the trivial plus
      standard module (unique least eigenvalue, or a clique whose character
      sums do not vanish, or an equidistribution argument over the derived
      subgroup);
  (c) the matrix M (rows C, columns ordered pairs of distinct points of
      [n-1], entry 1 iff sigma(i) = j) has full column rank.

Verdicts follow one of two policies.  `classic` searches only the cliques a
table of small groups was built from (powers of an n-cycle, plus cliques
recorded in the catalog) and accepts recorded non-canonical witnesses; it
leaves the remaining rows unknown.  `extended` also runs general clique
searches, the derived-subgroup argument and a subgroup search for
non-canonical maximum sets.  Every witness is re-checked before a report is
returned.
"""

from __future__ import annotations

import json
import math
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Callable, Iterable, Sequence

import numpy as np

from .cayley import (
    cayley_neighbours,
    class_algebra_spectrum,
    element_table,
    standard_eigenvalue,
)
from .graphs import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    Graph,
    _bits,
    find_clique_of_size,
    iter_cliques_of_size,
    max_clique,
    pairs_graph,
)
from .perm_core import (
    CapExceeded,
    ConjugacyClass,
    Permutation,
    PermGroup,
    _compose,
    _inverse,
    format_cycles,
)
from .spectral import DEFAULT_SEED, NumericAmbiguity, exact_rank, ratio_bound

MODES = ("classic", "extended")
BRUTE_CAP = 5000
WITNESS_SECONDS = 60.0
SUBGROUP_TRIES = 4000


# ------------------------------------------------------------------ helpers

def _fixes_point(x: Sequence[int]) -> bool:
    return any(i == v for i, v in enumerate(x))


def _perm_order(x: tuple) -> int:
    return Permutation(x).order()


def _power(x: tuple, k: int) -> tuple:
    out = tuple(range(len(x)))
    for _ in range(k):
        out = _compose(x, out)
    return out


def connection_members(g: PermGroup, classes=None) -> list:
    """Sorted connection set: every derangement, or the union of the given classes.

    `classes` may hold ConjugacyClass objects, class indices, or permutations.
    """
    if classes is None:
        return sorted(g.derangements())
    items = list(classes)
    all_classes = g.conjugacy_classes()
    out = set()
    for c in items:
        if isinstance(c, ConjugacyClass):
            out.update(c.members)
        elif isinstance(c, int):
            out.update(all_classes[c].members)
        else:
            out.add(c.images if isinstance(c, Permutation) else tuple(c))
    for x in out:
        if _fixes_point(x):
            raise ValueError(f"{format_cycles(x)} is not a derangement")
        if not g.contains(x):
            raise ValueError(f"{format_cycles(x)} is not in the group")
    return sorted(out)


def is_independent_set(members: Iterable, s: Sequence[tuple]) -> bool:
    """No quotient a*b^-1 of two members of s lies in the connection set."""
    mem = set(members)
    s = list(s)
    for a in s:
        ai = _inverse(a)
        for b in s:
            if a != b and _compose(b, ai) in mem:
                return False
    return True


def is_clique_set(members: Iterable, s: Sequence[tuple]) -> bool:
    mem = set(members)
    s = list(s)
    for a in s:
        ai = _inverse(a)
        for b in s:
            if a != b and _compose(b, ai) not in mem:
                return False
    return True


def canonical_coset(g: PermGroup, s: Iterable[tuple]):
    """(i, j), 0-based, when s equals {g : g(i) = j}; otherwise None."""
    s = set(s)
    if not s:
        return None
    a = next(iter(s))
    for i in range(g.degree):
        j = a[i]
        if all(x[i] == j for x in s):
            if len(s) == sum(1 for x in g.elements() if x[i] == j):
                return (i, j)
    return None


def largest_stabilizer(g: PermGroup) -> int:
    return g.order // min(len(o) for o in g.orbits())


# ------------------------------------------------------------------ matrix M

@dataclass(frozen=True)
class MatrixM:
    degree: int
    rows: tuple          # connection-set elements, sorted
    pairs: tuple         # (i, j), i != j in [n-1] (0-based), lexicographic
    array: np.ndarray    # 0/1, shape (len(rows), len(pairs))

    @property
    def shape(self):
        return self.array.shape

    def gram(self) -> np.ndarray:
        a = self.array.astype(np.int64)
        return a.T @ a


def build_matrix_M(g: PermGroup, classes=None) -> MatrixM:
    return matrix_M_from_rows(g.degree, connection_members(g, classes))


def matrix_M_from_rows(n: int, rows: Iterable[tuple]) -> MatrixM:
    """M for an explicit list of degree-n permutations (no group needed)."""
    rows = tuple(sorted(map(tuple, rows)))
    pairs = tuple(permutations(range(n - 1), 2))
    if rows:
        e = np.array(rows, dtype=np.int64)
        ii = np.array([p[0] for p in pairs], dtype=np.int64)
        jj = np.array([p[1] for p in pairs], dtype=np.int64)
        arr = (e[:, ii] == jj).astype(np.int8)
    else:
        arr = np.zeros((0, len(pairs)), dtype=np.int8)
    return MatrixM(n, rows, pairs, arr)


def gram_decomposition(mm: MatrixM):
    """(a, b) with M^T M = a I + b A(X_n), when the Gram matrix has that form.

    X_3 has no edges, so for n = 3 b is reported as 0.
    """
    n = mm.degree
    gram = mm.gram()
    if n <= 3:
        adj = np.zeros_like(gram)
    else:
        adj = pairs_graph(n).adjacency_matrix()
    diag = np.diag(gram)
    if not np.all(diag == diag[0]):
        return None
    a = int(diag[0])
    off = gram - np.diag(diag)
    vals = set(off[adj == 1].tolist()) or {0}
    if len(vals) != 1 or np.any(off[adj == 0] != 0):
        return None
    return a, int(vals.pop())


def canonical_matrix_H(g: PermGroup) -> np.ndarray:
    """|G| x n^2 matrix whose column (i, j) is the characteristic vector of S_{i,j}."""
    e = np.array(g.elements(), dtype=np.int64)
    n = g.degree
    cols = [(e[:, i] == j) for i in range(n) for j in range(n)]
    return np.stack(cols, axis=1).astype(np.int64)


def reduced_matrix_H(g: PermGroup) -> np.ndarray:
    """H without the columns (i, n) and (n, j), i, j < n (the last point is n)."""
    n = g.degree
    h = canonical_matrix_H(g)
    keep = [i * n + j for i in range(n) for j in range(n)
            if not ((j == n - 1 and i < n - 1) or (i == n - 1 and j < n - 1))]
    return h[:, keep]


def unique_fixers(g: PermGroup) -> list:
    """For each point x an element whose only fixed point is x.

    Every 2-transitive group has one; this is the identity block B needs, and a
    missing point raises AssertionError.
    """
    out = []
    for x in range(g.degree):
        hit = next((e for e in g.elements()
                    if e[x] == x and sum(1 for i, v in enumerate(e) if i == v) == 1), None)
        if hit is None:
            raise AssertionError(f"no element of {g.name or 'the group'} fixes only {x + 1}")
        out.append(hit)
    return out


def block_matrix(g: PermGroup, classes=None):
    """Rows of reduced H ordered identity, connection set, rest; columns (i,i) first.

    Returns (matrix, row_order, column_pairs).  The block of the connection set
    rows on the off-diagonal columns is the matrix M.
    """
    n = g.degree
    unique_fixers(g)
    mem = connection_members(g, classes)
    mem_set = set(mem)
    ident = g.identity()
    rest = [e for e in g.elements() if e != ident and e not in mem_set]
    order = [ident] + mem + rest
    diag = [(i, i) for i in range(n)]
    off = list(permutations(range(n - 1), 2))
    cols = diag + off
    e = np.array(order, dtype=np.int64)
    mat = np.stack([(e[:, i] == j) for i, j in cols], axis=1).astype(np.int8)
    return mat, order, cols


# ------------------------------------------------------------------ group helpers

def derived_subgroup(g: PermGroup) -> PermGroup:
    """Normal closure of the commutators of the generators."""
    gens = g.generators
    comm = set()
    for a in gens:
        for b in gens:
            c = _compose(_compose(a, b), _compose(_inverse(a), _inverse(b)))
            comm.add(c)
    comm.discard(g.identity())
    if not comm:
        return PermGroup([], degree=g.degree, name="1")
    return normal_closure(g, sorted(comm))


def normal_closure(g: PermGroup, seeds: Sequence[tuple]) -> PermGroup:
    gens = list(dict.fromkeys(seeds))
    while True:
        h = PermGroup(gens, degree=g.degree)
        elems = set(h.elements())
        extra = []
        for x in g.generators:
            xi = _inverse(x)
            for s in gens:
                c = _compose(_compose(x, s), xi)
                if c not in elems:
                    extra.append(c)
                    elems.add(c)
        if not extra:
            return h
        gens.extend(extra)


def right_cosets(g: PermGroup, sub: Sequence[tuple]) -> tuple:
    """(label, reps): label[idx] is the coset number of element idx in Hx."""
    index = g.index()
    label = [-1] * g.order
    reps = []
    for x in g.elements():
        if label[index[x]] >= 0:
            continue
        for h in sub:
            label[index[_compose(h, x)]] = len(reps)
        reps.append(x)
    return label, reps


# ------------------------------------------------------------------ cliques

def ncycle_clique(g: PermGroup, members: Sequence[tuple]):
    """{1, s, ..., s^(n-1)} for an n-cycle s whose powers all lie in the connection set."""
    n = g.degree
    mem = set(members)
    for cl in g.conjugacy_classes():
        if tuple(cl.cycle_type) != (n,):
            continue
        s = cl.representative.images
        pw = [g.identity()]
        for _ in range(n - 1):
            pw.append(_compose(s, pw[-1]))
        if all(p in mem for p in pw[1:]):
            return pw
    return None


def parse_perm_list(text: str, degree: int, sep: str = "|") -> list:
    return [Permutation.from_cycles(c, degree).images for c in text.split(sep) if c]


def catalog_clique(g: PermGroup, notes: dict):
    if "clique" not in notes:
        return None
    pts = parse_perm_list(notes["clique"], g.degree)
    ident = g.identity()
    return [ident] + [p for p in pts if p != ident]


def general_clique(g: PermGroup, members: Sequence[tuple], size: int,
                   budget: int = DEFAULT_BUDGET, limit: int = 6000):
    """A clique of `size` through the identity, by branch and bound on its neighbourhood."""
    if len(members) > limit or size < 1:
        return None
    mem = set(members)
    idx = {m: i for i, m in enumerate(members)}
    rows = []
    for a in members:
        ai = _inverse(a)
        r = 0
        for b in members:
            if b != a and _compose(b, ai) in mem:
                r |= 1 << idx[b]
        rows.append(r)
    res = find_clique_of_size(Graph(len(members), rows), size - 1, budget)
    if res.size >= size - 1:
        return [g.identity()] + [members[i] for i in res.witness[:size - 1]]
    return None


# ------------------------------------------------------------------ clique-character test

@dataclass
class CliqueCharacterResult:
    holds: bool
    vanishing: int  # number of irreducible characters chi with chi(C C^-1) = 0
    classes: int


def clique_character_test(g: PermGroup, clique: Sequence[tuple]) -> CliqueCharacterResult:
    """Does E_chi v_C vanish only for the standard character?

    With f = sum over c, c' in C of c c'^-1, the number ||rho_chi(v_C)||^2 is
    chi(f) up to a positive factor.  The class-average of f is central and acts
    on the class sums with eigenvalue chi(f)/chi(1) on the chi-block, so the
    nullity of that action counts the characters with E_chi v_C = 0.  A clique
    of size n meets every S_{i,j} once, which kills the standard character;
    the test passes when the nullity is exactly one.
    """
    classes = g.conjugacy_classes()
    class_of = np.array(g.class_of(), dtype=np.int64)
    index = g.index()
    r = len(classes)
    f = Counter()
    for a in clique:
        for b in clique:
            f[int(class_of[index[_compose(a, _inverse(b))]])] += 1
    sizes = [c.size for c in classes]
    lcm = math.lcm(*sizes)
    table = element_table(g)
    reps = np.array([c.representative.images for c in classes], dtype=np.int64)
    w = np.zeros((r, r), dtype=object)
    for i, fi in f.items():
        inv = np.array([_inverse(x) for x in classes[i].members], dtype=np.int64)
        weight = fi * (lcm // sizes[i])
        for k in range(r):
            js = class_of[table.index_of(inv[:, reps[k]])]
            counts = np.bincount(js, minlength=r)
            for j in np.nonzero(counts)[0]:
                w[k, j] += weight * int(counts[j])
    rank = exact_rank(w)
    if not rank.exact:
        raise NumericAmbiguity("class-algebra rank was not certified")
    nullity = r - rank.rank
    return CliqueCharacterResult(nullity == 1, nullity, r)


# ------------------------------------------------------------------ derived-subgroup route

@dataclass
class LinearKernelResult:
    holds: bool
    linear_at_tau: int
    kernel_order: int
    kernel_transitive: bool
    kernel_ekr: bool
    reason: str = ""


def linear_kernel_check(g: PermGroup, members: Sequence[tuple], tau, multiplicity: int,
                        seed: int = DEFAULT_SEED) -> LinearKernelResult:
    """Condition (b) when tau is shared by the standard and some linear characters.

    Write K for the derived subgroup.  When K is transitive and its own ratio
    bound gives |K|/n, every maximum set S of G meets each coset Kx in at most,
    hence exactly, |K|/n elements.  S is then orthogonal to every linear
    character, and if those account for all of tau beyond the standard module,
    v_S lies in the trivial plus standard module.
    """
    n = g.degree
    extra = multiplicity - (n - 1) ** 2
    k = derived_subgroup(g)
    korder = k.order
    if not isinstance(tau, int) and not (isinstance(tau, Fraction) and tau.denominator == 1):
        return LinearKernelResult(False, 0, korder, False, False, "tau is irrational")
    tau = int(tau)
    label, reps = right_cosets(g, k.elements())
    m = len(reps)
    index = g.index()
    b = np.zeros((m, m), dtype=np.int64)
    for a, x in enumerate(reps):
        for d in members:
            b[a, label[index[_compose(d, x)]]] += 1
    shifted = b - tau * np.eye(m, dtype=np.int64)
    nu = m - exact_rank(shifted).rank if m > 1 else int(b[0, 0] == tau)
    if nu != extra or extra <= 0:
        return LinearKernelResult(False, nu, korder, False, False,
                                  "linear characters do not account for the extra multiplicity")
    if not k.is_transitive():
        return LinearKernelResult(False, nu, korder, False, False, "derived subgroup is intransitive")
    kmem = [d for d in members if k.contains(d)]
    kspec = class_algebra_spectrum(k, kmem, seed)
    kbound = ratio_bound(korder, len(kmem), kspec.least())
    ok = kbound == Fraction(korder, n)
    return LinearKernelResult(ok, nu, korder, True, ok, "" if ok else "derived subgroup ratio bound is not tight")


# ------------------------------------------------------------------ witness searches

def _independent_subgroup_search(g: PermGroup, members: Sequence[tuple], order: int,
                                 tries: int, seed: int):
    """Random two-generated subgroups of the given order avoiding the connection set
    and not fixing a point."""
    rng = random.Random(seed)
    mem = set(members)
    pool = [x for x in g.elements() if x not in mem and x != g.identity()]
    if not pool:
        return None
    for _ in range(tries):
        a, b = rng.choice(pool), rng.choice(pool)
        h = PermGroup([a, b], degree=g.degree)
        try:
            h.elements(cap=order)
        except CapExceeded:
            continue
        if h.order != order:
            continue
        hs = h.elements()
        if any(x in mem for x in hs):
            continue
        if canonical_coset(g, hs) is None:
            return hs
    return None


def normal_lift_independent_set(g: PermGroup, members: Sequence[tuple], target: int,
                                seconds: float = WITNESS_SECONDS, budget: int = DEFAULT_BUDGET):
    """Largest independent set of the form K*X over normal subgroups K avoiding C.

    For K normal with K ∩ C empty, K*X is independent exactly when every coset
    K*x*y^-1 (x, y in X) misses C, so X is a clique in a graph on G/K.  Returns
    the best set found (possibly empty) within the time limit.
    """
    start = time.monotonic()
    mem = set(members)
    index = g.index()
    seen = set()
    kernels = []
    for cl in g.conjugacy_classes():
        if cl.representative.images == g.identity() or cl.members[0] in mem:
            continue
        k = normal_closure(g, [cl.representative.images])
        key = frozenset(k.elements())
        if key in seen or len(key) == g.order:
            continue
        seen.add(key)
        if not any(x in mem for x in key):
            kernels.append(k)
    kernels.sort(key=lambda k: -k.order)
    best = []
    for k in kernels:
        if time.monotonic() - start > seconds:
            break
        kel = k.elements()
        label, reps = right_cosets(g, kel)
        m = len(reps)
        bad = [False] * m  # coset K*z meets C
        for d in mem:
            bad[label[index[d]]] = True
        rows = [0] * m
        for i in range(m):
            xi = reps[i]
            for j in range(m):
                if i != j and not bad[label[index[_compose(xi, _inverse(reps[j]))]]]:
                    rows[i] |= 1 << j
        res = max_clique(Graph(m, rows), budget)
        cand = [_compose(h, reps[i]) for i in res.witness for h in kel]
        if len(cand) > len(best):
            best = cand
        if len(best) > target:
            break
    return sorted(best)


def two_eigenvalue_witness(g: PermGroup, members: Sequence[tuple]):
    """A non-canonical maximum set when Gamma is a disjoint union of cliques.

    The maximum sets are the transversals of the components; swapping one
    element of a point stabilizer for another vertex of its component keeps a
    transversal, and is non-canonical unless the components are too small.
    """
    nb = cayley_neighbours(g, members)
    x = Graph.from_neighbour_array(nb)
    elems = g.elements()
    index = g.index()
    stab = [e for e in elems if e[0] == 0]
    comp_of = {}
    for v in range(x.n):
        if v not in comp_of:
            comp = [v] + list(_bits(x.rows[v]))
            for u in comp:
                comp_of[u] = v
    for s in stab:
        if s == g.identity():
            continue
        i = index[s]
        for u in _bits(x.rows[i]):
            cand = [y for y in stab if y != s] + [elems[u]]
            if is_independent_set(members, cand) and canonical_coset(g, cand) is None:
                return sorted(cand)
    return None


# ------------------------------------------------------------------ exhaustive oracle

@dataclass
class BruteForceResult:
    group: str
    order: int
    degree: int
    alpha: int
    stabilizer_size: int
    ekr: bool
    strict: bool | None           # None when the enumeration ran out of budget
    maximum_sets_through_identity: int | None
    witness: list | None          # a non-canonical maximum set
    exhausted: bool
    method: str
    nodes: int = 0


def _tiling_element(g: PermGroup, mem: set, m: int):
    """x in C of order divisible by m whose powers x^1..x^(m-1) all lie in C."""
    for cl in g.conjugacy_classes():
        x = cl.representative.images
        if x not in mem:
            continue
        o = _perm_order(x)
        if o % m:
            continue
        p = x
        ok = True
        for _ in range(m - 1):
            if p not in mem:
                ok = False
                break
            p = _compose(x, p)
        if ok:
            return x, o
    return None


def brute_force_strict_check(g: PermGroup, classes=None, cap: int = BRUTE_CAP,
                             budget: int = DEFAULT_BUDGET) -> BruteForceResult:
    """All maximum independent sets of Gamma(G; C) through the identity, by exact search.

    Right translations are automorphisms, so every maximum set is a translate of
    one through the identity, and translates of cosets S_{i,j} are again such
    cosets.  When C contains m consecutive powers of some x, with m*s = |G| for
    the largest stabilizer order s, the windows of m consecutive powers inside
    the cosets <x>y partition G into cliques: then alpha = s and the search
    picks one vertex per window.  Otherwise alpha comes from branch and bound.
    The search stops at the first non-canonical maximum set.
    """
    if g.order > cap:
        raise CapExceeded(f"{g.name or 'group'} has {g.order} > {cap} elements")
    elems = g.elements()
    order = len(elems)
    index = g.index()
    mem_list = connection_members(g, classes)
    mem = set(mem_list)
    s = largest_stabilizer(g)
    e0 = index[g.identity()]
    full = (1 << order) - 1
    if mem_list:
        nb = cayley_neighbours(g, mem_list)
        rows = Graph.from_neighbour_array(nb).rows
    else:
        rows = [0] * order
    nonadj = [full & ~rows[v] & ~(1 << v) for v in range(order)]
    cand0 = nonadj[e0]
    canon = set()
    for i in range(g.degree):
        st = frozenset(index[x] for x in elems if x[i] == i)
        if len(st) == s:
            canon.add(st)

    def finish(alpha, count, witness, exhausted, method, nodes):
        strict = None
        if witness is not None:
            strict = False
        elif exhausted:
            strict = alpha == s
        w = sorted(elems[i] for i in witness) if witness is not None else None
        return BruteForceResult(g.name, order, g.degree, alpha, s, alpha == s, strict,
                                count if exhausted else None, w, exhausted, method, nodes)

    m = order // s if order % s == 0 else 0
    tiling = _tiling_element(g, mem, m) if m > 1 else None
    if m == 1:
        # a point fixed by all of G: no derangements, and G itself is the only maximum set
        return finish(order, 1, None, True, "trivial", 0)
    nodes = [0]
    if tiling is not None:
        x, o = tiling
        tiles = []
        done = set()
        xs = [g.identity()]
        for _ in range(o - 1):
            xs.append(_compose(x, xs[-1]))
        for y in elems:
            if index[y] in done:
                continue
            orbit = [index[_compose(p, y)] for p in xs]
            done.update(orbit)
            for t0 in range(0, o, m):
                bits = 0
                for v in orbit[t0:t0 + m]:
                    bits |= 1 << v
                tiles.append(bits)
        tiles = [t for t in tiles if not (t >> e0) & 1]
        alpha = s
        count = [0]
        found = [None]

        def cover(chosen, p, remaining):
            nodes[0] += 1
            if nodes[0] > budget:
                raise BudgetExceeded
            if not remaining:
                sset = frozenset(chosen + [e0])
                count[0] += 1
                if sset not in canon:
                    found[0] = sset
                    return True
                return False
            best_i, best_c = -1, None
            for i, t in enumerate(remaining):
                c = (t & p).bit_count()
                if best_c is None or c < best_c:
                    best_i, best_c = i, c
                    if c <= 1:
                        break
            if best_c == 0:
                return False
            t = remaining[best_i]
            rest = remaining[:best_i] + remaining[best_i + 1:]
            for v in _bits(t & p):
                chosen.append(v)
                if cover(chosen, p & nonadj[v] & ~t, rest):
                    return True
                chosen.pop()
            return False

        try:
            cover([], cand0, tiles)
            exhausted = True
        except BudgetExceeded:
            exhausted = False
        return finish(alpha, count[0], found[0], exhausted, "clique tiling", nodes[0])

    # generic branch and bound on the non-neighbours of the identity
    crow = [nonadj[v] & cand0 for v in range(order)]
    stats = {"nodes": 0}
    try:
        t = s - 1
        # alpha >= s; look for larger sets first
        while next(iter_cliques_of_size(crow, t + 1, cand0, budget, stats), None) is not None:
            t += 1
        alpha = t + 1
        count = 0
        witness = None
        for cl in iter_cliques_of_size(crow, t, cand0, budget, stats):
            count += 1
            sset = frozenset(cl + [e0])
            if sset not in canon:
                witness = sset
                break
        return finish(alpha, count, witness, True, "branch and bound", stats["nodes"])
    except BudgetExceeded:
        return finish(s, 0, None, False, "branch and bound", stats["nodes"])


# ------------------------------------------------------------------ conditions and report

@dataclass
class ConditionA:
    holds: bool | None
    method: str            # ratio | clique-coclique | search | failed
    bound: Fraction | None = None
    witness: list | None = None


@dataclass
class ConditionB:
    holds: bool | None
    method: str            # unique-tau | clique-character | linear-kernel | failed | not-run
    detail: str = ""


@dataclass
class ConditionC:
    rank: int | None
    full: bool | None
    target: int = 0
    exact: bool = True
    method: str = ""


@dataclass
class EkrReport:
    group: str
    degree: int
    order: int
    transitivity: int
    mode: str
    condition_a: ConditionA
    condition_b: ConditionB
    condition_c: ConditionC
    ekr: str                        # yes | no | unknown
    strict: str
    columns: dict                   # least, max_clique, ekr, unique, clique_coclique, rank, strict
    tau: object = None
    standard: object = None
    multiplicity: int | None = None
    counterexample: list | None = None
    counterexample_kind: str = ""   # larger | non-canonical
    notes: list = field(default_factory=list)
    oracle: str | None = None       # exhaustive-search strict verdict, when it was run

    @property
    def consistent(self) -> bool:
        """False when the pipeline and the exhaustive search reach opposite verdicts."""
        if self.oracle in (None, "unknown") or self.strict == "unknown":
            return True
        return self.oracle == self.strict

    CSV_COLUMNS = ("n", "group", "size", "least", "max_clique", "ekr", "unique",
                   "clique_coclique", "rank", "strict")

    def csv_row(self) -> list:
        c = self.columns
        return [str(self.degree), self.group, str(self.order), c["least"], c["max_clique"],
                c["ekr"], c["unique"], c["clique_coclique"], c["rank"], c["strict"]]

    def to_dict(self) -> dict:
        def perms(xs):
            return None if xs is None else [format_cycles(x) for x in xs]

        a, b, cc = self.condition_a, self.condition_b, self.condition_c
        return {
            "group": self.group,
            "degree": self.degree,
            "order": self.order,
            "transitivity": self.transitivity,
            "mode": self.mode,
            "least_eigenvalue": None if self.tau is None else str(self.tau),
            "standard_eigenvalue": None if self.standard is None else str(self.standard),
            "multiplicity": self.multiplicity,
            "condition_a": {"holds": a.holds, "method": a.method,
                            "bound": None if a.bound is None else str(a.bound),
                            "witness": perms(a.witness)},
            "condition_b": {"holds": b.holds, "method": b.method, "detail": b.detail},
            "condition_c": {"rank": cc.rank, "full": cc.full, "target": cc.target,
                            "exact": cc.exact, "method": cc.method},
            "verdict": {"ekr": self.ekr, "strict": self.strict},
            "columns": dict(self.columns),
            "counterexample": perms(self.counterexample),
            "counterexample_kind": self.counterexample_kind,
            "oracle": self.oracle,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _yn(v) -> str:
    return "Y" if v else "N"


def check_condition_a(g: PermGroup, members: Sequence[tuple], spectrum, clique=None) -> ConditionA:
    """Ratio bound first, then the clique-coclique bound with the supplied clique."""
    n = g.degree
    target = Fraction(g.order, n)
    bound = ratio_bound(g.order, len(members), spectrum.least())
    if bound == target:
        return ConditionA(True, "ratio", bound)
    if clique is not None and len(clique) == n and is_clique_set(members, clique):
        return ConditionA(True, "clique-coclique", target, list(clique))
    return ConditionA(None, "failed", bound)


def check_condition_b(g: PermGroup, members: Sequence[tuple], spectrum, clique=None,
                      mode: str = "classic", seed: int = DEFAULT_SEED) -> ConditionB:
    n = g.degree
    tau = spectrum.least()
    std = standard_eigenvalue(g, members)
    mult = spectrum.multiplicity(tau)
    # tau = standard eigenvalue makes the ratio bound tight, which the route needs
    if std == tau and mult == (n - 1) ** 2:
        return ConditionB(True, "unique-tau")
    if clique is not None and len(clique) == n and is_clique_set(members, clique):
        cc = clique_character_test(g, clique)
        if cc.holds:
            return ConditionB(True, "clique-character")
    if mode == "extended" and std == tau:
        lk = linear_kernel_check(g, members, tau, mult, seed)
        if lk.holds:
            return ConditionB(True, "linear-kernel",
                              f"{lk.linear_at_tau} linear character(s) at tau; derived subgroup of order {lk.kernel_order}")
    return ConditionB(False, "failed")


def check_condition_c(g: PermGroup, members: Sequence[tuple]) -> ConditionC:
    """Column rank of M; the Gram identity M^T M = aI + bA(X_n) with a > b(n-3) also proves it."""
    n = g.degree
    mm = build_matrix_M(g, members)
    target = (n - 1) * (n - 2)
    if n >= 4 and mm.shape[0] and mm.shape[0] * target <= 2_000_000:
        dec = gram_decomposition(mm)
        if dec is not None and dec[0] - dec[1] * (n - 3) > 0:
            return ConditionC(target, True, target, True, "gram")
    r = exact_rank(mm.array)
    full = r.rank == target if r.exact or r.rank == target else None
    return ConditionC(r.rank, full, target, r.exact, r.method)


def strict_ekr_verdict(g: PermGroup, classes=None, *, mode: str = "classic", notes: dict | None = None,
                       budget: int = DEFAULT_BUDGET, seed: int = DEFAULT_SEED,
                       witness_seconds: float = WITNESS_SECONDS, cap: int = BRUTE_CAP,
                       oracle: bool | None = None) -> EkrReport:
    """Full report row for one group (see the module docstring for the two modes).

    With `oracle` (default: on in extended mode) groups of order at most `cap`
    are also searched exhaustively.  The search never sets strict = yes on its
    own, since that verdict is reserved for the three conditions; its answer is
    kept in `oracle`, and a non-canonical maximum set it finds is a valid
    counterexample.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    notes = notes or {}
    n = g.degree
    order = g.order
    members = connection_members(g, classes)
    trans = g.transitivity_degree(max_k=4)
    name = g.name
    if trans < 2:
        return _non_two_transitive_report(g, members, trans, mode, budget, seed, witness_seconds, cap)
    spec = class_algebra_spectrum(g, members, seed)
    tau = spec.least()
    std = standard_eigenvalue(g, members)
    mult = spec.multiplicity(tau)
    least = std == tau
    unique = least and mult == (n - 1) ** 2
    target = order // n
    ratio_ok = ratio_bound(order, len(members), tau) == target
    need_clique = not ratio_ok or not unique
    clique = None
    if need_clique:
        clique = ncycle_clique(g, members) or catalog_clique(g, notes)
        if clique is not None and not is_clique_set(members, clique):
            clique = None
        if clique is None and mode == "extended":
            clique = general_clique(g, members, n, budget=min(budget, 10**6))
    a = check_condition_a(g, members, spec, clique)
    counterexample, kind = None, ""
    if a.holds is None and mode == "extended":
        big = normal_lift_independent_set(g, members, target, witness_seconds, budget)
        if len(big) > target and is_independent_set(members, big):
            a = ConditionA(False, "search", Fraction(len(big)), big)
            counterexample, kind = big, "larger"
    b = check_condition_b(g, members, spec, clique, mode, seed) if a.holds else ConditionB(None, "not-run")
    c = check_condition_c(g, members) if b.holds else ConditionC(None, None, (n - 1) * (n - 2), True, "not-run")
    strict = "unknown"
    if a.holds is False:
        strict = "no"
    elif a.holds and b.holds and c.full:
        strict = "yes"
    elif a.holds:
        witness = None
        if spec.distinct() == 2:
            witness = two_eigenvalue_witness(g, members)
        if witness is None and "intersecting" in notes:
            gens = parse_perm_list(notes["intersecting"], n, sep="+")
            hs = PermGroup(gens, degree=n).elements()
            if all(g.contains(h) for h in hs):
                witness = hs
        if witness is None and mode == "extended":
            witness = _independent_subgroup_search(g, members, target, SUBGROUP_TRIES, seed)
        if witness is not None:
            counterexample, kind = sorted(witness), "non-canonical"
    oracle_verdict = None
    if (mode == "extended" if oracle is None else oracle) and order <= cap:
        try:
            bf = brute_force_strict_check(g, members, cap, budget)
        except BudgetExceeded:
            bf = None
        oracle_verdict = "unknown"
        if bf is not None and bf.exhausted:
            oracle_verdict = "yes" if bf.strict else "no"
            if counterexample is None and bf.witness is not None and a.holds is not False:
                if bf.ekr:
                    counterexample, kind = bf.witness, "non-canonical"
                else:
                    a = ConditionA(False, "search", Fraction(bf.alpha), bf.witness)
                    counterexample, kind = bf.witness, "larger"
            if a.holds is None and bf.ekr:
                a = ConditionA(True, "search", Fraction(bf.alpha))
                b = check_condition_b(g, members, spec, clique, mode, seed)
                c = check_condition_c(g, members) if b.holds else c
                if b.holds and c.full:
                    strict = "yes"
    counterexample, kind, strict = _reverify(g, members, counterexample, kind, strict, target)
    ekr = "yes" if a.holds else ("no" if a.holds is False else "unknown")
    cc_col = "-"
    if not unique:
        cc_col = "Y" if b.method == "clique-character" else "?"
    columns = {
        "least": _yn(least),
        "max_clique": ("Y" if clique is not None else "?") if need_clique else "-",
        "ekr": {"yes": "Y", "no": "N", "unknown": "?"}[ekr],
        "unique": _yn(unique) if least else "N/A",
        "clique_coclique": cc_col,
        "rank": "-" if c.full is None else _yn(c.full),
        "strict": {"yes": "Y", "no": "N", "unknown": "?"}[strict],
    }
    return EkrReport(name, n, order, trans, mode, a, b, c, ekr, strict,
                     columns, tau, std, mult, counterexample, kind, oracle=oracle_verdict)


def _reverify(g, members, counterexample, kind, strict, target):
    """Independent re-check of a witness; drops it (and its verdict) if it fails."""
    if counterexample is None:
        return None, "", strict
    ok = is_independent_set(members, counterexample) and len(set(counterexample)) == len(counterexample)
    if kind == "larger":
        ok = ok and len(counterexample) > target
    else:
        ok = ok and len(counterexample) == target and canonical_coset(g, counterexample) is None
    if not ok:
        return None, "", "unknown"
    return counterexample, kind, "no"


def _non_two_transitive_report(g, members, trans, mode, budget, seed, witness_seconds, cap):
    n = g.degree
    order = g.order
    s = largest_stabilizer(g)
    a = ConditionA(None, "failed")
    ekr, strict = "unknown", "unknown"
    counterexample, kind = None, ""
    oracle_verdict = None
    big = normal_lift_independent_set(g, members, s, witness_seconds, budget)
    if len(big) > s and is_independent_set(members, big):
        a = ConditionA(False, "search", Fraction(len(big)), big)
        counterexample, kind = big, "larger"
        ekr, strict = "no", "no"
    elif order <= cap and mode == "extended":
        try:
            bf = brute_force_strict_check(g, members, cap, budget)
        except (CapExceeded, BudgetExceeded):
            bf = None
        if bf is not None and bf.exhausted:
            oracle_verdict = "yes" if bf.strict else "no"
            a = ConditionA(bf.ekr, "search", Fraction(bf.alpha))
            ekr = "yes" if bf.ekr else "no"
            strict = {True: "yes", False: "no", None: "unknown"}[bf.strict]
            if bf.witness is not None:
                counterexample, kind = bf.witness, "non-canonical" if bf.ekr else "larger"
    yn = {"yes": "Y", "no": "N", "unknown": "?"}
    columns = {"least": "-", "max_clique": "-", "ekr": yn[ekr], "unique": "-",
               "clique_coclique": "-", "rank": "-", "strict": yn[strict]}
    rep = EkrReport(g.name, n, order, trans, mode, a, ConditionB(None, "not-run"),
                    ConditionC(None, None, (n - 1) * (n - 2), True, "not-run"), ekr, strict, columns,
                    counterexample=counterexample, counterexample_kind=kind,
                    notes=["not 2-transitive: the module method does not apply"], oracle=oracle_verdict)
    if counterexample is not None:
        ok = is_independent_set(members, counterexample) and (
            len(counterexample) > s if kind == "larger" else canonical_coset(g, counterexample) is None)
        if not ok:
            raise AssertionError("witness failed re-verification")
    return rep


def report_for_entry(entry, mode: str = "classic", **kw) -> EkrReport:
    """Report for a catalog entry, passing its recorded clique and witnesses on."""
    g = entry.group()
    return strict_ekr_verdict(g, mode=mode, notes=entry.notes, **kw)


# ------------------------------------------------------------------ family theorems

@dataclass
class FamilyCase:
    name: str
    group: PermGroup
    predicted_ekr: bool
    predicted_strict: bool | None   # None: no theorem applies
    result: BruteForceResult | None = None

    @property
    def agrees(self) -> bool:
        r = self.result
        if r is None or not r.exhausted:
            return False
        if r.ekr != self.predicted_ekr:
            return False
        return self.predicted_strict is None or r.strict == self.predicted_strict


def young_strict_prediction(lam: Sequence[int]) -> bool:
    """Strict EKR for a Young subgroup whose parts all exceed one, by the exception list."""
    lam = sorted(lam, reverse=True)
    if any(p < 2 for p in lam):
        raise ValueError("all parts must exceed one")
    k = len(lam)
    for j in range(k - 1):
        if lam[j] == 3 and all(p == 2 for p in lam[j + 1:]):
            return False
    if k >= 2 and lam[-1] == lam[-2] == 3:
        return False
    if k >= 3 and lam[-1] == lam[-2] == lam[-3] == 2:
        return False
    return True


def default_family_cases(max_order: int = BRUTE_CAP) -> list:
    from . import families as fam

    cases = []

    def add(name, build: Callable[[], PermGroup], ekr, strict):
        g = build()
        if g.order <= max_order:
            g.name = name
            cases.append(FamilyCase(name, g, ekr, strict))

    for ct in [(5,), (6,), (2, 3), (3, 3), (2, 4), (2, 2, 3), (4, 6), (2, 3, 5)]:
        add(f"cyclic{list(ct)}", lambda ct=ct: fam.cyclic_from_cycle_type(ct), True, True)
    for n in range(3, 11):
        add(f"D{n}", lambda n=n: fam.dihedral(n), True, True)
    for p, h in [(5, 2), (7, 2), (7, 3), (13, 3), (5, 4), (13, 4), (11, 2)]:
        add(f"Z{p}:Z{h}", lambda p=p, h=h: fam.field_affine_group(p, h), True, h == 2)
    add("AGL(1,8)", lambda: fam.field_affine_group(8, 7), True, False)
    for lam in [(2, 2), (3, 2), (2, 2, 2), (3, 3), (4, 2), (3, 2, 2), (4, 3), (4, 4), (5, 2),
                (3, 3, 2), (4, 2, 2), (2, 2, 2, 2), (5, 3), (3, 3, 3), (6, 2)]:
        add(f"Sym{list(lam)}", lambda lam=lam: fam.young(lam), True, young_strict_prediction(lam))
    add("Sym(2)xSym(2) external", lambda: fam.external_product([fam.symmetric(2), fam.symmetric(2)]),
        True, True)
    add("Sym(3)xSym(2) external", lambda: fam.external_product([fam.symmetric(3), fam.symmetric(2)]),
        True, True)
    add("Alt(4)xSym(3) external", lambda: fam.external_product([fam.alternating(4), fam.symmetric(3)]),
        True, None)
    add("Sym(4).Z3 internal", lambda: fam.internal_product([fam.symmetric(4), fam.cyclic_from_cycle_type((3,))]),
        True, None)
    add("Sym(2)wrSym(2)", lambda: fam.wreath(fam.symmetric(2), fam.symmetric(2)), True, None)
    add("Sym(3)wrSym(2)", lambda: fam.wreath(fam.symmetric(3), fam.symmetric(2)), True, None)
    add("Sym(4)wrSym(2)", lambda: fam.wreath(fam.symmetric(4), fam.symmetric(2)), True, True)
    return cases


def product_ekr_suite(builders: Iterable[FamilyCase] | None = None, cap: int = BRUTE_CAP,
                      budget: int = DEFAULT_BUDGET) -> list:
    """Run the exhaustive oracle on family groups and record agreement with the theorems."""
    cases = list(builders) if builders is not None else default_family_cases(cap)
    for case in cases:
        case.result = brute_force_strict_check(case.group, None, cap, budget)
    return cases
