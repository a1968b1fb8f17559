"""Simple graphs on bitset rows, products, and exact clique / independent set search."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

DEFAULT_BUDGET = 10**8


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _popcount(x: int) -> int:
    return x.bit_count()


class Graph:
    """Finite simple graph; row v is an int whose set bits are the neighbours of v."""

    __slots__ = ("n", "rows", "labels")

    def __init__(self, n: int, rows: Sequence[int] | None = None, labels=None):
        self.n = n
        self.rows = list(rows) if rows is not None else [0] * n
        if len(self.rows) != n:
            raise ValueError("row count differs from vertex count")
        self.labels = list(labels) if labels is not None else None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, labels=None) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError("self-loop")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows, labels)

    @classmethod
    def from_matrix(cls, a) -> "Graph":
        n = len(a)
        rows = [0] * n
        for i in range(n):
            r = 0
            for j in range(n):
                if a[i][j]:
                    r |= 1 << j
            rows[i] = r
        return cls(n, rows)

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list:
        return list(_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return _popcount(self.rows[v])

    def degrees(self) -> list:
        return [_popcount(r) for r in self.rows]

    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self):
        for u in range(self.n):
            for v in _bits(self.rows[u] >> (u + 1) << (u + 1)):
                yield u, v

    def regular_degree(self) -> int | None:
        d = set(self.degrees())
        return d.pop() if len(d) == 1 else (0 if not d else None)

    @classmethod
    def from_neighbour_array(cls, nb, labels=None) -> "Graph":
        """Build from an (n, k) integer array listing the neighbours of each vertex."""
        import numpy as np
        nb = np.asarray(nb)
        n = nb.shape[0]
        nbytes = (n + 7) // 8
        rows = []
        for v in range(n):
            bits = np.zeros(nbytes * 8, dtype=np.uint8)
            bits[nb[v]] = 1
            rows.append(int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little"))
        return cls(n, rows, labels)

    def neighbour_array(self):
        """(n, k) array of sorted neighbour lists; the graph must be regular."""
        import numpy as np
        k = self.regular_degree()
        if k is None:
            raise ValueError("graph is not regular")
        nbytes = (self.n + 7) // 8
        out = np.empty((self.n, k), dtype=np.int64)
        for v, r in enumerate(self.rows):
            bits = np.unpackbits(np.frombuffer(r.to_bytes(nbytes, "little"), dtype=np.uint8),
                                 bitorder="little")
            out[v] = np.flatnonzero(bits[: self.n])
        return out

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        """True iff the vertex map v -> perm[v] preserves adjacency."""
        if sorted(perm) != list(range(self.n)):
            return False
        for v in range(self.n):
            img = 0
            for u in _bits(self.rows[v]):
                img |= 1 << perm[u]
            if img != self.rows[perm[v]]:
                return False
        return True

    def adjacency_matrix(self):
        import numpy as np
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u in range(self.n):
            for v in _bits(self.rows[u]):
                a[u, v] = 1
        return a

    def check(self) -> None:
        for u in range(self.n):
            if self.rows[u] >> u & 1:
                raise ValueError(f"self-loop at {u}")
            for v in _bits(self.rows[u]):
                if v >= self.n or not self.rows[v] >> u & 1:
                    raise ValueError(f"asymmetric edge {u}-{v}")

    def is_independent(self, vs: Iterable[int]) -> bool:
        mask = 0
        for v in vs:
            mask |= 1 << v
        return all(not (self.rows[v] & mask) for v in _bits(mask))

    def is_clique(self, vs: Iterable[int]) -> bool:
        vs = list(vs)
        mask = 0
        for v in vs:
            mask |= 1 << v
        return all((self.rows[v] | 1 << v) & mask == mask for v in vs)

    def induced(self, vs: Sequence[int]) -> "Graph":
        pos = {v: i for i, v in enumerate(vs)}
        rows = []
        for v in vs:
            r = 0
            for u in _bits(self.rows[v]):
                i = pos.get(u)
                if i is not None:
                    r |= 1 << i
            rows.append(r)
        labels = [self.labels[v] for v in vs] if self.labels else None
        return Graph(len(vs), rows, labels)

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v in range(self.n):
            lab = self.labels[v] if self.labels else v
            lines.append(f'  {v} [label="{lab}"];')
        for u, v in self.edges():
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {"vertices": self.n,
               "adjacency": [self.neighbors(v) for v in range(self.n)]}
        if self.labels:
            doc["labels"] = [str(x) for x in self.labels]
        return json.dumps(doc, sort_keys=True)


# ------------------------------------------------------------------ products

def complement(x: Graph) -> Graph:
    full = (1 << x.n) - 1
    return Graph(x.n, [(full ^ r) & ~(1 << v) for v, r in enumerate(x.rows)], x.labels)


def disjoint_union(x: Graph, y: Graph) -> Graph:
    rows = list(x.rows) + [r << x.n for r in y.rows]
    labels = None
    if x.labels and y.labels:
        labels = [(0, a) for a in x.labels] + [(1, b) for b in y.labels]
    return Graph(x.n + y.n, rows, labels)


def direct_product(x: Graph, y: Graph) -> Graph:
    """(x1,y1) ~ (x2,y2) iff x1 ~ x2 and y1 ~ y2; vertex (a, b) has index a*|Y| + b."""
    m = y.n
    rows = []
    for a in range(x.n):
        nx = list(_bits(x.rows[a]))
        for b in range(m):
            r = 0
            yb = y.rows[b]
            for c in nx:
                r |= yb << (c * m)
            rows.append(r)
    return Graph(x.n * m, rows)


def lexicographic_product(x: Graph, y: Graph) -> Graph:
    """(x1,y1) ~ (x2,y2) iff x1 ~ x2, or x1 = x2 and y1 ~ y2."""
    m = y.n
    block = (1 << m) - 1
    rows = []
    for a in range(x.n):
        outer = 0
        for c in _bits(x.rows[a]):
            outer |= block << (c * m)
        for b in range(m):
            rows.append(outer | (y.rows[b] << (a * m)))
    return Graph(x.n * m, rows)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full & ~(1 << v) for v in range(n)])


def empty_graph(n: int) -> Graph:
    return Graph(n, [0] * n)


def complete_bipartite(m: int, n: int) -> Graph:
    left = (1 << m) - 1
    right = ((1 << n) - 1) << m
    return Graph(m + n, [right] * m + [left] * n)


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def circulant(n: int, jumps: Iterable[int]) -> Graph:
    edges = set()
    for i in range(n):
        for j in jumps:
            k = (i + j) % n
            if k != i:
                edges.add((min(i, k), max(i, k)))
    return Graph.from_edges(n, sorted(edges))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def pairs_graph(n: int) -> Graph:
    """Ordered pairs (i, j) of distinct points of [n-1], in lexicographic order.

    (i, j) ~ (k, l) iff {i, j} and {k, l} are disjoint, or i = l and j != k,
    or i != l and j = k.
    """
    if n <= 3:
        raise ValueError("pairs graph needs n > 3")
    verts = list(permutations(range(1, n), 2))
    edges = []
    for a, (i, j) in enumerate(verts):
        for b in range(a + 1, len(verts)):
            k, l = verts[b]
            if ({i, j}.isdisjoint((k, l)) or (i == l and j != k) or (i != l and j == k)):
                edges.append((a, b))
    return Graph.from_edges(len(verts), edges, labels=verts)


# ------------------------------------------------------------------ structure

def connected_components(x: Graph) -> list:
    seen = 0
    comps = []
    for s in range(x.n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = 1 << s
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= x.rows[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(list(_bits(comp)))
    return comps


def is_bipartite(x: Graph) -> list | None:
    """A proper 2-colouring as a list of 0/1, or None when an odd cycle exists."""
    colour = [-1] * x.n
    for s in range(x.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for u in _bits(x.rows[v]):
                if colour[u] < 0:
                    colour[u] = 1 - colour[v]
                    stack.append(u)
                elif colour[u] == colour[v]:
                    return None
    return colour


# ------------------------------------------------------------------ cliques

@dataclass
class SearchResult:
    size: int
    witness: list
    exhausted: bool  # True: the search finished, so size is exact
    nodes: int = 0


class _Stop(Exception):
    pass


def _relabel(rows, order):
    pos = {v: i for i, v in enumerate(order)}
    out = []
    for v in order:
        r = 0
        for u in _bits(rows[v]):
            r |= 1 << pos[u]
        out.append(r)
    return out


def _clique_search(rows, budget, target=None, initial=()):
    """Branch and bound for a maximum clique with greedy colouring bounds.

    Vertices are renumbered by non-increasing degree (ties by index); the search
    stops early when `target` is reached.
    """
    n = len(rows)
    order = sorted(range(n), key=lambda v: (-_popcount(rows[v]), v))
    adj = _relabel(rows, order)
    best = [list(initial)]
    nodes = [0]

    def colour_classes(p):
        out = []
        colour = 0
        u = p
        while u:
            colour += 1
            q = u
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q &= ~adj[v]
                q ^= low if q & low else 0
                u ^= low
                out.append((v, colour))
        return out

    def expand(r, p):
        nodes[0] += 1
        if nodes[0] > budget:
            raise _Stop
        for v, c in reversed(colour_classes(p)):
            if len(r) + c <= len(best[0]):
                return
            r.append(v)
            np_ = p & adj[v]
            if np_:
                expand(r, np_)
            elif len(r) > len(best[0]):
                best[0] = [order[w] for w in r]
                if target is not None and len(r) >= target:
                    raise _Stop
            r.pop()
            p &= ~(1 << v)

    exhausted = True
    if n:
        if not best[0]:
            best[0] = [order[0]]
        try:
            expand([], (1 << n) - 1)
        except _Stop:
            exhausted = target is not None and len(best[0]) >= target
    return SearchResult(len(best[0]), sorted(best[0]), exhausted, nodes[0])


def max_clique(x: Graph, budget: int = DEFAULT_BUDGET) -> SearchResult:
    res = _clique_search(x.rows, budget)
    if x.n and res.size == 0:
        res = SearchResult(1, [0], True, res.nodes)
    return res


def max_independent_set(x: Graph, budget: int = DEFAULT_BUDGET) -> SearchResult:
    return max_clique(complement(x), budget)


def find_clique_of_size(x: Graph, t: int, budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Search for a clique of size t.

    `exhausted` is True when the answer is definite: either a witness of size t
    was found, or the complete search showed the clique number is below t.
    """
    if t <= 0:
        return SearchResult(0, [], True)
    if t == 1:
        return SearchResult(1 if x.n else 0, [0] if x.n else [], True)
    res = _clique_search(x.rows, budget, target=t)
    if res.size >= t:
        return SearchResult(t, res.witness[:t] if len(res.witness) == t else res.witness, True, res.nodes)
    return res


class BudgetExceeded(RuntimeError):
    """A bounded search ran out of nodes before finishing."""


def _colour_count(adj, p: int) -> int:
    """Number of colours used by a greedy colouring of the vertex set p."""
    colours = 0
    while p:
        colours += 1
        q = p
        while q:
            low = q & -q
            p &= ~low
            q &= ~low & ~adj[low.bit_length() - 1]
    return colours


def iter_cliques_of_size(rows: Sequence[int], t: int, candidates: int | None = None,
                         budget: int = DEFAULT_BUDGET, stats: dict | None = None):
    """Yield (as sorted lists) every clique with exactly t vertices inside `candidates`.

    Greedy colourings bound the branches.  Raises BudgetExceeded after `budget`
    nodes, so a generator that finishes has listed every such clique.  Nodes
    are added to stats["nodes"] when a dict is given.
    """
    n = len(rows)
    p0 = (1 << n) - 1 if candidates is None else candidates
    nodes = stats if stats is not None else {}
    nodes.setdefault("nodes", 0)
    start = nodes["nodes"]

    def expand(r, p):
        nodes["nodes"] += 1
        if nodes["nodes"] - start > budget:
            raise BudgetExceeded(f"clique enumeration exceeded {budget} nodes")
        if len(r) == t:
            yield sorted(r)
            return
        if len(r) + _colour_count(rows, p) < t:
            return
        while p:
            if len(r) + p.bit_count() < t:
                return
            low = p & -p
            v = low.bit_length() - 1
            p ^= low
            r.append(v)
            yield from expand(r, p & rows[v])
            r.pop()

    if t <= 0:
        yield []
        return
    yield from expand([], p0)
