"""Permutations and finitely generated permutation groups.

Points are 1-based in every public input and output; internally a permutation
is a tuple of 0-based images.  Group elements are kept as raw tuples so that
groups with ~10^5 elements stay cheap to enumerate and index.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

DEFAULT_CAP = 500_000


class CapExceeded(RuntimeError):
    """Raised when a group closure grows beyond the element cap."""


class NotTransitive(ValueError):
    pass


def _compose(p: tuple, q: tuple) -> tuple:
    # (p o q)(i) = p(q(i))
    return tuple(map(p.__getitem__, q))


def _inverse(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


class Permutation:
    """A permutation of {1..n}, stored as 0-based images."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection of 0..{len(images) - 1}: {images}")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_one_line(cls, images: Sequence[int]) -> "Permutation":
        return cls(i - 1 for i in images)

    @classmethod
    def from_cycles(cls, cycles, degree: int) -> "Permutation":
        """Build from a cycle string like "(1,2,3)(4,5)" or a list of 1-based cycles."""
        if isinstance(cycles, str):
            cycles = parse_cycles(cycles)
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if not 1 <= a <= degree:
                    raise ValueError(f"point {a} outside 1..{degree}")
                if a in seen:
                    raise ValueError(f"point {a} repeated in cycle notation")
                seen.add(a)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a - 1] = b - 1
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        return Permutation(_inverse(self.images))

    def one_line(self) -> tuple:
        return tuple(v + 1 for v in self.images)

    def cycles(self, include_fixed: bool = False) -> list:
        return cycles_of(self.images, include_fixed)

    def cycle_type(self) -> tuple:
        return cycle_type(self.images)

    def fixed_points(self) -> list:
        return [i + 1 for i, v in enumerate(self.images) if i == v]

    def is_derangement(self) -> bool:
        return all(i != v for i, v in enumerate(self.images))

    def sign(self) -> int:
        return sign(self.images)

    def order(self) -> int:
        return math.lcm(*self.cycle_type())

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({self})"

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)


def compose(p: Permutation, q: Permutation) -> Permutation:
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    return Permutation(_compose(p.images, q.images))


def cycles_of(images: tuple, include_fixed: bool = False) -> list:
    n = len(images)
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        cyc = []
        x = s
        while not seen[x]:
            seen[x] = True
            cyc.append(x + 1)
            x = images[x]
        if len(cyc) > 1 or include_fixed:
            out.append(cyc)
    return out


def cycle_type(images: tuple) -> tuple:
    return tuple(sorted((len(c) for c in cycles_of(images, True)), reverse=True))


def sign(images: tuple) -> int:
    return -1 if (len(images) - len(cycles_of(images, True))) % 2 else 1


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str) -> list:
    text = text.strip()
    if text in ("", "()", "id"):
        return []
    if _CYCLE_RE.sub("", text).strip():
        raise ValueError(f"bad cycle notation: {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        pts = [int(t) for t in re.split(r"[,\s]+", body.strip()) if t]
        if pts:
            cycles.append(pts)
    return cycles


@dataclass
class ConjugacyClass:
    representative: Permutation
    members: list  # raw image tuples, canonical order
    cycle_type: tuple

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class FrobeniusInfo:
    kernel_size: int
    complement_size: int


class PermGroup:
    """Group generated by a list of permutations of {1..n}."""

    def __init__(self, generators: Iterable, degree: int | None = None, name: str = ""):
        gens = []
        for g in generators:
            gens.append(g.images if isinstance(g, Permutation) else tuple(g))
        if not gens:
            if degree is None:
                raise ValueError("need generators or a degree")
            gens = [tuple(range(degree))]
        deg = len(gens[0])
        if degree is not None and degree != deg:
            raise ValueError(f"generator degree {deg} != declared degree {degree}")
        for g in gens:
            if len(g) != deg:
                raise ValueError("generators of different degrees")
            Permutation(g)  # validates bijectivity
        self.degree = deg
        self.generators = gens
        self.name = name
        self._elements = None
        self._index = None
        self._classes = None
        self._class_of = None

    # -- enumeration -----------------------------------------------------
    def elements(self, cap: int = DEFAULT_CAP) -> list:
        if self._elements is None:
            ident = tuple(range(self.degree))
            seen = {ident}
            queue = deque([ident])
            gens = self.generators
            while queue:
                h = queue.popleft()
                for g in gens:
                    x = tuple(map(g.__getitem__, h))
                    if x not in seen:
                        seen.add(x)
                        if len(seen) > cap:
                            raise CapExceeded(
                                f"{self.name or 'group'} has more than {cap} elements")
                        queue.append(x)
            self._elements = sorted(seen)
        return self._elements

    @property
    def order(self) -> int:
        return len(self.elements())

    def index(self) -> dict:
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.elements())}
        return self._index

    def contains(self, p) -> bool:
        key = p.images if isinstance(p, Permutation) else tuple(p)
        return key in self.index()

    def identity(self) -> tuple:
        return tuple(range(self.degree))

    # -- classes ---------------------------------------------------------
    def conjugacy_classes(self) -> list:
        if self._classes is None:
            elems = self.elements()
            idx = self.index()
            class_of = [-1] * len(elems)
            gens = [(g, _inverse(g)) for g in self.generators]
            raw = []
            for start in range(len(elems)):
                if class_of[start] >= 0:
                    continue
                cid = len(raw)
                class_of[start] = cid
                orbit = [start]
                queue = deque([elems[start]])
                while queue:
                    x = queue.popleft()
                    for g, gi in gens:
                        y = _compose(_compose(g, x), gi)
                        j = idx[y]
                        if class_of[j] < 0:
                            class_of[j] = cid
                            orbit.append(j)
                            queue.append(y)
                orbit.sort()
                raw.append(orbit)
            order = sorted(range(len(raw)), key=lambda c: (len(raw[c]), raw[c][0]))
            renum = {old: new for new, old in enumerate(order)}
            self._class_of = [renum[c] for c in class_of]
            self._classes = []
            for old in order:
                members = [elems[i] for i in raw[old]]
                self._classes.append(ConjugacyClass(
                    Permutation(members[0]), members, cycle_type(members[0])))
        return self._classes

    def class_of(self) -> list:
        """Class number of each element, aligned with elements()."""
        self.conjugacy_classes()
        return self._class_of

    # -- point actions -----------------------------------------------------
    def derangements(self) -> list:
        return [e for e in self.elements() if all(i != v for i, v in enumerate(e))]

    def derangement_classes(self) -> list:
        return [c for c in self.conjugacy_classes()
                if all(i != v for i, v in enumerate(c.members[0]))]

    def stabilizer(self, x: int) -> list:
        return self.coset_of_stabilizer(x, x)

    def coset_of_stabilizer(self, i: int, j: int) -> list:
        """All elements mapping point i to point j (1-based)."""
        return [e for e in self.elements() if e[i - 1] == j - 1]

    def orbits(self) -> list:
        n = self.degree
        seen = [False] * n
        out = []
        for s in range(n):
            if seen[s]:
                continue
            orb = [s]
            seen[s] = True
            k = 0
            while k < len(orb):
                x = orb[k]
                k += 1
                for g in self.generators:
                    y = g[x]
                    if not seen[y]:
                        seen[y] = True
                        orb.append(y)
            out.append(sorted(p + 1 for p in orb))
        return out

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def transitivity_degree(self, max_k: int | None = None) -> int:
        """Largest k <= max_k such that the group is transitive on ordered k-tuples.

        The orbit of one k-tuple is grown under the generators; it is never
        larger than the group, so the test is exact and cheap.
        """
        n = self.degree
        max_k = n if max_k is None else min(max_k, n)
        if not self.is_transitive():
            return 0
        k = 1
        order = self.order
        while k < max_k:
            target = math.perm(n, k + 1)
            if target > order:
                break
            start = tuple(range(k + 1))
            seen = {start}
            queue = deque([start])
            while queue:
                t = queue.popleft()
                for g in self.generators:
                    u = tuple(g[a] for a in t)
                    if u not in seen:
                        seen.add(u)
                        queue.append(u)
            if len(seen) != target:
                break
            k += 1
        return k

    def is_frobenius(self) -> FrobeniusInfo | None:
        if not self.is_transitive():
            raise NotTransitive(self.name or "group")
        some_fix = False
        for e in self.elements():
            fix = sum(1 for i, v in enumerate(e) if i == v)
            if fix == self.degree:
                continue
            if fix >= 2:
                return None
            if fix == 1:
                some_fix = True
        if not some_fix:
            return None
        return FrobeniusInfo(self.degree, self.order // self.degree)

    # -- subgroup helpers --------------------------------------------------
    def is_normal_subset(self, subset: Iterable) -> bool:
        s = {tuple(x) for x in subset}
        for g in self.generators:
            gi = _inverse(g)
            for x in s:
                if _compose(_compose(g, x), gi) not in s:
                    return False
        return True

    def __repr__(self):
        return f"PermGroup({self.name or '?'}, degree={self.degree})"


def enumerate_elements(g: PermGroup, cap: int = DEFAULT_CAP) -> list:
    return g.elements(cap)


def burnside_orbit_count(g: PermGroup) -> Fraction:
    """(1/|G|) * sum of fixed-point counts; the number of orbits."""
    total = sum(sum(1 for i, v in enumerate(e) if i == v) for e in g.elements())
    return Fraction(total, g.order)


def fixed_point_square_mean(g: PermGroup) -> Fraction:
    total = sum(sum(1 for i, v in enumerate(e) if i == v) ** 2 for e in g.elements())
    return Fraction(total, g.order)


def symmetric_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup([], degree=1, name="Sym(1)")
    gens = [Permutation.from_cycles([[1, 2]], n)]
    if n > 2:
        gens.append(Permutation.from_cycles([list(range(1, n + 1))], n))
    return PermGroup(gens, name=f"Sym({n})")


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return PermGroup([], degree=n, name=f"Alt({n})")
    gens = [Permutation.from_cycles([[1, 2, i]], n) for i in range(3, n + 1)]
    return PermGroup(gens, name=f"Alt({n})")


@dataclass
class CatalogEntry:
    name: str
    degree: int
    generators: list
    notes: dict = field(default_factory=dict)

    def group(self) -> PermGroup:
        return PermGroup(self.generators, degree=self.degree, name=self.name)


def parse_catalog(text: str) -> list:
    """Parse `name ; degree ; gen1, gen2, ...` lines; `#` starts a comment.

    An optional fourth field carries `key=value` notes separated by spaces.
    """
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(";")]
        if len(parts) < 3:
            raise ValueError(f"catalog line {lineno}: expected 'name ; degree ; generators'")
        name, deg = parts[0], int(parts[1])
        gens = []
        # generators are separated by commas that sit between ')' and '('
        for chunk in re.split(r"\)\s*,\s*\(", parts[2]):
            chunk = chunk.strip()
            if not chunk.startswith("("):
                chunk = "(" + chunk
            if not chunk.endswith(")"):
                chunk = chunk + ")"
            gens.append(Permutation.from_cycles(chunk, deg))
        notes = {}
        if len(parts) > 3 and parts[3]:
            for tok in parts[3].split():
                k, _, v = tok.partition("=")
                notes[k] = v
        entries.append(CatalogEntry(name, deg, gens, notes))
    return entries


def format_cycles(images: tuple) -> str:
    return str(Permutation(images))
