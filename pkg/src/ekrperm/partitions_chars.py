"""Partitions, hook combinatorics and exact characters of Sym(n) and Alt(n).

Partitions are plain tuples of positive integers in weakly decreasing order.
Skew hooks (rim hooks) are removed through beta-numbers: a partition with k
parts has beta-set {lam_i + k - i}, and removing a rim hook of length m is the
same as sliding one bead from b to b - m onto an empty position.  The height of
the hook is the number of beads jumped over.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence


class InvalidSplitClass(ValueError):
    pass


def as_partition(parts: Sequence[int]) -> tuple:
    lam = tuple(int(p) for p in parts if p)
    if any(p < 0 for p in lam) or any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"not a partition: {parts}")
    return lam


def partitions_of(n: int) -> Iterator[tuple]:
    """All partitions of n in reverse-lexicographic order."""
    if n == 0:
        yield ()
        return

    def rec(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    yield from rec(n, n)


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) by Euler's pentagonal recurrence (independent of partitions_of)."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > n:
            break
        sgn = 1 if k % 2 else -1
        total += sgn * partition_count(n - g1)
        g2 = k * (3 * k + 1) // 2
        if g2 <= n:
            total += sgn * partition_count(n - g2)
        k += 1
    return total


def transpose(lam: Sequence[int]) -> tuple:
    lam = tuple(lam)
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p >= i) for i in range(1, lam[0] + 1))


def is_symmetric(lam) -> bool:
    return tuple(lam) == transpose(lam)


def hook_lengths(lam) -> list:
    lamt = transpose(lam)
    return [[lam[i] - j - 1 + lamt[j] - i for j in range(lam[i])] for i in range(len(lam))]


def hook_length_product(lam) -> int:
    return math.prod(h for row in hook_lengths(lam) for h in row)


def dimension(lam) -> int:
    n = sum(lam)
    q, r = divmod(math.factorial(n), hook_length_product(lam))
    assert r == 0, f"hook length product does not divide {n}!"
    return q


@dataclass(frozen=True)
class SkewHookRemoval:
    remainder: tuple
    height_minus_one: int


def _beta(lam, k):
    return [lam[i] + k - 1 - i for i in range(k)]


def _from_beta(beta):
    beta = sorted(beta, reverse=True)
    k = len(beta)
    return tuple(p for p in (beta[i] - (k - 1 - i) for i in range(k)) if p > 0)


def skew_hooks(lam, m: int) -> list:
    """Every rim hook of length m in lam, with r(mu) = rows of the hook minus one."""
    lam = tuple(lam)
    k = len(lam)
    beta = _beta(lam, k)
    occupied = set(beta)
    out = []
    for b in beta:
        t = b - m
        if t < 0 or t in occupied:
            continue
        height = sum(1 for c in beta if t < c < b)
        new = [c for c in beta if c != b] + [t]
        out.append(SkewHookRemoval(_from_beta(new), height))
    # largest remaining shapes first; deterministic
    out.sort(key=lambda h: h.remainder, reverse=True)
    return out


@lru_cache(maxsize=None)
def _mn(lam: tuple, rho: tuple) -> int:
    # rho holds only the cycles of length > 1; the fixed points left over are
    # handled by the dimension formula
    if not rho:
        return dimension(lam)
    total = 0
    for h in skew_hooks(lam, rho[0]):
        v = _mn(h.remainder, rho[1:])
        total += -v if h.height_minus_one % 2 else v
    return total


def mn_character(lam, rho) -> int:
    """chi^lam at cycle type rho, by Murnaghan-Nakayama (largest cycle removed first)."""
    lam = as_partition(lam)
    rho = tuple(sorted((int(r) for r in rho if r), reverse=True))
    if sum(lam) != sum(rho):
        raise ValueError(f"{lam} and {rho} are partitions of different integers")
    return _mn(lam, tuple(r for r in rho if r > 1))


def clear_caches():
    _mn.cache_clear()


def class_size(rho) -> int:
    rho = tuple(rho)
    n = sum(rho)
    denom = 1
    for part in set(rho):
        mult = rho.count(part)
        denom *= math.factorial(mult) * part ** mult
    return math.factorial(n) // denom


def sign_of_type(rho) -> int:
    rho = tuple(rho)
    return -1 if (sum(rho) - len(rho)) % 2 else 1


def is_derangement_type(rho) -> bool:
    return all(r > 1 for r in rho)


def derangement_types(n: int) -> list:
    return [rho for rho in partitions_of(n) if is_derangement_type(rho)]


def is_hook(lam) -> bool:
    lam = tuple(lam)
    return len(lam) >= 1 and lam[0] > 1 and all(p == 1 for p in lam[1:])


def is_near_hook(lam) -> bool:
    lam = tuple(lam)
    return len(lam) >= 2 and lam[0] > 1 and lam[1] == 2 and all(p == 1 for p in lam[2:])


def is_two_layer_hook(lam) -> bool:
    lam = tuple(lam)
    lt = transpose(lam)
    if len(lam) < 3 or len(lt) < 2:
        return False
    return (lam[1] + lt[1] >= 5 and lam[2] <= 2
            and lam[0] - lam[1] == lt[0] - lt[1] > 0)


# ---------------------------------------------------------------- quadratic

def _squarefree_split(d: int):
    """d = s * f^2 with s squarefree; returns (s, f)."""
    if d == 0:
        return 0, 0
    sgn = -1 if d < 0 else 1
    d = abs(d)
    f = 1
    p = 2
    while p * p <= d:
        while d % (p * p) == 0:
            d //= p * p
            f *= p
        p += 1
    return sgn * d, f


@dataclass(frozen=True)
class QuadraticValue:
    """a + b*sqrt(d) with rational a, b and squarefree integer d (d = 1 for rationals)."""

    a: Fraction
    b: Fraction = Fraction(0)
    d: int = 1

    def __post_init__(self):
        a, b, d = Fraction(self.a), Fraction(self.b), int(self.d)
        s, f = _squarefree_split(d)
        if s == 0:
            b, s = Fraction(0), 1
        else:
            b = b * f
        if s == 1:
            a, b = a + b, Fraction(0)
        if b == 0:
            s = 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", s)

    @classmethod
    def rational(cls, x) -> "QuadraticValue":
        return cls(Fraction(x))

    def is_rational(self) -> bool:
        return self.b == 0

    def _coerce(self, other):
        if isinstance(other, QuadraticValue):
            return other
        return QuadraticValue(Fraction(other))

    def _check(self, o):
        if self.b and o.b and self.d != o.d:
            raise ValueError("mixing different quadratic fields")
        return self.d if self.b else o.d

    def __add__(self, other):
        o = self._coerce(other)
        d = self._check(o)
        return QuadraticValue(self.a + o.a, self.b + o.b, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticValue(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        d = self._check(o)
        return QuadraticValue(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticValue":
        return QuadraticValue(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.is_rational():
            return QuadraticValue(self.a / o.a, self.b / o.a, self.d)
        return self * o.conjugate() / o.norm()

    def __float__(self):
        if self.d < 0 and self.b:
            raise ValueError("complex value has no real float")
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __complex__(self):
        if self.d < 0:
            return complex(float(self.a), float(self.b) * math.sqrt(-self.d))
        return complex(float(self))

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return (self.a, self.b, self.d if self.b else 1) == (o.a, o.b, o.d if o.b else 1)

    def __hash__(self):
        return hash((self.a, self.b, self.d if self.b else 1))

    def __str__(self):
        if not self.b:
            return str(self.a)
        root = f"sqrt({self.d})"
        mag = root if abs(self.b) == 1 else f"{abs(self.b)}*{root}"
        if self.a:
            sgn = "+" if self.b > 0 else "-"
            return f"{self.a} {sgn} {mag}"
        return mag if self.b > 0 else f"-{mag}"


# ---------------------------------------------------------------- Alt(n)

def is_split_type(rho) -> bool:
    """Sym(n) class of type rho splits in Alt(n): odd, pairwise distinct cycle lengths."""
    rho = tuple(rho)
    return all(r % 2 for r in rho) and len(set(rho)) == len(rho)


def split_class_partition(q: Sequence[int]) -> tuple:
    """The symmetric partition attached to a split class with cycle lengths q1 > ... > qr."""
    q = tuple(q)
    if not q or any(x % 2 == 0 for x in q) or any(a <= b for a, b in zip(q, q[1:])):
        raise InvalidSplitClass(f"need strictly decreasing odd lengths, got {q}")
    lam = []
    for i, qi in enumerate(q, 1):
        lam.append((qi + 2 * i - 1) // 2)
    # the diagonal hooks determine lam; rebuild from arm lengths (lam_i - i) and
    # the symmetry requirement leg = arm
    arms = [(qi - 1) // 2 for qi in q]
    r = len(q)
    size = sum(q)
    grid = [[False] * (size + 1) for _ in range(size + 1)]
    for i, arm in enumerate(arms):
        for j in range(i, i + arm + 1):
            grid[i][j] = True
            grid[j][i] = True
    parts = tuple(sum(row) for row in grid if sum(row))
    if (any(a < b for a, b in zip(parts, parts[1:])) or sum(parts) != size
            or parts != transpose(parts) or tuple(lam[:r]) != parts[:r]):
        raise InvalidSplitClass(f"{q} does not give a symmetric partition")
    return parts


def diagonal_hooks(lam) -> tuple:
    """Lengths 2*(lam_i - i) + 1 of the principal hooks of a symmetric partition."""
    lam = tuple(lam)
    out = []
    for i, p in enumerate(lam, 1):
        if p < i:
            break
        out.append(2 * (p - i) + 1)
    return tuple(out)


def split_values(q: Sequence[int]) -> tuple:
    """The two values (x, y) on a split class corresponding to its own partition."""
    q = tuple(q)
    n, r = sum(q), len(q)
    m = (n - r) // 2
    eps = -1 if m % 2 else 1
    prod = math.prod(q)
    half = Fraction(1, 2)
    # build y directly: when eps*prod is a square, x has already been folded to
    # a rational and its conjugate would be x again
    return QuadraticValue(eps * half, half, eps * prod), QuadraticValue(eps * half, -half, eps * prod)


def alt_characters(lam, rho) -> list:
    """Values of the Alt(n) constituents of chi^lam on the Alt(n) class(es) of type rho.

    Returns a list of rows, one per constituent (1 if lam is not symmetric, 2 if it
    is), each row listing the value on each Alt class of that type (1 if the type
    does not split, 2 if it does: the halves c' and c'').  For the corresponding split
    class the first constituent takes x on c' and y on c''; which half is c' is a
    labelling convention, so only symmetric functions of {x, y} are meaningful.
    """
    lam = as_partition(lam)
    rho = tuple(sorted(rho, reverse=True))
    if sign_of_type(rho) != 1:
        raise ValueError(f"{rho} is an odd cycle type, not a class of Alt(n)")
    chi = QuadraticValue(mn_character(lam, rho))
    split = is_split_type(rho)
    if not is_symmetric(lam):
        return [[chi, chi] if split else [chi]]
    half = chi * Fraction(1, 2)
    if not split:
        return [[half], [half]]
    if diagonal_hooks(lam) == rho:
        x, y = split_values(rho)
        return [[x, y], [y, x]]
    return [[half, half], [half, half]]


def alt_character_dimensions(lam) -> list:
    d = dimension(lam)
    return [d // 2, d // 2] if is_symmetric(lam) else [d]


# ---------------------------------------------------------------- scans

@dataclass(frozen=True)
class BoundCase:
    lam: tuple
    rho: tuple
    value: int
    dim: int


@dataclass
class CharBoundScan:
    n: int
    checked: int
    violations: list
    boundary: list  # cases excluded from the strict test because equality is forced

    @property
    def passed(self) -> bool:
        return not self.violations


def character_bound_scan(n: int, classes=None, exclude_sign_standard: bool = True) -> CharBoundScan:
    """Test |chi^lam(rho)| < chi^lam(1)/(n-1) on derangement types rho != [2,...,2].

    lam runs over partitions other than [n], [1^n], [n-1,1].  The partition
    [2,1^(n-2)] is sign times the standard character and meets the bound with
    equality on every derangement class; it is reported in `boundary` and kept out
    of the strict test unless exclude_sign_standard is False.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    skip = {(n,), (1,) * n, (n - 1, 1)}
    sign_std = (2,) + (1,) * (n - 2)
    types = derangement_types(n) if classes is None else [tuple(c) for c in classes]
    all_twos = (2,) * (n // 2) if n % 2 == 0 else None
    types = [t for t in types if t != all_twos]
    lams = [lam for lam in partitions_of(n) if lam not in skip]
    dims = {lam: dimension(lam) for lam in lams}
    violations, boundary = [], []
    checked = 0
    for rho in types:
        for lam in lams:
            v = mn_character(lam, rho)
            d = dims[lam]
            case = BoundCase(lam, rho, v, d)
            if lam == sign_std and exclude_sign_standard:
                boundary.append(case)
                continue
            checked += 1
            if abs(v) * (n - 1) >= d:
                violations.append(case)
    return CharBoundScan(n, checked, violations, boundary)
