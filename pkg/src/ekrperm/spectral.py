"""Spectra of graphs, exact rank over the rationals, and eigenvalue bounds for cocliques.

Numeric eigenvalues come from numpy.  Integer and quadratic eigenvalues are
then certified exactly: the nullity of (A - lam I) mod a prime p is an upper
bound on the rational nullity, and once the upper bounds of all the confirmed
eigenvalues add up to |V| every one of them is exact.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .graphs import Graph
from .partitions_chars import QuadraticValue

SNAP_TOL = 1e-6
CLUSTER_TOL = 1e-9
DEFAULT_SEED = 20240601
CERTIFY_LIMIT = 4_000_000


class NumericAmbiguity(RuntimeError):
    """Eigenvalue clusters could not be separated or confirmed."""


# ------------------------------------------------------------------ Spectrum

@dataclass
class Spectrum:
    """Eigenvalues with multiplicities, sorted by decreasing real value.

    A value is an int, a Fraction, a QuadraticValue or (uncertified) a float.
    `exact` is True when every multiplicity has been proved.
    """

    entries: list
    exact: bool = True

    def __post_init__(self):
        merged: dict = {}
        for v, m in self.entries:
            v = _normalise(v)
            merged[v] = merged.get(v, 0) + m
        self.entries = sorted(((v, m) for v, m in merged.items() if m),
                              key=lambda e: -float(e[0]))

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def values(self) -> list:
        return [v for v, _ in self.entries]

    def as_dict(self) -> dict:
        return dict(self.entries)

    def multiplicity(self, value) -> int:
        value = _normalise(value)
        for v, m in self.entries:
            if v == value:
                return m
        return 0

    def least(self):
        return self.entries[-1][0]

    def largest(self):
        return self.entries[0][0]

    def distinct(self) -> int:
        return len(self.entries)

    def trace(self):
        """Sum of value times multiplicity (exact when all values are exact)."""
        s = QuadraticValue(Fraction(0))
        out = 0.0
        exact = True
        for v, m in self.entries:
            if isinstance(v, float):
                exact = False
                out += v * m
            else:
                try:
                    s = s + _as_quadratic(v) * m
                except ValueError:
                    exact = False
                    out += float(v) * m
        if exact:
            return s.a if s.is_rational() else s
        return out + float(s)

    def is_symmetric(self) -> bool:
        d = self.as_dict()
        for v, m in d.items():
            neg = _normalise(-v if not isinstance(v, QuadraticValue) else -v)
            if isinstance(v, float):
                if not any(abs(float(w) + v) < SNAP_TOL and mm == m for w, mm in d.items()):
                    return False
            elif d.get(neg, 0) != m:
                return False
        return True

    def __str__(self) -> str:
        return "{" + ", ".join(f"{v}^{m}" for v, m in self.entries) + "}"


def _normalise(v):
    if isinstance(v, QuadraticValue):
        if v.is_rational():
            v = v.a
        else:
            return v
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else v
    if isinstance(v, (int, np.integer)):
        return int(v)
    return float(v)


def _as_quadratic(v) -> QuadraticValue:
    if isinstance(v, QuadraticValue):
        return v
    if isinstance(v, float):
        raise ValueError("float value")
    return QuadraticValue(Fraction(v))


# ------------------------------------------------------------------ primes

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_primes(count: int = 3, seed: int = DEFAULT_SEED) -> list:
    """Distinct primes in (2^30, 2^31), drawn deterministically from `seed`."""
    rng = random.Random(seed)
    out: list = []
    while len(out) < count:
        c = rng.randrange(2**30 + 1, 2**31) | 1
        while not _is_prime(c):
            c += 2
        if c < 2**31 and c not in out:
            out.append(c)
    return out


# ------------------------------------------------------------------ modular rank

def _as_int_array(m) -> np.ndarray:
    if isinstance(m, Graph):
        return m.adjacency_matrix()
    a = np.asarray(m)
    if a.dtype == object:
        return a
    if not np.issubdtype(a.dtype, np.integer):
        raise TypeError("modular rank needs an integer matrix")
    return a.astype(np.int64)


def _reduce_mod(a: np.ndarray, p: int) -> np.ndarray:
    if a.dtype == object:
        return np.vectorize(lambda x: int(x) % p, otypes=[np.int64])(a)
    return np.mod(a, p).astype(np.int64)


def rank_mod_p(m, p: int) -> int:
    """Rank over GF(p), p < 2^31, by row reduction in int64 arithmetic."""
    a = _reduce_mod(_as_int_array(m), p)
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = a[r, c:] * inv % p
        below = a[r + 1:, c]
        idx = np.nonzero(below)[0]
        if idx.size:
            idx = idx + r + 1
            f = a[idx, c][:, None]
            a[idx, c:] = (a[idx, c:] - f * a[r, c:][None, :]) % p
        r += 1
    return r


def _kernel_mod_p(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right kernel of `a` over GF(p), one vector per row."""
    a = _reduce_mod(a, p)
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        idx = np.nonzero(a[:, c])[0]
        idx = idx[idx != r]
        if idx.size:
            f = a[idx, c][:, None]
            a[idx] = (a[idx] - f * a[r][None, :]) % p
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-a[i, fc]) % p
    return basis


def _rational_reconstruct(x: int, p: int):
    """Fraction n/d with |n|, d <= sqrt(p/2) and n = x d mod p, or None."""
    bound = math.isqrt(p // 2)
    r0, r1 = p, x % p
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)


def _bareiss_rank(rows: list) -> int:
    """Exact rank of an integer matrix (list of int lists) by fraction-free elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    m = len(a[0]) if a else 0
    r = 0
    prev = 1
    for c in range(m):
        piv = next((i for i in range(r, n) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        pv = pr[c]
        for i in range(r + 1, n):
            ri = a[i]
            f = ri[c]
            if f:
                a[i] = [(pv * ri[j] - f * pr[j]) // prev if j > c else 0 for j in range(m)]
            else:
                a[i] = [pv * ri[j] // prev if j > c else 0 for j in range(m)]
        prev = pv
        r += 1
        if r == n:
            break
    return r


@dataclass
class RankResult:
    """Rank over Q.  When `exact` is False only rank >= value is proved."""

    rank: int
    exact: bool
    method: str = ""
    modular: dict = field(default_factory=dict)

    def __int__(self) -> int:
        return self.rank

    __index__ = __int__

    def __eq__(self, other):
        if isinstance(other, RankResult):
            return (self.rank, self.exact) == (other.rank, other.exact)
        return self.rank == other

    def __str__(self):
        return str(self.rank) if self.exact else f">= {self.rank} (mod-p certificate)"


def _integerise(m) -> np.ndarray:
    """Integer matrix with the same rank (rows scaled by denominators)."""
    if isinstance(m, Graph):
        return m.adjacency_matrix()
    a = np.asarray(m, dtype=object) if not isinstance(m, np.ndarray) else m
    if a.dtype != object:
        if np.issubdtype(a.dtype, np.integer):
            return a.astype(np.int64)
        raise TypeError("exact rank needs integers or Fractions")
    out = []
    for row in a:
        row = [Fraction(x) for x in row]
        den = math.lcm(*[x.denominator for x in row]) if row else 1
        out.append([int(x * den) for x in row])
    return _fit(np.array(out, dtype=object))


def _fit(a: np.ndarray) -> np.ndarray:
    if a.size and max(abs(int(x)) for x in a.flat) < 2**62:
        return a.astype(np.int64)
    return a


def exact_rank(m, primes: int = 3, seed: int = DEFAULT_SEED) -> RankResult:
    """Rank over Q of an integer (or rational) matrix.

    The maximum of the ranks modulo `primes` seeded primes is a lower bound.
    It is certified exact when it equals the smaller dimension, or (for at most
    CERTIFY_LIMIT entries) by an exact computation on the Gram matrix of the
    smaller side: an integer kernel basis lifted from GF(p) and checked exactly,
    with fraction-free elimination as the fallback.
    """
    a = _integerise(m)
    rows, cols = a.shape
    ps = random_primes(primes, seed)
    ranks = {p: rank_mod_p(a, p) for p in ps}
    r = max(ranks.values())
    if r == min(rows, cols):
        return RankResult(r, True, "full", ranks)
    if rows * cols > CERTIFY_LIMIT:
        return RankResult(r, False, "modular", ranks)
    # rank(A) = rank(A^T A) over the reals; work on the smaller side
    if rows < cols:
        a = a.T
    gram = _gram(a)
    if _kernel_certifies(gram, r, ps):
        return RankResult(r, True, "kernel", ranks)
    exact = _bareiss_rank([[int(x) for x in row] for row in gram])
    return RankResult(exact, True, "bareiss", ranks)


def _gram(a: np.ndarray) -> np.ndarray:
    if a.dtype != object:
        mx = int(np.abs(a).max()) if a.size else 0
        if mx * mx * a.shape[0] < 2**62:
            return a.T @ a
    b = a.astype(object)
    return _fit(b.T.dot(b))


def _kernel_certifies(gram: np.ndarray, r: int, ps: Sequence[int]) -> bool:
    """Find dim - r independent rational kernel vectors of a square integer matrix."""
    p = ps[0]
    basis = _kernel_mod_p(gram, p)
    k = gram.shape[0] - r
    if basis.shape[0] != k:
        return False
    vecs = []
    for v in basis:
        fr = [_rational_reconstruct(int(x), p) for x in v]
        if any(f is None for f in fr):
            return False
        den = math.lcm(*[f.denominator for f in fr])
        vecs.append([int(f * den) for f in fr])
    g = gram.astype(object) if gram.dtype != object else gram
    kv = np.array(vecs, dtype=object).T
    if any(x != 0 for x in g.dot(kv).flat):
        return False
    # reduced echelon form makes the lifted vectors independent (identity on free columns)
    return True


# ------------------------------------------------------------------ spectra

def _shifted(a: np.ndarray, lam: int) -> np.ndarray:
    return a - lam * np.eye(a.shape[0], dtype=np.int64)


def nullity_upper_bound(a: np.ndarray, lam: int, primes: Sequence[int]) -> int:
    """min over p of nullity of (A - lam I) mod p; never below the rational nullity."""
    b = _shifted(a, lam)
    return min(a.shape[0] - rank_mod_p(b, p) for p in primes)


def _cluster(vals: np.ndarray, tol: float) -> list:
    groups: list = []
    for v in vals:
        if groups and abs(v - groups[-1][-1]) <= tol * max(1.0, abs(v)):
            groups[-1].append(v)
        else:
            groups.append([v])
    return [(float(np.mean(g)), len(g)) for g in groups]


def spectrum_numeric_certified(x, seed: int = DEFAULT_SEED, snap_tol: float = SNAP_TOL,
                               cluster_tol: float = CLUSTER_TOL, primes: int = 3) -> Spectrum:
    """Spectrum of a symmetric integer matrix (or Graph) with exact multiplicities.

    Integer eigenvalues are confirmed by modular nullity; conjugate pairs
    (s +- sqrt(s^2 - 4q)) / 2 of equal multiplicity are confirmed through the
    nullity of A^2 - sA + qI.  Anything else stays a float and the spectrum is
    marked inexact.
    """
    a = _as_int_array(x).astype(np.int64)
    n = a.shape[0]
    if n == 0:
        return Spectrum([], True)
    if n > 5000:
        raise ValueError("spectrum_numeric_certified supports at most 5000 vertices")
    ev = np.sort(np.linalg.eigvalsh(a.astype(float)))
    # loose clustering first (eigenvalues of equal value spread by rounding error)
    clusters = _cluster(ev, max(cluster_tol, 1e-7))
    ps = random_primes(primes, seed)
    entries = []
    certified = 0
    leftovers = []
    for val, mult in clusters:
        r = round(val)
        if abs(val - r) < snap_tol:
            bound = nullity_upper_bound(a, r, ps)
            if bound != mult:
                raise NumericAmbiguity(f"eigenvalue {r}: numeric multiplicity {mult}, modular nullity {bound}")
            entries.append((r, mult))
            certified += mult
        else:
            leftovers.append((val, mult))
    used = set()
    for i, (v1, m1) in enumerate(leftovers):
        if i in used:
            continue
        match = None
        for j in range(i + 1, len(leftovers)):
            v2, m2 = leftovers[j]
            if j in used or m2 != m1:
                continue
            s, q = v1 + v2, v1 * v2
            if abs(s - round(s)) < snap_tol and abs(q - round(q)) < snap_tol:
                match = j
                break
        if match is None:
            entries.append((float(v1), m1))
            continue
        v2, _ = leftovers[match]
        s, q = round(v1 + v2), round(v1 * v2)
        disc = s * s - 4 * q
        poly = a @ a - s * a + q * np.eye(n, dtype=np.int64)
        bound = min(n - rank_mod_p(poly, p) for p in ps)
        if bound != 2 * m1:
            raise NumericAmbiguity(f"quadratic pair near {v1:.6f}, {v2:.6f} not confirmed")
        used.update({i, match})
        hi = QuadraticValue(Fraction(s, 2), Fraction(1, 2), disc)
        entries.append((hi, m1))
        entries.append((hi.conjugate(), m1))
        certified += 2 * m1
    exact = certified == n
    return Spectrum(entries, exact)


def spectrum(x: Graph, **kw) -> Spectrum:
    return spectrum_numeric_certified(x, **kw)


# ------------------------------------------------------------------ bounds

def ratio_bound(n_vertices: int, k_valency: int, tau) -> Fraction:
    """Ratio (Hoffman) bound n / (1 - k/tau) on cocliques of a k-regular graph."""
    tau = Fraction(tau)
    if tau >= 0:
        raise ValueError("least eigenvalue must be negative")
    return Fraction(n_vertices) / (1 - Fraction(k_valency) / tau)


def ratio_equality_witness(x: Graph, s: Iterable[int], tau) -> bool:
    """True iff A(v_S - |S|/n 1) = tau (v_S - |S|/n 1), checked over Q."""
    tau = Fraction(tau)
    s = set(s)
    n = x.n
    k = x.regular_degree()
    if k is None:
        raise ValueError("graph is not regular")
    mask = 0
    for v in s:
        mask |= 1 << v
    size = len(s)
    for v in range(n):
        lhs = n * (x.rows[v] & mask).bit_count() - size * k
        rhs = tau * (n * (v in s) - size)
        if lhs != rhs:
            return False
    return True


def clique_cover_lower_bound(k: int, w: int) -> Fraction:
    """-k/(w-1): lower bound on tau when every edge lies in equally many w-cliques."""
    if w < 2:
        raise ValueError("clique size must be at least 2")
    return Fraction(-k, w - 1)


@dataclass
class CliqueCocliqueResult:
    holds: bool
    equality: bool


def clique_coclique_check(clique_size: int, coclique_size: int, n_vertices: int) -> CliqueCocliqueResult:
    prod = clique_size * coclique_size
    return CliqueCocliqueResult(prod <= n_vertices, prod == n_vertices)


# ------------------------------------------------------------------ transitive graphs

def _crt_primes_for(bound: int, seed: int) -> list:
    """Enough seeded primes that their product exceeds 2*bound."""
    count = 3
    while True:
        ps = random_primes(count, seed)
        if math.prod(ps) > 2 * bound:
            return ps
        count += 1


def automorphisms_verified(nb: np.ndarray, perms: Sequence[Sequence[int]], base: int = 0) -> bool:
    """Each perm preserves adjacency and together they move `base` to every vertex."""
    n = nb.shape[0]
    arrs = []
    for p in perms:
        pa = np.asarray(p, dtype=np.int64)
        if pa.shape != (n,) or not np.array_equal(np.sort(pa), np.arange(n)):
            return False
        if not np.array_equal(np.sort(pa[nb], axis=1), nb[pa]):
            return False
        arrs.append(pa)
    seen = np.zeros(n, dtype=bool)
    seen[base] = True
    frontier = np.array([base])
    while frontier.size:
        nxt = np.unique(np.concatenate([pa[frontier] for pa in arrs])) if arrs else np.array([], dtype=np.int64)
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return bool(seen.all())


def _lanczos_values(nb: np.ndarray, base: int, max_dim: int = 400) -> np.ndarray:
    """Ritz values of the Krylov space of e_base, with full reorthogonalisation."""
    n, k = nb.shape
    q = np.zeros(n)
    q[base] = 1.0
    basis = [q]
    alphas, betas = [], []
    tol = 1e-9 * max(k, 1)
    for _ in range(min(max_dim, n)):
        w = q[nb].sum(axis=1)
        alphas.append(float(w @ q))
        for _ in range(2):
            for b in basis:
                w -= (w @ b) * b
        beta = float(np.linalg.norm(w))
        if beta < tol:
            break
        betas.append(beta)
        q = w / beta
        basis.append(q)
    t = np.diag(alphas)
    m = len(alphas)
    for i in range(m - 1):
        t[i, i + 1] = t[i + 1, i] = betas[i]
    return np.sort(np.linalg.eigvalsh(t))


def _snap_values(vals: Sequence[float], snap_tol: float):
    """Split Ritz values into integers and conjugate quadratic pairs (s, q)."""
    ints, left = [], []
    for v in vals:
        r = round(v)
        if abs(v - r) < snap_tol:
            if r not in ints:
                ints.append(int(r))
        else:
            left.append(float(v))
    pairs = []
    used = set()
    for i, v1 in enumerate(left):
        if i in used:
            continue
        for j in range(i + 1, len(left)):
            if j in used:
                continue
            s, q = v1 + left[j], v1 * left[j]
            if abs(s - round(s)) < snap_tol and abs(q - round(q)) < snap_tol:
                pairs.append((int(round(s)), int(round(q))))
                used.update({i, j})
                break
        else:
            raise NumericAmbiguity(f"eigenvalue {v1:.9f} is neither integral nor quadratic")
    return sorted(ints), pairs


def _matvec_mod(nb: np.ndarray, x: np.ndarray, p: int) -> np.ndarray:
    return x[nb].sum(axis=1) % p


def _solve_mod(rows: list, rhs: list, p: int):
    """Solve a consistent system over GF(p) with a unique solution; None otherwise."""
    m = len(rows[0]) if rows else 0
    a = [[x % p for x in r] + [b % p] for r, b in zip(rows, rhs)]
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            return None
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], p - 2, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
    if any(a[i][m] for i in range(r, len(a))):
        return None
    return [a[i][m] for i in range(m)]


def multiplicities_from_traces(ints: Sequence[int], pairs: Sequence[tuple], walk, n: int,
                               seed: int = DEFAULT_SEED, primes: int = 3) -> list:
    """Exact multiplicities from closed-walk counts.

    walk(k, p) must return (A^k)_{vv} mod p for the base vertex v, so that
    tr(A^k) = n * walk(k, p).  Conjugate eigenvalues of an integer matrix share
    a multiplicity, so each pair contributes one unknown.  Working mod a prime
    p > n determines every multiplicity exactly; the seeded primes must agree.
    """
    found = None
    for p in random_primes(primes, seed + 1):
        if p <= n:
            raise ValueError("prime too small for this graph")
        # one equation per distinct eigenvalue plus two spare ones
        count = len(ints) + 2 * len(pairs) + 2
        traces = [n * walk(k, p) % p for k in range(count)]
        rows_all = []
        for k in range(count):
            row = [pow(lam, k, p) for lam in ints]
            for s, q in pairs:
                row.append(_pair_power_sum(s, q, k, p))
            rows_all.append(row)
        sol = _solve_mod(rows_all, traces, p)
        if sol is None:
            raise NumericAmbiguity("trace system singular or inconsistent modulo a certification prime")
        if any(m > n for m in sol):
            raise NumericAmbiguity("multiplicity out of range")
        if found is not None and sol != found:
            raise NumericAmbiguity("certification primes disagree")
        found = sol
    return found


def _pair_power_sum(s: int, q: int, k: int, p: int) -> int:
    """lam^k + mu^k mod p where lam, mu are the roots of x^2 - s x + q."""
    t0, t1 = 2 % p, s % p
    if k == 0:
        return t0
    for _ in range(k - 1):
        t0, t1 = t1, (s * t1 - q * t0) % p
    return t1


def spectrum_transitive_certified(x, automorphisms: Sequence[Sequence[int]], base: int = 0,
                                  seed: int = DEFAULT_SEED, snap_tol: float = SNAP_TOL) -> Spectrum:
    """Exact spectrum of a vertex-transitive graph from walks at one vertex.

    `automorphisms` are vertex permutations, verified here to preserve adjacency
    and to act transitively.  Candidate eigenvalues come from Lanczos on the
    Krylov space of e_base.  The product p(A) of the matching linear and
    quadratic factors is checked to kill e_base exactly (modulo enough primes
    to exceed the entry bound); transitivity then gives p(A) = 0, so no
    eigenvalue is missing.  Multiplicities come from multiplicities_from_traces.
    """
    nb = x.neighbour_array() if isinstance(x, Graph) else np.asarray(x, dtype=np.int64)
    n, k = nb.shape
    if not automorphisms_verified(nb, automorphisms, base):
        raise ValueError("automorphisms do not preserve the graph or are not transitive")
    ints, pairs = _snap_values(_lanczos_values(nb, base), snap_tol)
    bound = 1
    for lam in ints:
        bound *= k + abs(lam)
    for s, q in pairs:
        bound *= k * k + abs(s) * k + abs(q)
    for p in _crt_primes_for(bound, seed):
        v = np.zeros(n, dtype=np.int64)
        v[base] = 1
        for lam in ints:
            v = (_matvec_mod(nb, v, p) - lam * v) % p
        for s, q in pairs:
            av = _matvec_mod(nb, v, p)
            v = (_matvec_mod(nb, av, p) - s * av + q * v) % p
        if v.any():
            raise NumericAmbiguity("candidate minimal polynomial does not annihilate A")

    cache: dict = {}

    def walk(kk, p):
        if p not in cache:
            v = np.zeros(n, dtype=np.int64)
            v[base] = 1
            cache[p] = [1]
            cache[(p, "v")] = v
        seq = cache[p]
        while len(seq) <= kk:
            cache[(p, "v")] = _matvec_mod(nb, cache[(p, "v")], p)
            seq.append(int(cache[(p, "v")][base]))
        return seq[kk]

    mults = multiplicities_from_traces(ints, pairs, walk, n, seed)
    entries = []
    for lam, m in zip(ints, mults):
        entries.append((lam, m))
    for (s, q), m in zip(pairs, mults[len(ints):]):
        hi = QuadraticValue(Fraction(s, 2), Fraction(1, 2), s * s - 4 * q)
        entries += [(hi, m), (hi.conjugate(), m)]
    spec = Spectrum(entries, True)
    if spec.total != n:
        raise NumericAmbiguity("multiplicities do not add up to the vertex count")
    return spec
