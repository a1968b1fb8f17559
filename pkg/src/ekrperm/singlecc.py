"""Cayley graphs of Sym(n) and Alt(n) whose connection set is a single class.

The family Gamma_{n,m} has connection set all m-cycles of Sym(n).  Its
eigenvalue on the irreducible lam has the closed form

    eta_lam = hl(lam)/m * sum over m-rim-hooks lam/mu of (-1)^r(mu) / hl(mu),

where hl is the product of hook lengths and r(mu) the number of rows of the
hook minus one.  Every spectrum produced here is compared against the generic
Murnaghan-Nakayama route, and a mismatch raises.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from . import partitions_chars as pc
from .cayley import (
    alt_cayley_spectrum,
    alt_class_list,
    cayley_graph,
    certified_cayley_spectrum,
    sym_cayley_spectrum,
)
from .ekr_verify import (
    ConditionA,
    ConditionB,
    ConditionC,
    EkrReport,
    brute_force_strict_check,
    canonical_coset,
    gram_decomposition,
    is_independent_set,
    matrix_M_from_rows,
)
from .families import alternating, symmetric
from .graphs import DEFAULT_BUDGET, connected_components, is_bipartite, iter_cliques_of_size
from .perm_core import _compose, cycle_type, sign
from .spectral import Spectrum, exact_rank, ratio_bound


class SpectrumMismatch(AssertionError):
    """The closed form and the generic character computation disagree."""


def _class_type(n: int, m: int) -> tuple:
    return (m,) + (1,) * (n - m)


def _check_nm(n: int, m: int) -> None:
    if not 2 <= m <= n <= 30:
        raise ValueError("need 2 <= m <= n <= 30")


# ------------------------------------------------------------------ Gamma_{n,m}

def gamma_nm_eigenvalue(lam: Sequence[int], m: int) -> Fraction:
    """eta_lam of Gamma_{n,m} from hook-length products and m-rim-hooks."""
    lam = pc.as_partition(lam)
    total = Fraction(0)
    for h in pc.skew_hooks(lam, m):
        term = Fraction(1, pc.hook_length_product(h.remainder))
        total += -term if h.height_minus_one % 2 else term
    return pc.hook_length_product(lam) * total / m


def gamma_nm_spectrum(n: int, m: int, cross_check: bool = True) -> Spectrum:
    """Exact spectrum of Gamma_{n,m} (connection set: every m-cycle of Sym(n))."""
    _check_nm(n, m)
    entries = []
    for lam in pc.partitions_of(n):
        eta = gamma_nm_eigenvalue(lam, m)
        if eta.denominator != 1:
            raise ArithmeticError(f"non-integral eigenvalue at {lam}")
        entries.append((int(eta), pc.dimension(lam) ** 2))
    spec = Spectrum(entries, True)
    if cross_check:
        other = sym_cayley_spectrum(n, [_class_type(n, m)])
        if spec.as_dict() != other.as_dict():
            raise SpectrumMismatch(f"Gamma_{{{n},{m}}}: {spec} != {other}")
    return spec


def gamma_nm_eigenvalues_by_partition(n: int, m: int) -> dict:
    _check_nm(n, m)
    return {lam: int(gamma_nm_eigenvalue(lam, m)) for lam in pc.partitions_of(n)}


def gamma_nn_hook_value(n: int, r: int) -> int:
    """Eigenvalue of Gamma_{n,n} on the hook [r, 1^(n-r)]; non-hooks give 0."""
    return math.factorial(r - 1) * math.factorial(n - r) * (-1) ** (n - r)


def gamma_nn_rank_formula(n: int) -> int:
    return math.comb(2 * n - 2, n - 1)


@dataclass
class GammaNNResult:
    n: int
    tau: int
    rank: int
    rank_formula: int
    explicit_rank: int | None = None
    seconds: float = 0.0


def gamma_nn_least_and_rank(n: int, explicit_limit: int = 7) -> GammaNNResult:
    """Least eigenvalue and adjacency rank of Gamma_{n,n}.

    The rank is n! minus the multiplicity of 0 in the exact spectrum.  When
    n <= explicit_limit it is also read off the certified spectrum of the
    explicit graph.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    t0 = time.perf_counter()
    spec = gamma_nm_spectrum(n, n)
    rank = math.factorial(n) - spec.multiplicity(0)
    explicit = None
    if n <= explicit_limit:
        g = symmetric(n)
        cyc = [e for e in g.elements() if cycle_type(e) == (n,)]
        num = certified_cayley_spectrum(g, cyc)
        if not num.exact:
            raise SpectrumMismatch("explicit spectrum could not be certified")
        explicit = g.order - num.multiplicity(0)
        if num.as_dict() != spec.as_dict():
            raise SpectrumMismatch(f"Gamma_{{{n},{n}}}: explicit {num} != characters {spec}")
    return GammaNNResult(n, int(spec.least()), rank, gamma_nn_rank_formula(n), explicit,
                         time.perf_counter() - t0)


def gamma_least(n: int, m: int) -> int:
    return int(gamma_nm_spectrum(n, m).least())


# ------------------------------------------------------------------ single classes

def _sym_class(g, t) -> list:
    t = tuple(sorted(t, reverse=True))
    return [e for e in g.elements() if cycle_type(e) == t]


def is_odd_type(t: Sequence[int]) -> bool:
    return pc.sign_of_type(tuple(t)) == -1


@dataclass
class ClassGraphFacts:
    n: int
    cycle_type: tuple
    odd: bool
    bipartite: bool
    connected: bool


def class_graph_facts(n: int, t: Sequence[int]) -> ClassGraphFacts:
    """Bipartiteness and connectivity of Gamma(Sym(n); class t) on the explicit graph."""
    t = tuple(sorted(t, reverse=True))
    g = symmetric(n)
    x = cayley_graph(g, _sym_class(g, t))
    return ClassGraphFacts(n, t, is_odd_type(t), is_bipartite(x) is not None,
                           len(connected_components(x)) == 1)


def enumerate_maximum_independent_sets(x, size: int, budget: int = DEFAULT_BUDGET) -> list:
    """Every independent set of exactly `size` vertices (exhaustive; budgeted)."""
    full = (1 << x.n) - 1
    rows = [full & ~r & ~(1 << v) for v, r in enumerate(x.rows)]
    return [frozenset(s) for s in iter_cliques_of_size(rows, size, None, budget)]


@dataclass
class OddClassEvidence:
    n: int
    cycle_type: tuple
    class_size: int
    tau: int
    ratio_bound: Fraction
    halves_independent: bool
    bipartite: bool
    connected: bool
    alpha: int | None = None                # exhaustive, when run
    maximum_sets: int | None = None
    only_halves: bool | None = None
    notes: list = field(default_factory=list)

    @property
    def confirmed(self) -> bool:
        base = (self.ratio_bound == math.factorial(self.n) // 2 and self.halves_independent
                and self.bipartite and self.connected)
        return base and self.only_halves is not False


def odd_class_classification(n: int, t: Sequence[int], exhaustive_limit: int = 5,
                             budget: int = DEFAULT_BUDGET) -> OddClassEvidence:
    """Maximum independent sets of Gamma(Sym(n); c) for an odd class c.

    The ratio bound is n!/2 because the least eigenvalue is -|c| (the sign
    character).  Both cosets of Alt(n) meet it.  For n <= exhaustive_limit all
    maximum independent sets are listed and compared with the two halves.
    """
    t = tuple(sorted(t, reverse=True))
    if sum(t) != n or not is_odd_type(t):
        raise ValueError(f"{t} is not an odd cycle type of degree {n}")
    if n > 7:
        raise ValueError("explicit graphs are limited to n <= 7")
    g = symmetric(n)
    members = _sym_class(g, t)
    spec = sym_cayley_spectrum(n, [t])
    tau = int(spec.least())
    bound = ratio_bound(g.order, len(members), tau)
    x = cayley_graph(g, members)
    idx = g.index()
    even = frozenset(idx[e] for e in g.elements() if sign(e) == 1)
    odd = frozenset(range(g.order)) - even
    halves_ok = x.is_independent(even) and x.is_independent(odd)
    ev = OddClassEvidence(n, t, len(members), tau, bound, halves_ok,
                          is_bipartite(x) is not None, len(connected_components(x)) == 1)
    if n <= exhaustive_limit:
        sets = enumerate_maximum_independent_sets(x, g.order // 2, budget)
        # nothing larger exists either
        larger = enumerate_maximum_independent_sets(x, g.order // 2 + 1, budget) if n <= 4 else []
        ev.alpha = g.order // 2 if sets and not larger else None
        ev.maximum_sets = len(sets)
        ev.only_halves = set(sets) == {even, odd}
    return ev


def odd_types(n: int) -> list:
    return [t for t in pc.partitions_of(n) if is_odd_type(t)]


# ------------------------------------------------------------------ Alt(n), n-cycles

def _ncycles(n: int) -> list:
    out = []
    for rest in permutations(range(1, n)):
        img = [0] * n
        cyc = (0,) + rest
        for i in range(n):
            img[cyc[i]] = cyc[(i + 1) % n]
        out.append(tuple(img))
    return sorted(out)


@dataclass
class AltNCycleResult:
    report: EkrReport
    brute_force: object = None          # BruteForceResult for small n
    maximum_sets: int | None = None     # Alt level, from exhaustive search
    sym_alpha: int | None = None
    sym_maximum_sets: int | None = None
    sym_sets_match: bool | None = None  # Sym-level sets are exactly S' u (1 2)S''


def alt_ncycle_strict_ekr(n: int, cross_check_limit: int = 5) -> AltNCycleResult:
    """Module method on Alt(n), n odd, with connection set the n-cycles.

    (a) ratio bound with tau = -(n-2)!, (b) unique least eigenvalue from the
    exact Alt(n) spectrum, (c) the n-cycle matrix M via its Gram matrix.  For
    n <= cross_check_limit the maximum sets are also enumerated, at Alt level
    and (through the two components) at Sym level.  n = 3 is handled by
    exhaustive search alone: Alt(3) is not 2-transitive.
    """
    if n % 2 == 0 or not 3 <= n <= 9:
        raise ValueError("n must be odd, 3 <= n <= 9")
    order = math.factorial(n) // 2
    target = math.factorial(n - 1) // 2
    rows = _ncycles(n)
    name = f"Alt({n}) n-cycles"
    if n == 3:
        g = alternating(3)
        bf = brute_force_strict_check(g, rows)
        cols = {"least": "-", "max_clique": "-", "ekr": _yn(bf.ekr), "unique": "-",
                "clique_coclique": "-", "rank": "-", "strict": _yn(bf.strict)}
        rep = EkrReport(name, n, order, 1, "classic", ConditionA(bf.ekr, "search", Fraction(bf.alpha)),
                        ConditionB(None, "not-run"), ConditionC(None, None), _v(bf.ekr), _v(bf.strict),
                        cols, oracle=_v(bf.strict), notes=["Alt(3) is not 2-transitive"])
        return AltNCycleResult(rep, bf, bf.maximum_sets_through_identity)
    half = (n,)
    spec = alt_cayley_spectrum(n, [half])
    tau = spec.least()
    mult = spec.multiplicity(tau)
    std = Fraction(-len(rows), n - 1)
    bound = ratio_bound(order, len(rows), tau)
    a = ConditionA(bound == target, "ratio", bound) if bound == target else ConditionA(None, "failed", bound)
    b_ok = tau == std and mult == (n - 1) ** 2
    b = ConditionB(True, "unique-tau") if b_ok else ConditionB(False, "failed")
    mm = matrix_M_from_rows(n, rows)
    dec = gram_decomposition(mm)
    full_target = (n - 1) * (n - 2)
    if dec is not None and dec[0] - dec[1] * (n - 3) > 0:
        c = ConditionC(full_target, True, full_target, True, "gram")
    else:
        r = exact_rank(mm.array)
        c = ConditionC(r.rank, r.rank == full_target, full_target, r.exact, r.method)
    strict = bool(a.holds and b.holds and c.full)
    cols = {"least": _yn(a.holds), "max_clique": "-", "ekr": _yn(a.holds), "unique": _yn(b_ok),
            "clique_coclique": "-", "rank": _yn(c.full), "strict": "Y" if strict else "?"}
    rep = EkrReport(name, n, order, 2 if n >= 5 else 1, "classic", a, b, c,
                    "yes" if a.holds else "unknown", "yes" if strict else "unknown", cols,
                    tau=tau, standard=std, multiplicity=mult)
    out = AltNCycleResult(rep)
    if n <= cross_check_limit:
        _cross_check(n, rows, out)
    return out


def _cross_check(n, rows, out: AltNCycleResult) -> None:
    g = alternating(n)
    bf = brute_force_strict_check(g, rows)
    out.brute_force = bf
    out.report.oracle = _v(bf.strict)
    x = cayley_graph(g, rows)
    el = g.elements()
    alt_sets = enumerate_maximum_independent_sets(x, bf.alpha)
    out.maximum_sets = len(alt_sets)
    if not all(canonical_coset(g, [el[i] for i in s]) for s in alt_sets):
        out.report.notes.append("exhaustive search found a non-canonical maximum set")
    # Sym level: the graph splits into Alt(n) and (1 2)Alt(n); assemble the
    # maximum sets from the Alt-level list and check them on the doubled graph
    s = symmetric(n)
    xs = cayley_graph(s, rows)
    comps = connected_components(xs)
    sidx = s.index()
    t12 = tuple([1, 0] + list(range(2, n)))
    alt_perm_sets = [frozenset(el[i] for i in a) for a in alt_sets]
    assembled = {frozenset(sidx[p] for p in a) | frozenset(sidx[_compose(t12, p)] for p in b)
                 for a in alt_perm_sets for b in alt_perm_sets}
    expected = set()
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    expected.add(frozenset(sidx[e] for e in s.elements()
                                           if (sign(e) == 1 and e[i] == j)
                                           or (sign(e) == -1 and _compose(t12, e)[k] == l)))
    sizes_ok = all(len(v) == 2 * bf.alpha and xs.is_independent(v) for v in assembled)
    out.sym_alpha = 2 * bf.alpha if len(comps) == 2 and sizes_ok else None
    out.sym_maximum_sets = len(assembled)
    out.sym_sets_match = sizes_ok and assembled == expected


def _yn(v) -> str:
    return "Y" if v else "N"


def _v(v) -> str:
    return "yes" if v else "no"


# ------------------------------------------------------------------ counts and scans

def even_minus_odd_derangements_enumerated(n: int) -> int:
    if n > 10:
        raise ValueError("enumeration is limited to n <= 10")
    total = 0
    for p in permutations(range(n)):
        if all(p[i] != i for i in range(n)):
            total += sign(p)
    return total


def even_minus_odd_derangements_characters(n: int) -> int:
    """Sum over derangement cycle types of sign times class size (the sign character)."""
    return sum(pc.sign_of_type(t) * pc.class_size(t) for t in pc.derangement_types(n))


def even_odd_derangement_difference(n: int, enumerate_limit: int = 9) -> int:
    """E(n) - O(n), computed by characters (and enumeration when n is small).

    Both computations are compared with (-1)^(n-1) (n-1); any disagreement raises.
    """
    if n < 1:
        raise ValueError("n must be positive")
    expected = (-1) ** (n - 1) * (n - 1)
    by_chars = even_minus_odd_derangements_characters(n)
    if by_chars != expected:
        raise AssertionError(f"character sum {by_chars} != {expected} at n={n}")
    if n <= enumerate_limit:
        by_enum = even_minus_odd_derangements_enumerated(n)
        if by_enum != expected:
            raise AssertionError(f"enumeration {by_enum} != {expected} at n={n}")
    return by_chars


@dataclass
class LeastEigenvalueCheck:
    n: int
    least: object
    standard: object
    multiplicity: int
    holds: bool
    seconds: float


def derangement_least_check(n: int) -> LeastEigenvalueCheck:
    """Is -|D|/(n-1), the eigenvalue of [n-1,1], the least eigenvalue of Gamma_{Sym(n)}?"""
    t0 = time.perf_counter()
    types = pc.derangement_types(n)
    spec = sym_cayley_spectrum(n, types)
    size = sum(pc.class_size(t) for t in types)
    std = Fraction(-size, n - 1)
    least = spec.least()
    return LeastEigenvalueCheck(n, least, std, spec.multiplicity(least), least == std,
                                time.perf_counter() - t0)


def alt_least_scan(n: int) -> LeastEigenvalueCheck:
    """Whether the least eigenvalue of Gamma_{Alt(n)} comes only from the standard character."""
    t0 = time.perf_counter()
    spec = alt_cayley_spectrum(n, alt_class_list(n))
    size = sum(pc.class_size(t) for t in pc.derangement_types(n) if pc.sign_of_type(t) == 1)
    std = Fraction(-size, n - 1)
    least = spec.least()
    mult = spec.multiplicity(least)
    return LeastEigenvalueCheck(n, least, std, mult, least == std and mult == (n - 1) ** 2,
                                time.perf_counter() - t0)
