import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ekrperm import cayley as cy
from ekrperm import graphs as gr
from ekrperm import partitions_chars as pc
from ekrperm.families import (
    alternating,
    cyclic_from_cycle_type,
    dihedral,
    field_affine_group,
    mathieu,
    pgl2,
    psl2,
    psl2_spectrum_closed_form,
    symmetric,
)
from ekrperm.perm_core import cycle_type
from ekrperm.spectral import spectrum


def by_type(g, t):
    return [e for e in g.elements() if cycle_type(e) == tuple(t)]


class TestConstruction:
    @pytest.mark.parametrize("n", [3, 5, 8])
    def test_cyclic_group_gives_cycle(self, n):
        g = cyclic_from_cycle_type([n])
        gen = g.generators[0]
        inv = tuple(sorted(range(n), key=lambda i: gen[i]))
        x = cy.cayley_graph(g, [gen, inv])
        assert x.regular_degree() == 2 and len(gr.connected_components(x)) == 1

    def test_sym3_three_cycles(self):
        g = symmetric(3)
        x = cy.cayley_graph(g, by_type(g, (3,)))
        comps = gr.connected_components(x)
        assert len(comps) == 2 and all(len(c) == 3 and x.is_clique(c) for c in comps)

    def test_everything_gives_complete_graph(self):
        g = symmetric(4)
        x = cy.cayley_graph(g, [e for e in g.elements() if e != g.identity()])
        assert x.regular_degree() == 23

    def test_derangement_graphs(self):
        x = cy.derangement_graph(symmetric(4))
        assert x.n == 24 and x.regular_degree() == 9
        assert gr.max_independent_set(cy.derangement_graph(dihedral(5))).size == 2

    def test_frobenius_components(self):
        x = cy.derangement_graph(field_affine_group(7, 3))
        comps = gr.connected_components(x)
        assert len(comps) == 3 and all(len(c) == 7 and x.is_clique(c) for c in comps)

    def test_invalid_sets(self):
        g = symmetric(3)
        with pytest.raises(cy.InvalidConnectionSet):
            cy.ConnectionSet(g, [g.identity()])
        with pytest.raises(cy.InvalidConnectionSet):
            cy.ConnectionSet(g, [(1, 2, 0)])  # inverse missing
        with pytest.raises(cy.NotDerangementClass):
            cy.derangement_graph_wrt(g, [c for c in g.conjugacy_classes() if c.cycle_type == (2, 1)])

    def test_right_translations_are_automorphisms(self):
        g = psl2(5)
        x = cy.derangement_graph(g)
        assert all(x.is_automorphism(p) for p in cy.right_translations(g))


class TestSymSpectra:
    @pytest.mark.parametrize("n", range(3, 10))
    def test_ncycles_hooks(self, n):
        s = cy.sym_cayley_spectrum(n, [(n,)])
        want = {}
        for lam in pc.partitions_of(n):
            if pc.is_hook(lam) or lam in ((n,), (1,) * n):
                v = math.factorial(lam[0] - 1) * math.factorial(n - lam[0]) * (-1) ** (n - lam[0])
            else:
                v = 0
            want[v] = want.get(v, 0) + pc.dimension(lam) ** 2
        assert s.as_dict() == want

    @pytest.mark.parametrize("n", range(4, 10))
    def test_near_ncycles_top(self, n):
        s = cy.sym_cayley_spectrum(n, [(n - 1, 1)])
        assert s.largest() == n * math.factorial(n - 2)

    @pytest.mark.parametrize("n", range(3, 13))
    def test_standard_eigenvalue(self, n):
        types = pc.derangement_types(n)
        size = sum(pc.class_size(t) for t in types)
        d = n - 1
        eta = Fraction(sum(pc.class_size(t) * pc.mn_character((n - 1, 1), t) for t in types), d)
        assert eta == Fraction(-size, n - 1)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(3, 12).flatmap(
        lambda n: st.tuples(st.just(n), st.lists(st.sampled_from(
            [t for t in pc.partitions_of(n) if t != (1,) * n]), min_size=1, max_size=4))))
    def test_total_and_trace(self, arg):
        n, types = arg
        s = cy.sym_cayley_spectrum(n, types)
        assert s.total == math.factorial(n) and s.trace() == 0

    def test_rejects_identity_and_bad_degree(self):
        with pytest.raises(cy.InvalidConnectionSet):
            cy.sym_cayley_spectrum(4, [(1, 1, 1, 1)])
        with pytest.raises(ValueError):
            cy.sym_cayley_spectrum(4, [(3,)])

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_matches_explicit_graph(self, n):
        g = symmetric(n)
        for t in pc.partitions_of(n):
            if t == (1,) * n:
                continue
            assert cy.certified_cayley_spectrum(g, by_type(g, t)).as_dict() == \
                cy.sym_cayley_spectrum(n, [t]).as_dict()

    @pytest.mark.parametrize("n", range(5, 12))
    def test_extreme_eigenvalues_only_linear(self, n):
        for t in pc.derangement_types(n):
            size = pc.class_size(t)
            for lam in pc.partitions_of(n):
                eta = Fraction(size * pc.mn_character(lam, t), pc.dimension(lam))
                assert (abs(eta) == size) == (lam in ((n,), (1,) * n))

    @pytest.mark.parametrize("n", [3, 5, 6])
    def test_even_class_components(self, n):
        g, a = symmetric(n), alternating(n)
        alt = set(a.elements())
        for t in pc.partitions_of(n):
            if t == (1,) * n or pc.sign_of_type(t) == -1:
                continue
            x = cy.cayley_graph(g, by_type(g, t))
            comps = gr.connected_components(x)
            assert len(comps) == 2
            el = g.elements()
            ident_comp = next(c for c in comps if 0 in c)
            assert {el[i] for i in ident_comp} == alt


class TestAltSpectra:
    @pytest.mark.parametrize("n", range(5, 13))
    def test_bookkeeping(self, n):
        s = cy.alt_cayley_spectrum(n, cy.alt_class_list(n))
        assert s.total == math.factorial(n) // 2
        assert s.trace() == 0

    @pytest.mark.parametrize("n", range(5, 13))
    def test_standard_value(self, n):
        s = cy.alt_cayley_spectrum(n, cy.alt_class_list(n))
        size = sum(pc.class_size(t) for t in pc.derangement_types(n) if pc.sign_of_type(t) == 1)
        assert s.multiplicity(Fraction(-size, n - 1)) >= (n - 1) ** 2

    @pytest.mark.parametrize("n", [5, 7, 9, 11])
    def test_ncycles_least(self, n):
        s = cy.alt_cayley_spectrum(n, [(n,)])
        assert s.least() == -math.factorial(n - 2)

    @pytest.mark.parametrize("n", [5, 6, 7])
    def test_matches_explicit_graph(self, n):
        a = alternating(n)
        for t, half in cy.alt_class_list(n, derangements_only=False):
            if half == 1:
                continue
            members = by_type(a, t)
            if half is not None:
                cls = [c for c in a.conjugacy_classes() if c.cycle_type == t]
                members = list(cls[0].members)
                # a split class of Alt(n) is closed under inversion only when
                # (n - r)/2 is even; otherwise use both halves
                inv = {tuple(sorted(range(n), key=lambda i: m[i])) for m in members}
                if inv != set(members):
                    continue
                got = cy.certified_cayley_spectrum(a, members)
                want = cy.alt_cayley_spectrum(n, [(t, 0)])
                want1 = cy.alt_cayley_spectrum(n, [(t, 1)])
                assert got.as_dict() in (want.as_dict(), want1.as_dict())
                continue
            got = cy.certified_cayley_spectrum(a, members)
            assert got.as_dict() == cy.alt_cayley_spectrum(n, [t]).as_dict()

    def test_range(self):
        with pytest.raises(ValueError):
            cy.alt_cayley_spectrum(21, [(21,)])


class TestClassAlgebra:
    @pytest.mark.parametrize("g", [psl2(7), pgl2(5), field_affine_group(8), mathieu(11)])
    def test_matches_certified(self, g):
        mem = g.derangements()
        s = cy.class_algebra_spectrum(g, mem)
        if g.order <= 2000:
            assert s.as_dict() == cy.certified_cayley_spectrum(g, mem).as_dict()
        assert s.total == g.order and s.trace() == 0

    @pytest.mark.parametrize("q", [4, 5, 7, 8, 9])
    def test_psl_closed_form(self, q):
        g = psl2(q)
        assert cy.class_algebra_spectrum(g, g.derangements()).as_dict() == psl2_spectrum_closed_form(q).as_dict()

    def test_standard_eigenvalue(self):
        g = mathieu(11)
        mem = g.derangements()
        assert cy.standard_eigenvalue(g, mem) == Fraction(-len(mem), 10)

    def test_not_normal(self):
        g = symmetric(4)
        with pytest.raises(cy.NotNormal):
            cy.class_algebra(g, [(1, 0, 3, 2)])


class TestQuotients:
    def test_cycle_double_cover(self):
        n = 5
        g = cyclic_from_cycle_type([2 * n])
        gen = g.generators[0]
        inv = tuple(sorted(range(2 * n), key=lambda i: gen[i]))
        half = g.elements()
        nsub = [e for e in half if all(e[e[i]] == i for i in range(2 * n))]
        assert len(nsub) == 2
        q, chk = cy.quotient_cayley(g, nsub, [gen, inv])
        assert q.n == n and q.regular_degree() == 2
        assert chk.fibre_size == 1 and chk.unscaled_contained

    def test_trivial_normal_subgroup(self):
        g = symmetric(3)
        q, chk = cy.quotient_cayley(g, [g.identity()], by_type(g, (2, 1)))
        assert q.n == 6 and chk.unscaled_contained

    def test_sym3_mod_alt3(self):
        g = symmetric(3)
        q, chk = cy.quotient_cayley(g, alternating(3).elements(), by_type(g, (2, 1)))
        assert q.n == 2 and chk.fibre_size == 3 and chk.scaled_contained
        assert chk.spectrum.as_dict() == {3: 1, 0: 4, -3: 1}

    def test_errors(self):
        g = symmetric(3)
        with pytest.raises(cy.NotNormal):
            cy.quotient_cayley(g, [g.identity(), (1, 0, 2)], by_type(g, (3,)))
        with pytest.raises(cy.IntersectsConnectionSet):
            cy.quotient_cayley(g, alternating(3).elements(), by_type(g, (3,)))

    def test_single_class_scaling(self):
        g = symmetric(4)
        v4 = [e for e in g.elements() if cycle_type(e) in ((2, 2), (1, 1, 1, 1))]
        q, chk = cy.quotient_cayley(g, v4, by_type(g, (4,)))
        assert chk.fibre_size is not None and chk.scaled_contained
