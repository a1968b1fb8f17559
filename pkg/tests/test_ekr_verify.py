import csv
import io
import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ekrperm import ekr_verify as ev
from ekrperm import families as fam
from ekrperm.perm_core import PermGroup, cycle_type


class TestMatrixM:
    @pytest.mark.parametrize("g", [fam.symmetric(4), fam.alternating(5), fam.psl2(7), fam.pgl2(5)])
    def test_shape_and_row_sums(self, g):
        mm = ev.build_matrix_M(g)
        n = g.degree
        assert mm.shape == (len(g.derangements()), (n - 1) * (n - 2))
        # a derangement sends exactly one of the first n-1 points to the last one
        assert set(mm.array.sum(axis=1).tolist()) == {n - 2}

    def test_alt5_gram(self):
        mm = ev.build_matrix_M(fam.alternating(5))
        assert mm.shape == (24, 12)
        assert ev.gram_decomposition(mm) == (6, 2)

    @pytest.mark.parametrize("q", [2, 4, 8])
    def test_even_q_gram(self, q):
        mm = ev.build_matrix_M(fam.psl2(q))
        # X_3 has no edges, so the off-diagonal coefficient is invisible at q = 2
        want_b = q // 2 if q > 2 else 0
        assert ev.gram_decomposition(mm) == (q * (q - 1) // 2, want_b)

    def test_from_rows_matches(self):
        g = fam.alternating(5)
        a = ev.build_matrix_M(g)
        b = ev.matrix_M_from_rows(5, reversed(g.derangements()))
        assert np.array_equal(a.array, b.array)

    def test_empty(self):
        assert ev.matrix_M_from_rows(4, []).shape == (0, 6)


class TestHMatrices:
    def test_column_spaces_agree(self):
        g = fam.alternating(5)
        h = ev.canonical_matrix_H(g)
        r = ev.reduced_matrix_H(g)
        n = g.degree
        assert h.shape == (60, n * n) and r.shape == (60, n * n - 2 * (n - 1))
        assert np.linalg.matrix_rank(h) == np.linalg.matrix_rank(r) == np.linalg.matrix_rank(np.hstack([h, r]))
        assert np.linalg.matrix_rank(h) == (n - 1) ** 2 + 1

    @pytest.mark.parametrize("g", [fam.alternating(5), fam.psl2(7), fam.field_affine_group(5)])
    def test_unique_fixers(self, g):
        fx = ev.unique_fixers(g)
        for x, e in enumerate(fx):
            assert [i for i in range(g.degree) if e[i] == i] == [x]

    def test_unique_fixers_missing(self):
        with pytest.raises(AssertionError):
            ev.unique_fixers(fam.dihedral(4))

    def test_block_matrix(self):
        g = fam.alternating(5)
        mat, order, cols = ev.block_matrix(g)
        m = len(g.derangements())
        n = g.degree
        assert order[0] == g.identity() and len(order) == g.order
        block = mat[1:1 + m, n:]
        assert np.array_equal(block, ev.build_matrix_M(g).array)
        # derangements miss every diagonal column
        assert not mat[1:1 + m, :n].any()


class TestConditions:
    def test_sym5_all_three(self):
        r = ev.strict_ekr_verdict(fam.symmetric(5))
        assert r.condition_a.holds and r.condition_a.method == "ratio"
        assert r.condition_a.bound == Fraction(24)
        assert r.condition_b.method == "unique-tau"
        assert r.condition_c.full and r.condition_c.rank == 12
        assert r.strict == "yes"

    def test_frobenius_counterexample(self):
        r = ev.strict_ekr_verdict(fam.field_affine_group(7, 3), mode="extended")
        assert r.ekr == "yes" and r.strict == "no"
        assert r.counterexample_kind == "non-canonical"
        assert len(r.counterexample) == 3
        assert ev.is_independent_set(fam.field_affine_group(7, 3).derangements(), r.counterexample)
        assert ev.canonical_coset(fam.field_affine_group(7, 3), r.counterexample) is None
        assert r.oracle == "no" and r.consistent

    def test_invalid_mode(self):
        with pytest.raises(ValueError):
            ev.strict_ekr_verdict(fam.symmetric(4), mode="nope")

    def test_set_predicates(self):
        g = fam.symmetric(4)
        d = g.derangements()
        stab = [e for e in g.elements() if e[0] == 0]
        assert ev.is_independent_set(d, stab)
        assert ev.canonical_coset(g, stab) is not None
        assert not ev.is_independent_set(d, [g.identity(), d[0]])
        assert ev.is_clique_set(d, [g.identity(), d[0]])


class TestBruteForce:
    def test_sym4(self):
        bf = ev.brute_force_strict_check(fam.symmetric(4))
        assert bf.alpha == 6 and bf.ekr and bf.strict and bf.exhausted
        # n cosets through the identity, n^2 in total after translation
        assert bf.maximum_sets_through_identity * 24 // 6 == 16

    @pytest.mark.parametrize("n", range(3, 9))
    def test_dihedral(self, n):
        bf = ev.brute_force_strict_check(fam.dihedral(n))
        assert bf.alpha == 2 and bf.strict

    @pytest.mark.parametrize("p,h", [(7, 3), (5, 4), (13, 3)])
    def test_frobenius_non_coset(self, p, h):
        g = fam.field_affine_group(p, h)
        bf = ev.brute_force_strict_check(g)
        assert bf.ekr and bf.strict is False
        assert len(bf.witness) == h and ev.canonical_coset(g, bf.witness) is None

    def test_cap(self):
        from ekrperm.perm_core import CapExceeded
        with pytest.raises(CapExceeded):
            ev.brute_force_strict_check(fam.symmetric(6), cap=100)


class TestFamilies:
    @pytest.mark.parametrize("lam,want", [((2, 2), True), ((3, 2), False), ((2, 2, 2), False),
                                          ((3, 3), False), ((4, 2), True), ((3, 2, 2), False),
                                          ((4, 4), True), ((5, 3, 3), False), ((4, 3, 2), False), ((4, 4, 2), True)])
    def test_young_exceptions(self, lam, want):
        assert ev.young_strict_prediction(lam) is want

    def test_young_rejects_ones(self):
        with pytest.raises(ValueError):
            ev.young_strict_prediction((3, 1))

    def test_suite_agrees(self):
        cases = ev.product_ekr_suite()
        assert len(cases) >= 40
        bad = [c.name for c in cases if not c.agrees]
        assert not bad


class TestReport:
    def test_consistent_property(self):
        r = ev.strict_ekr_verdict(fam.symmetric(5))
        assert r.strict == "yes" and r.oracle is None and r.consistent
        r.oracle = "no"
        assert not r.consistent
        r.strict = "unknown"
        assert r.consistent

    def test_oracle_never_sole_yes(self):
        for e in fam.catalog_entries():
            if int(e.notes["order"]) > 1500:
                continue
            r = ev.report_for_entry(e, mode="extended")
            assert r.consistent, e.name
            if r.strict == "yes":
                assert r.condition_a.holds and r.condition_b.holds and r.condition_c.full

    def test_serialisation(self):
        r = ev.strict_ekr_verdict(fam.psl2(5))
        d = json.loads(r.to_json())
        assert d["verdict"] == {"ekr": "yes", "strict": "yes"}
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(ev.EkrReport.CSV_COLUMNS)
        w.writerow(r.csv_row())
        rows = list(csv.reader(io.StringIO(buf.getvalue())))
        assert rows[1][:3] == ["6", r.group, "60"]
        assert len(rows[0]) == len(rows[1]) == 10


@settings(max_examples=15, deadline=None)
@given(st.integers(3, 9))
def test_dihedral_verdict_matches_oracle(n):
    r = ev.strict_ekr_verdict(fam.dihedral(n), mode="extended")
    assert r.oracle == "yes" and r.consistent
