import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ekrperm import partitions_chars as pc
from ekrperm.partitions_chars import QuadraticValue


def partition_strategy(max_n=12):
    return st.integers(1, max_n).flatmap(lambda n: st.sampled_from(list(pc.partitions_of(n))))


class TestPartitions:
    def test_n4(self):
        assert list(pc.partitions_of(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]

    def test_n1(self):
        assert list(pc.partitions_of(1)) == [(1,)]

    @pytest.mark.parametrize("n,count", [(10, 42), (20, 627), (30, 5604)])
    def test_counts(self, n, count):
        assert pc.partition_count(n) == count
        if n <= 20:
            assert len(list(pc.partitions_of(n))) == count

    def test_transpose_example(self):
        assert pc.transpose((5, 3, 3, 2, 1, 1)) == (6, 4, 3, 1, 1)
        assert pc.transpose((7,)) == (1,) * 7
        assert pc.transpose((2, 1)) == (2, 1)

    @given(partition_strategy())
    def test_transpose_involution(self, lam):
        assert pc.transpose(pc.transpose(lam)) == lam

    @given(partition_strategy())
    def test_dimension_symmetric_under_transpose(self, lam):
        assert pc.dimension(lam) == pc.dimension(pc.transpose(lam))


class TestDimensions:
    def test_large_example(self):
        assert pc.dimension((5, 3, 3, 2, 1)) == 64064

    @pytest.mark.parametrize("n", range(2, 12))
    def test_linear_and_standard(self, n):
        assert pc.dimension((n,)) == 1
        assert pc.dimension((1,) * n) == 1
        assert pc.dimension((n - 1, 1)) == n - 1

    @pytest.mark.parametrize("n", range(1, 11))
    def test_sum_of_squares(self, n):
        assert sum(pc.dimension(l) ** 2 for l in pc.partitions_of(n)) == math.factorial(n)


class TestSkewHooks:
    def test_three_hooks_of_length_four(self):
        got = {(h.remainder, h.height_minus_one) for h in pc.skew_hooks((5, 4, 4, 2, 1, 1), 4)}
        assert got == {((5, 4, 4), 2), ((5, 4, 1, 1, 1, 1), 1), ((3, 3, 3, 2, 1, 1), 2)}

    @pytest.mark.parametrize("n", range(2, 10))
    def test_hook_full_removal(self, n):
        for r in range(1, n + 1):
            lam = (r,) + (1,) * (n - r)
            (h,) = pc.skew_hooks(lam, n)
            assert h.remainder == () and h.height_minus_one == n - r

    def test_square(self):
        (h,) = pc.skew_hooks((2, 2), 3)
        assert h.remainder == (1,) and h.height_minus_one == 1

    @given(partition_strategy(10), st.integers(1, 10))
    def test_removals_are_partitions(self, lam, m):
        n = sum(lam)
        for h in pc.skew_hooks(lam, m):
            mu = h.remainder
            assert sum(mu) == n - m
            assert list(mu) == sorted(mu, reverse=True)
            # the strip lies inside lam
            assert len(mu) <= len(lam) and all(a <= b for a, b in zip(mu, lam))
            # a rim hook meets each row in one interval; its row count is height + 1
            rows = [i for i in range(len(lam)) if (mu[i] if i < len(mu) else 0) < lam[i]]
            assert rows == list(range(rows[0], rows[-1] + 1))
            assert len(rows) == h.height_minus_one + 1


class TestCharacters:
    def test_hook_on_ncycle(self):
        assert pc.mn_character((3, 1, 1), (5,)) == 1

    @given(partition_strategy(10))
    def test_trivial_standard_sign(self, rho):
        n = sum(rho)
        assert pc.mn_character((n,), rho) == 1
        assert pc.mn_character((1,) * n, rho) == (-1) ** (n - len(rho))
        if n >= 2:
            assert pc.mn_character((n - 1, 1), rho) == rho.count(1) - 1

    @pytest.mark.parametrize("n", range(2, 11))
    def test_transpose_is_sign_twist(self, n):
        for lam in pc.partitions_of(n):
            lt = pc.transpose(lam)
            for rho in pc.partitions_of(n):
                assert pc.mn_character(lam, rho) == pc.sign_of_type(rho) * pc.mn_character(lt, rho)

    @pytest.mark.parametrize("n", range(2, 9))
    def test_row_orthogonality(self, n):
        lams = list(pc.partitions_of(n))
        rhos = list(pc.partitions_of(n))
        for i, a in enumerate(lams):
            for b in lams[i:]:
                s = sum(pc.class_size(r) * pc.mn_character(a, r) * pc.mn_character(b, r) for r in rhos)
                assert s == (math.factorial(n) if a == b else 0)

    @pytest.mark.parametrize("n", range(4, 13))
    def test_ncycle_closed_form(self, n):
        for lam in pc.partitions_of(n):
            want = (-1) ** (n - lam[0]) if pc.is_hook(lam) or lam == (n,) or lam == (1,) * n else 0
            assert pc.mn_character(lam, (n,)) == want

    @pytest.mark.parametrize("n", range(4, 15, 2))
    def test_two_half_cycles(self, n):
        rho = (n // 2, n // 2)
        for lam in pc.partitions_of(n):
            v = pc.mn_character(lam, rho)
            assert v in (0, 1, -1, 2, -2)
            if v == -2:
                assert pc.is_two_layer_hook(lam) or (pc.is_near_hook(lam) and pc.is_symmetric(lam))

    @pytest.mark.parametrize("n", range(8, 21, 2))
    def test_two_layer_hook_dimensions(self, n):
        for lam in pc.partitions_of(n):
            if pc.is_two_layer_hook(lam) or (pc.is_near_hook(lam) and pc.is_symmetric(lam)):
                assert pc.dimension(lam) > 2 * n - 2

    def test_two_layer_hook_examples(self):
        assert pc.is_two_layer_hook((5, 4, 2, 2, 1))
        assert pc.is_near_hook((4, 2, 1, 1)) and pc.is_symmetric((4, 2, 1, 1))
        small = [lam for n in range(1, 8) for lam in pc.partitions_of(n) if pc.is_two_layer_hook(lam)]
        assert small == []
        odd = [lam for n in (9, 11) for lam in pc.partitions_of(n) if pc.is_two_layer_hook(lam)]
        assert odd == []

    def test_class_sizes(self):
        assert pc.class_size((7,)) == math.factorial(6)
        assert pc.class_size((1,) * 6) == 1
        for n in range(3, 9):
            for m in range(2, n + 1):
                assert pc.class_size((m,) + (1,) * (n - m)) == math.factorial(m - 1) * math.comb(n, m)
            assert sum(pc.class_size(r) for r in pc.partitions_of(n)) == math.factorial(n)

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            pc.mn_character((3,), (2, 2))


class TestQuadratic:
    @given(st.fractions(), st.fractions(), st.integers(-30, 30))
    def test_conjugate_norm(self, a, b, d):
        x = QuadraticValue(a, b, d)
        assert (x * x.conjugate()).is_rational()
        assert (x * x.conjugate()) == x.norm()

    def test_square_factors_fold(self):
        x = QuadraticValue(0, 1, 12)
        assert (x.b, x.d) == (2, 3)
        assert QuadraticValue(1, 1, 9).is_rational()

    @given(st.fractions(), st.fractions(), st.fractions(), st.fractions())
    def test_field_arithmetic(self, a, b, c, e):
        x, y = QuadraticValue(a, b, 5), QuadraticValue(c, e, 5)
        assert (x + y) - y == x
        if y != 0:
            assert (x * y) / y == x

    def test_mixed_fields(self):
        with pytest.raises(ValueError):
            QuadraticValue(0, 1, 2) + QuadraticValue(0, 1, 3)


class TestAltCharacters:
    def test_split_partition_examples(self):
        assert pc.split_class_partition((11, 9, 3)) == (6, 6, 4, 3, 2, 2)
        assert pc.split_class_partition((5, 3, 1)) == (3, 3, 3)
        for n in range(3, 20, 2):
            assert pc.split_class_partition((n,)) == ((n + 1) // 2,) + (1,) * ((n - 1) // 2)

    @pytest.mark.parametrize("q", [(4,), (3, 3), (5, 5, 1), (3, 5)])
    def test_split_partition_rejects(self, q):
        with pytest.raises(pc.InvalidSplitClass):
            pc.split_class_partition(q)

    def test_five_cycle_values(self):
        (row1, row2) = pc.alt_characters((3, 1, 1), (5,))
        x, y = row1
        assert x + y == 1
        assert x * y == Fraction(1 - 5, 4)
        assert {x, y} == {QuadraticValue(Fraction(1, 2), Fraction(1, 2), 5),
                          QuadraticValue(Fraction(1, 2), Fraction(-1, 2), 5)}
        assert sorted(map(str, row2)) == sorted(map(str, row1))

    @pytest.mark.parametrize("n", range(5, 11))
    def test_non_symmetric_values_agree(self, n):
        for lam in pc.partitions_of(n):
            if pc.is_symmetric(lam):
                continue
            for rho in pc.partitions_of(n):
                if pc.sign_of_type(rho) == 1 and pc.is_split_type(rho):
                    (row,) = pc.alt_characters(lam, rho)
                    assert row[0] == row[1]

    @pytest.mark.parametrize("n", range(5, 11))
    def test_symmetric_on_nonmatching_class(self, n):
        for lam in pc.partitions_of(n):
            if not pc.is_symmetric(lam):
                continue
            hooks = pc.diagonal_hooks(lam)
            for rho in pc.partitions_of(n):
                if pc.sign_of_type(rho) != 1 or rho == hooks:
                    continue
                half = Fraction(pc.mn_character(lam, rho), 2)
                for row in pc.alt_characters(lam, rho):
                    assert all(v == half for v in row)

    @pytest.mark.parametrize("n", range(5, 12))
    def test_alt_row_orthogonality(self, n):
        # sum over Alt(n) classes of |class| * chi * conj(chi) = n!/2 for each constituent
        classes = []
        for rho in pc.partitions_of(n):
            if pc.sign_of_type(rho) != 1:
                continue
            size = pc.class_size(rho)
            classes.append((rho, [size // 2] * 2 if pc.is_split_type(rho) else [size]))
        for lam in pc.partitions_of(n):
            if not (pc.is_symmetric(lam) or lam > pc.transpose(lam)):
                continue
            rows = [pc.alt_characters(lam, rho) for rho, _ in classes]
            for k in range(len(rows[0])):
                total = QuadraticValue(0)
                for (rho, sizes), r in zip(classes, rows):
                    for s, v in zip(sizes, r[k]):
                        # complex conjugation fixes real quadratic values
                        total = total + v * (v if v.d > 0 else v.conjugate()) * s
                assert total == math.factorial(n) // 2


class TestBoundScan:
    def test_ncycles_never_violate(self):
        for n in range(5, 16):
            assert pc.character_bound_scan(n, classes=[(n,)]).passed

    def test_small_n_has_violations(self):
        assert not pc.character_bound_scan(6).passed

    def test_sign_standard_boundary(self):
        scan = pc.character_bound_scan(7, exclude_sign_standard=False)
        assert any(c.lam == (2, 1, 1, 1, 1, 1) for c in scan.violations)


def test_split_values_with_square_product():
    # the 9-cycle: 9 is a perfect square, so both values are rational
    x, y = pc.split_values((9,))
    assert {x, y} == {QuadraticValue(2), QuadraticValue(-1)}
    assert x + y == 1
