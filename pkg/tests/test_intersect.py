from fractions import Fraction
from math import factorial

import pytest

from kapparing.intersect import (TauQuery, UnstableQueryError, genus0_closed,
                                 load_cache, save_cache, tau, tau_query)
from kapparing.partitions import partitions_of


class TestBaseValues:
    def test_three_point_normalization(self):
        assert tau(tau_query(0, (0, 0, 0))) == 1

    def test_elliptic_base(self):
        assert tau(tau_query(1, (1,))) == Fraction(1, 24)

    def test_string_to_elliptic(self):
        assert tau(tau_query(1, (2, 0))) == Fraction(1, 24)

    def test_genus0_six_points(self):
        assert tau(tau_query(0, (1, 1, 1, 0, 0, 0))) == 6


class TestClosedForm:
    @pytest.mark.parametrize("exps,value", [
        ((0, 0, 0), 1), ((1, 0, 0, 0), 1), ((2, 0, 0, 0, 0), 1)])
    def test_examples(self, exps, value):
        assert genus0_closed(exps) == value

    def test_dimension_mismatch_is_zero(self):
        assert genus0_closed((1, 1, 0)) == 0

    def test_oracle_equivalence_up_to_ten_points(self):
        for n in range(3, 11):
            for p in partitions_of(n - 3):
                exps = tuple(p) + (0,) * (n - len(p))
                assert tau(tau_query(0, exps)) == genus0_closed(exps)


class TestRecursionConsistency:
    def _stable(self, g, exps):
        return len(exps) >= (3 if g == 0 else 1)

    def test_string_equation(self):
        for g in (0, 1, 2):
            for n in range(1, 7):
                for p in partitions_of(3 * g - 3 + n) if 3 * g - 3 + n >= 0 else []:
                    exps = tuple(p) + (0,) * (n - len(p))
                    if len(exps) != n or not self._stable(g, exps):
                        continue
                    with_zero = exps + (0,)
                    lhs = tau(tau_query(g, with_zero))
                    rhs = Fraction(0)
                    for j, e in enumerate(exps):
                        if e >= 1:
                            rhs += tau(tau_query(g, exps[:j] + (e - 1,) + exps[j + 1:]))
                    assert lhs == rhs, (g, with_zero)

    def test_dilaton_equation(self):
        for g in (0, 1, 2):
            for n in range(1, 7):
                dim = 3 * g - 3 + n
                if dim < 0 or not self._stable(g, (0,) * n):
                    continue
                for p in partitions_of(dim):
                    exps = tuple(p) + (0,) * (n - len(p))
                    if len(exps) != n:
                        continue
                    lhs = tau(tau_query(g, exps + (1,)))
                    assert lhs == (2 * g - 2 + n) * tau(tau_query(g, exps)), (g, exps)

    def test_one_point_closed_form(self):
        # <tau_{3g-2}>_g = 1/(24^g g!); classical values 1/24, 1/1152, 1/82944
        for g in (1, 2, 3):
            assert tau(tau_query(g, (3 * g - 2,))) == Fraction(1, 24 ** g * factorial(g))

    def test_known_genus1_values(self):
        assert tau(tau_query(1, (1, 1))) == Fraction(1, 24)
        assert tau(tau_query(1, (2, 1, 0))) == Fraction(1, 12)
        assert tau(tau_query(1, (1, 1, 1))) == Fraction(1, 12)
        assert tau(tau_query(1, (3, 0, 0))) == Fraction(1, 24)

    def test_known_higher_genus_values(self):
        # classical two-point numbers
        assert tau(tau_query(3, (7, 1))) == Fraction(5, 82944)
        assert tau(tau_query(3, (6, 2))) == Fraction(77, 414720)
        assert tau(tau_query(3, (5, 3))) == Fraction(503, 1451520)
        assert tau(tau_query(3, (4, 4))) == Fraction(607, 1451520)


class TestQueryHandling:
    def test_dimension_mismatch_returns_zero(self):
        assert tau(tau_query(1, (5, 0))) == 0
        assert tau(tau_query(0, (1, 0, 0))) == 0

    def test_unstable_raises(self):
        with pytest.raises(UnstableQueryError):
            tau(tau_query(0, (0, 0)))
        with pytest.raises(UnstableQueryError):
            tau(tau_query(1, ()))

    def test_canonical_form(self):
        q = TauQuery(1, (0, 2, 1))
        assert q.exponents == (2, 1, 0)
        assert tau(q) == tau(tau_query(1, (1, 2, 0)))

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValueError):
            tau_query(1, (-1,))


class TestDiskCache:
    def test_round_trip(self, tmp_path):
        tau(tau_query(1, (2, 1, 1, 0)))  # populate some entries
        written = save_cache(str(tmp_path))
        assert written > 0
        path = tmp_path / "tau_cache.txt"
        lines = path.read_text().splitlines()
        assert lines == sorted(lines)
        for line in lines:
            g_text, exps_text, value = line.split("|")
            exps = [int(x) for x in exps_text.split(",")]
            assert exps == sorted(exps, reverse=True)
            num, den = value.split("/")
            int(num), int(den)
        assert load_cache(str(tmp_path)) == written

    def test_missing_dir_is_cold_start(self, tmp_path):
        assert load_cache(str(tmp_path / "nope")) == 0
