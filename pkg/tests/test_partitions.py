import pytest
from hypothesis import given, strategies as st

from kapparing.partitions import (aut, at_most_k_parts, bounded_partitions,
                                  compositions_of, exact_length_partitions,
                                  format_partition, hat, minus, multinomial,
                                  order_key, pad, parse_partition, partition,
                                  partitions_of, refines)


def counting_oracle(d, k):
    """Independent count of partitions of d into at most k parts (table recursion)."""
    if d == 0:
        return 1
    if k == 0:
        return 0
    # parts <= some bound j with exactly tracked table: p(d, k) = p(d-k, k) + p(d, k-1)
    table = [[0] * (k + 1) for _ in range(d + 1)]
    for kk in range(k + 1):
        table[0][kk] = 1
    for dd in range(1, d + 1):
        for kk in range(1, k + 1):
            table[dd][kk] = table[dd][kk - 1] + (table[dd - kk][kk] if dd >= kk else 0)
    return table[d][k]


class TestEnumeration:
    def test_zero(self):
        assert partitions_of(0) == [()]

    def test_one(self):
        assert partitions_of(1) == [(1,)]

    def test_four(self):
        assert len(partitions_of(4)) == 5

    def test_classical_counts(self):
        expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
        for d, want in enumerate(expected):
            assert len(partitions_of(d)) == want
            assert len(partitions_of(d)) == counting_oracle(d, d if d else 1)

    def test_unique_and_sorted(self):
        for d in range(9):
            parts = partitions_of(d)
            assert len(set(parts)) == len(parts)
            assert parts == sorted(parts, key=order_key)
            assert all(sum(p) == d for p in parts)


class TestBounded:
    def test_p1_4_2(self):
        assert len(bounded_partitions(4, 1, 2)) == 5

    def test_p0_2_1(self):
        assert bounded_partitions(2, 0, 1) == [(2,)]

    def test_no_constraint_binds(self):
        for d in range(7):
            for i in range(3):
                assert bounded_partitions(d, i, d) == partitions_of(d)

    def test_oracle_at_most_k_parts(self):
        for d in range(10):
            for k in range(d + 2):
                assert len(at_most_k_parts(d, k)) == counting_oracle(d, k)


class TestExactLength:
    def test_4_into_2(self):
        assert exact_length_partitions(4, 2) == [(2, 2), (3, 1)]

    def test_single_part(self):
        for d in range(1, 8):
            assert exact_length_partitions(d, 1) == [(d,)]

    def test_all_ones(self):
        assert exact_length_partitions(3, 3) == [(1, 1, 1)]


class TestRefines:
    def test_merge(self):
        assert refines((2, 1, 1), (2, 2))

    def test_reflexive(self):
        for d in range(8):
            for p in partitions_of(d):
                assert refines(p, p)

    def test_negative(self):
        assert not refines((3, 1), (2, 2))

    def test_poset_axioms_exhaustive(self):
        for d in range(8):
            parts = partitions_of(d)
            for a in parts:
                for b in parts:
                    if refines(a, b) and refines(b, a):
                        assert a == b
                    for c in parts:
                        if refines(a, b) and refines(b, c):
                            assert refines(a, c)

    def test_sum_mismatch(self):
        assert not refines((2,), (3,))


class TestOrderKey:
    def test_p3_chain(self):
        assert order_key((1, 1, 1)) < order_key((2, 1)) < order_key((3,))

    def test_total_on_pd(self):
        for d in range(7):
            keys = [order_key(p) for p in partitions_of(d)]
            assert len(set(keys)) == len(keys)

    def test_compatible_with_refinement(self):
        for d in range(9):
            for a in partitions_of(d):
                for b in partitions_of(d):
                    if a != b and refines(a, b):
                        assert order_key(a) < order_key(b)


class TestAut:
    @pytest.mark.parametrize("p,value", [((2, 2, 1), 2), ((1, 1, 1), 6), ((3, 2, 1), 1)])
    def test_values(self, p, value):
        assert aut(p) == value


class TestSurgeries:
    def test_minus(self):
        assert minus((3, 2, 1, 1)) == (2, 1)
        assert minus((1, 1)) == ()
        for d in range(2, 8):
            assert minus((d,)) == (d - 1,)

    def test_pad(self):
        assert pad((2, 2), 3) == (2, 2, 1, 1, 1)
        for d in range(6):
            for p in partitions_of(d):
                assert pad(p, 0) == p
                assert sum(pad(p, 3)) == sum(p) + 3

    @given(st.lists(st.integers(min_value=1, max_value=6), max_size=6),
           st.integers(min_value=0, max_value=5))
    def test_minus_of_pad(self, parts, l):
        p = partition(parts)
        assert minus(pad(p, l)) == minus(p)

    def test_hat(self):
        assert hat((2,)) == (3, 1)
        assert hat((1, 1)) == (2, 2)
        assert hat(()) == ()

    def test_hat_shape(self):
        for d in range(1, 9):
            for p in partitions_of(d):
                h = hat(p)
                assert len(h) == sum(p)
                assert sum(h) == 2 * sum(p)

    def test_padding_bijection(self):
        # (l, nn in P(d-l; k)) -> pad(nn, l), together with P(d,k) included
        # as is, hits every element of P_1(d,k) exactly once
        for d in range(9):
            for k in range(d + 2):
                image = list(at_most_k_parts(d, k))
                for l in range(1, d - k + 1):
                    for nn in exact_length_partitions(d - l, k):
                        image.append(pad(nn, l))
                target = bounded_partitions(d, 1, k)
                assert sorted(image) == sorted(target)


class TestCompositions:
    def test_small(self):
        assert compositions_of(1) == [(1,)]
        assert set(compositions_of(2)) == {(2,), (1, 1)}
        assert len(compositions_of(3)) == 4

    def test_counts(self):
        for l in range(1, 9):
            comps = compositions_of(l)
            assert len(comps) == 2 ** (l - 1)
            assert len(set(comps)) == len(comps)
            assert all(sum(c) == l and min(c) >= 1 for c in comps)


class TestTextSyntax:
    def test_parse(self):
        assert parse_partition("3,1,1") == (3, 1, 1)
        assert parse_partition("") == ()
        assert parse_partition("1,3,1") == (3, 1, 1)

    def test_round_trip(self):
        for d in range(7):
            for p in partitions_of(d):
                assert parse_partition(format_partition(p)) == p

    def test_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_partition("3,x")
        with pytest.raises(ValueError):
            partition((0, 1))


def test_multinomial():
    assert multinomial(4, (2, 1, 1)) == 12
    with pytest.raises(ValueError):
        multinomial(4, (2, 1))
