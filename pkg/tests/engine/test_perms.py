"""Tests for permutation values and the elementary operations."""

import itertools

import pytest

from sortengine.errors import DomainError, PermutationError
from sortengine.families import gamma
from sortengine.perms import (
    Permutation,
    avoids,
    concat,
    contains,
    descent_count,
    format_compact,
    format_permutation,
    index_of,
    is_ltr_min,
    is_standard,
    ltr_minima,
    parse_permutation,
    random_permutation,
    reduce,
    reverse,
    symmetric_group,
)


def P(text):
    return parse_permutation(text)


def _brute_contains(perm, pattern):
    k = len(pattern)
    return any(
        reduce([perm[i] for i in idx]) == tuple(pattern)
        for idx in itertools.combinations(range(len(perm)), k))


class TestPermutation:
    def test_distinct_required(self):
        with pytest.raises(PermutationError):
            Permutation((1, 2, 2))

    def test_positive_required(self):
        with pytest.raises(PermutationError):
            Permutation((0, 1))

    def test_non_standard_is_allowed(self):
        perm = Permutation((5, 7, 8, 1, 6))
        assert not perm.is_standard()
        assert len(perm) == 5

    def test_one_based_access(self):
        perm = P('24513')
        assert perm.at(1) == 2
        assert perm.at(5) == 3
        with pytest.raises(DomainError):
            perm.at(0)

    def test_wrapped_access(self):
        perm = P('24513')
        assert perm.wrapped(6) == 2
        assert perm.wrapped(0) == 3
        assert perm.wrapped(-4) == 2

    def test_window_is_inclusive(self):
        assert P('4235167').window(2, 4) == (2, 3, 5)
        assert P('4235167').window(3, 2) == ()

    def test_equals_plain_tuple(self):
        assert P('312') == (3, 1, 2)
        assert hash(P('312')) == hash((3, 1, 2))

    def test_identity_and_reverse_identity(self):
        assert Permutation.identity(4) == (1, 2, 3, 4)
        assert Permutation.reverse_identity(3) == (3, 2, 1)


class TestTextFormat:
    def test_compact(self):
        assert P('52431') == (5, 2, 4, 3, 1)

    def test_comma_separated(self):
        assert P('11,12,7,5,8,4,3,6,2,9,1,10')[0] == 11

    def test_emitter_uses_commas(self):
        assert format_permutation(P('52431')) == '5,2,4,3,1'
        assert str(P('21')) == '2,1'

    def test_round_trip_long(self):
        perm = Permutation(range(12, 0, -1))
        assert P(str(perm)) == perm

    def test_round_trip_single_large_value(self):
        perm = Permutation((12,))
        assert format_permutation(perm) == '12,'
        assert P(format_permutation(perm)) == perm
        assert format_permutation(P('7')) == '7'

    def test_compact_form(self):
        assert format_compact(P('132')) == '132'
        with pytest.raises(PermutationError):
            format_compact(Permutation((10, 1)))

    @pytest.mark.parametrize('text', ['5x3', '1,,a', '1,1', '0,1'])
    def test_malformed(self, text):
        with pytest.raises(PermutationError):
            P(text)

    def test_empty(self):
        assert P('') == ()


class TestReduce:
    def test_standardizes_values(self):
        assert reduce(P('57816')) == (2, 4, 5, 1, 3)

    def test_identity_fixed(self):
        assert reduce(P('12345')) == (1, 2, 3, 4, 5)

    def test_large_values(self):
        assert reduce((9, 10, 1)) == (2, 3, 1)

    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            reduce(())

    def test_idempotent_exhaustive(self):
        for n in range(1, 7):
            for perm in symmetric_group(n):
                assert reduce(reduce(perm)) == reduce(perm)


class TestContains:
    def test_small_examples(self):
        assert contains(P('24513'), P('132'))
        assert not contains(P('24513'), P('321'))
        assert avoids(P('24513'), P('321'))

    def test_pattern_longer_than_permutation(self):
        assert not contains(P('12'), P('123'))

    def test_matches_brute_force(self):
        patterns = list(symmetric_group(3))
        for n in range(1, 7):
            for perm in symmetric_group(n):
                for pattern in patterns:
                    assert contains(perm, pattern) == _brute_contains(perm, pattern)

    def test_non_standard_text(self):
        assert contains(P('57816'), P('231'))


class TestElementaryOperations:
    def test_index_of(self):
        assert index_of(P('24513'), 1) == 4
        assert index_of(gamma(7), 1) == 5
        assert index_of(P('43215'), 5) == 5

    def test_index_of_absent(self):
        with pytest.raises(DomainError):
            index_of(P('123'), 4)

    def test_index_of_inverts_access(self):
        for perm in symmetric_group(5):
            assert all(index_of(perm, perm.at(j)) == j for j in range(1, 6))

    def test_reverse(self):
        assert reverse(P('123')) == (3, 2, 1)
        for perm in symmetric_group(5):
            assert reverse(reverse(perm)) == perm

    def test_concat(self):
        assert concat(gamma(5), (6,)) == gamma(6) == (3, 2, 1, 4, 5, 6)

    def test_concat_rejects_overlap(self):
        with pytest.raises(PermutationError):
            concat(P('12'), P('2'))

    def test_ltr_minima(self):
        assert ltr_minima(P('24513')) == (1, 4)
        assert ltr_minima(P('11,12,7,5,8,4,3,6,2,9,1,10')) == (1, 3, 4, 6, 7, 9, 11)

    def test_is_ltr_min(self):
        assert is_ltr_min(P('24513'), 4)
        assert not is_ltr_min(P('24513'), 2)

    def test_descent_count(self):
        assert descent_count(P('52431')) == 3
        assert descent_count(P('12345')) == 0


class TestGenerators:
    def test_symmetric_group_sizes(self):
        assert [sum(1 for _ in symmetric_group(n)) for n in range(1, 7)] == [1, 2, 6, 24, 120, 720]

    def test_lexicographic_order(self):
        perms = list(symmetric_group(4))
        assert perms == sorted(perms)

    def test_shard_by_first_element(self):
        shard = list(symmetric_group(4, first=3))
        assert len(shard) == 6
        assert all(p[0] == 3 for p in shard)

    def test_random_permutation_is_standard(self, rng):
        for n in (1, 5, 12):
            perm = random_permutation(n, rng)
            assert is_standard(perm)
            assert len(perm) == n
