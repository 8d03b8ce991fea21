import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import stable_subsets_by_filter
from stableset.core import (
    ElementSet,
    binomial,
    count_stable,
    count_stable_containing,
    enumerate_stable,
    is_stable,
)


class TestElementSet:
    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            ElementSet(5, (1, 6))
        with pytest.raises(ValueError):
            ElementSet(5, (0, 2))

    def test_rejects_unsorted_or_duplicate(self):
        with pytest.raises(ValueError):
            ElementSet(5, (3, 2))
        with pytest.raises(ValueError):
            ElementSet(5, (2, 2))

    def test_mask_and_ops(self):
        a = ElementSet.of(6, [5, 1, 3])
        assert a.elements == (1, 3, 5)
        assert a.mask == 0b010101
        assert 3 in a and 2 not in a
        b = ElementSet.of(6, [2, 4])
        assert a.isdisjoint(b)
        assert a.intersection_size(ElementSet.of(6, [3, 4, 5])) == 2

    def test_parse_canonical_roundtrip(self):
        s = ElementSet.parse("1,3,5", 6)
        assert s.canonical() == "1,3,5"
        assert ElementSet.parse("", 4).elements == ()
        assert ElementSet.parse("", 4).canonical() == ""

    @given(st.integers(1, 30).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(1, n)))))
    def test_of_roundtrip(self, case):
        n, members = case
        s = ElementSet.of(n, members)
        assert set(s.elements) == members
        assert ElementSet.parse(s.canonical(), n) == s


class TestIsStable:
    def test_spec_values(self):
        assert is_stable(ElementSet.of(6, [1, 3, 5]), wraparound=True)
        assert not is_stable(ElementSet.of(6, [1, 3, 6]), wraparound=True)
        assert is_stable(ElementSet.of(6, [1, 3, 6]), wraparound=False)
        for k in (1, 2, 3, 4):
            evens = ElementSet.of(2 * k, range(2, 2 * k + 1, 2))
            assert is_stable(evens, wraparound=True)

    def test_tiny_ground_sets(self):
        assert not is_stable(ElementSet.of(2, [1, 2]), wraparound=True)
        assert not is_stable(ElementSet.of(2, [1, 2]), wraparound=False)
        assert is_stable(ElementSet.of(1, [1]), wraparound=True)
        assert is_stable(ElementSet.of(2, [2]), wraparound=True)

    @given(
        st.integers(2, 16).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(1, n)))),
        st.booleans(),
    )
    @settings(max_examples=300)
    def test_monotone_under_subsets(self, case, wrap):
        n, members = case
        s = ElementSet.of(n, members)
        if is_stable(s, wrap):
            for drop in members:
                sub = ElementSet.of(n, members - {drop})
                assert is_stable(sub, wrap)


class TestEnumeration:
    def test_spec_list_6_2(self):
        got = [s.canonical() for s in enumerate_stable(6, 2, True)]
        assert got == ["1,3", "1,4", "1,5", "2,4", "2,5", "2,6", "3,5", "3,6", "4,6"]

    def test_tight_ground_set(self):
        for k in (1, 2, 3, 5):
            got = list(enumerate_stable(2 * k, k, True))
            assert len(got) == 2
            assert got[0].elements == tuple(range(1, 2 * k, 2))
            assert got[1].elements == tuple(range(2, 2 * k + 1, 2))

    def test_count_8_2(self):
        assert len(list(enumerate_stable(8, 2, True))) == 20

    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            list(enumerate_stable(5, 3, True))
        with pytest.raises(ValueError):
            list(enumerate_stable(4, 0, True))

    @pytest.mark.parametrize("wrap", [True, False])
    def test_matches_filter_oracle(self, wrap):
        for n in range(2, 13):
            for k in range(1, n // 2 + 1):
                got = [s.elements for s in enumerate_stable(n, k, wrap)]
                assert got == stable_subsets_by_filter(n, k, wrap)
                assert got == sorted(got)


class TestCounting:
    def test_spec_values(self):
        assert count_stable(6, 2) == 9
        assert count_stable(8, 2) == 20
        for k in range(1, 8):
            assert count_stable(2 * k, k) == 2

    def test_matches_enumeration(self):
        for n in range(2, 15):
            for k in range(1, n // 2 + 1):
                assert count_stable(n, k) == len(list(enumerate_stable(n, k, True)))

    def test_containing(self):
        assert count_stable_containing(6, 2, 1) == 3
        assert count_stable_containing(8, 2, 5) == 5
        for k in (1, 2, 3):
            assert count_stable_containing(2 * k, k, k) == 1

    def test_containing_matches_enumeration(self):
        for n in range(2, 13):
            for k in range(1, n // 2 + 1):
                sets = list(enumerate_stable(n, k, True))
                for i in range(1, n + 1):
                    expected = count_stable_containing(n, k, i)
                    assert sum(1 for s in sets if i in s) == expected

    def test_linear_count_decomposition(self):
        # linearly stable = cyclically stable + (cyclic-unstable but linear-stable)
        for n in range(2, 13):
            for k in range(1, n // 2 + 1):
                linear = len(stable_subsets_by_filter(n, k, False))
                cyclic = len(stable_subsets_by_filter(n, k, True))
                both_1_and_n = sum(
                    1
                    for combo in itertools.combinations(range(1, n + 1), k)
                    if is_stable(ElementSet(n, combo), False) and not is_stable(ElementSet(n, combo), True)
                )
                assert linear == cyclic + both_1_and_n
                assert len(list(enumerate_stable(n, k, False))) == linear

    def test_rejections(self):
        with pytest.raises(ValueError):
            count_stable(5, 3)
        with pytest.raises(ValueError):
            count_stable_containing(6, 2, 7)
        with pytest.raises(ValueError):
            count_stable_containing(6, 2, 0)


def test_binomial_conventions():
    assert binomial(5, 2) == 10
    assert binomial(3, 5) == 0
    assert binomial(0, 0) == 1
    assert binomial(4, -1) == 0
    assert binomial(-2, 1) == 0
