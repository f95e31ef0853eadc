import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from kdiam import intervals


position_sets = st.sets(st.integers(min_value=1, max_value=60), max_size=40)


class TestCanonicalize:
    def test_empty(self):
        assert intervals.canonicalize([]) == ()

    def test_merges_adjacent(self):
        assert intervals.canonicalize({1, 2, 3, 5}) == ((1, 3), (5, 5))

    @given(position_sets)
    def test_roundtrip_and_canonical(self, pos):
        rep = intervals.canonicalize(pos)
        assert set(intervals.positions(rep)) == pos
        assert intervals.is_canonical(rep)
        assert intervals.size(rep) == len(pos)

    def test_random_50_subset_matches_merge_oracle(self):
        rng = np.random.default_rng(0)
        pos = set(int(x) for x in rng.choice(100, size=50, replace=False) + 1)
        rep = intervals.canonicalize(pos)
        # scan-and-merge oracle
        expect = []
        for p in sorted(pos):
            if expect and expect[-1][1] + 1 == p:
                expect[-1][1] = p
            else:
                expect.append([p, p])
        assert rep == tuple((a, b) for a, b in expect)


class TestUnionSweep:
    def test_overlapping(self):
        assert intervals.union_sweep([((1, 2),), ((2, 4),)]) == ((1, 4),)

    def test_disjoint(self):
        assert intervals.union_sweep([((1, 1),), ((3, 3),)]) == ((1, 1), (3, 3))

    def test_adjacent_merge(self):
        assert intervals.union_sweep([((1, 2),), ((3, 4),)]) == ((1, 4),)

    @given(st.lists(position_sets, max_size=10))
    @settings(max_examples=60)
    def test_matches_set_union(self, sets):
        reps = [intervals.canonicalize(s) for s in sets]
        got = intervals.union_sweep(reps)
        want = intervals.canonicalize(set().union(*sets) if sets else set())
        assert got == want
        assert intervals.is_canonical(got)


class TestDifferencePositions:
    @given(position_sets, position_sets)
    def test_matches_set_difference(self, a, b):
        ra, rb = intervals.canonicalize(a), intervals.canonicalize(b)
        assert set(intervals.difference_positions(ra, rb)) == a - b

    def test_sorted_output(self):
        ra = intervals.canonicalize({1, 2, 3, 7, 8, 12})
        rb = intervals.canonicalize({2, 7})
        out = intervals.difference_positions(ra, rb)
        assert out == sorted(out) == [1, 3, 8, 12]


class TestContains:
    @given(position_sets, st.integers(min_value=1, max_value=60))
    def test_membership(self, pos, p):
        rep = intervals.canonicalize(pos)
        assert intervals.contains(rep, p) == (p in pos)
