"""Unit tests for the `utils` module."""

import numpy as np
from tracat.utils import UnionFind, get_rng


class TestGetRng:
    """Unit tests for the `get_rng` function."""

    def test_same_seed_and_stream_are_equal(self):
        """Test that the same seed and stream give the same numbers."""
        first = get_rng(seed=4, stream="track-choice").integers(100, size=10)
        second = get_rng(seed=4, stream="track-choice").integers(100, size=10)
        assert np.array_equal(first, second)

    def test_streams_are_independent(self):
        """Test that different streams of one seed give different numbers."""
        first = get_rng(seed=4, stream="track-choice").random(10)
        second = get_rng(seed=4, stream="relabel").random(10)
        assert not np.array_equal(first, second)

    def test_seeds_differ(self):
        """Test that different seeds of one stream give different numbers."""
        first = get_rng(seed=0, stream="track-choice").random(10)
        second = get_rng(seed=1, stream="track-choice").random(10)
        assert not np.array_equal(first, second)


class TestUnionFind:
    """Unit tests for the `UnionFind` class."""

    def test_singletons(self):
        """Test that every item starts out on its own."""
        union_find = UnionFind(range(4))
        assert len(union_find) == 4
        assert union_find.classes() == [[0], [1], [2], [3]]

    def test_union(self):
        """Test that merging reports whether anything changed."""
        union_find = UnionFind(range(5))
        assert union_find.union(0, 3)
        assert union_find.union(3, 4)
        assert not union_find.union(0, 4)
        assert len(union_find) == 3
        assert union_find.find(4) == union_find.find(0)
        assert union_find.find(1) != union_find.find(0)

    def test_classes_keep_insertion_order(self):
        """Test that classes are listed by their first member."""
        union_find = UnionFind("abcde")
        union_find.union("e", "b")
        union_find.union("d", "a")
        assert union_find.classes() == [["a", "d"], ["b", "e"], ["c"]]

    def test_reps(self):
        """Test that there is one root per class."""
        union_find = UnionFind(range(6))
        for x in range(0, 6, 2):
            union_find.union(x, x + 1)
        reps = union_find.reps()
        assert len(reps) == 3
        assert {union_find.find(x) for x in range(6)} == reps
