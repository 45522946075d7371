"""Utility functions to be used in other scripts."""

import logging
import zlib
from collections.abc import Hashable, Iterable
from typing import Generic, TypeVar

import numpy as np

logger = logging.getLogger(__package__)


T = TypeVar("T", bound=Hashable)


def get_rng(seed: int, stream: str) -> np.random.Generator:
    """Get a random number generator on a named stream.

    Every stream derived from the same seed is independent of the others, and the
    same (seed, stream) pair always yields the same generator state.

    Args:
        seed:
            The global seed.
        stream:
            The name of the stream, such as "track-choice".

    Returns:
        The random number generator.
    """
    return np.random.default_rng([seed, zlib.crc32(stream.encode("utf-8"))])


class UnionFind(Generic[T]):
    """Disjoint sets with path compression and union by rank.

    Args:
        items:
            The items, each starting out in its own set.

    Attributes:
        parent:
            The parent pointers.
        rank:
            Upper bounds on the heights of the trees, kept for roots only.
        size:
            The sizes of the sets, kept for roots only.
    """

    def __init__(self, items: Iterable[T]) -> None:
        """Initialise the disjoint sets."""
        self.parent: dict[T, T] = {x: x for x in items}
        self.rank: dict[T, int] = {x: 0 for x in self.parent}
        self.size: dict[T, int] = {x: 1 for x in self.parent}

    def find(self, x: T) -> T:
        """Find the root of the set containing `x`."""
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: T, y: T) -> bool:
        """Merge the sets containing `x` and `y`.

        Returns:
            Whether the two sets were distinct before the merge.
        """
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        self.size[x] += self.size.pop(y)
        del self.rank[y]
        return True

    def reps(self) -> set[T]:
        """The current roots."""
        return set(self.rank)

    def classes(self) -> list[list[T]]:
        """The sets, in order of first appearance of their members.

        Returns:
            One list per set, each in insertion order.
        """
        classes: dict[T, list[T]] = dict()
        for x in self.parent:
            classes.setdefault(self.find(x), list()).append(x)
        return list(classes.values())

    def __len__(self) -> int:
        """The number of disjoint sets."""
        return len(self.rank)
