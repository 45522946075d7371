"""Finite groups in additive notation and homomorphisms between them.

Groups are not assumed to be commutative: `x + y` is written `g.add(x, y)` and the
order of the arguments matters. Elements are the integers `0, ..., order - 1`, with
`0` the neutral element.
"""

import itertools as it
import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .exceptions import ElementOutOfRange, StructuralError
from .reports import ValidationReport

logger = logging.getLogger(__package__)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its Cayley table.

    Attributes:
        add_table:
            The (order x order) table with `add_table[x, y] = x + y`.
        neg_table:
            The table with `neg_table[x] = -x`.
        name:
            An optional name, only used for logging.
    """

    add_table: np.ndarray
    neg_table: np.ndarray
    name: str = ""

    def __post_init__(self) -> None:
        """Freeze the tables."""
        for attr in ("add_table", "neg_table"):
            table = np.array(getattr(self, attr), dtype=np.int64)
            table.setflags(write=False)
            object.__setattr__(self, attr, table)

    @property
    def order(self) -> int:
        """The number of elements of the group."""
        return int(self.neg_table.shape[0])

    @property
    def zero(self) -> int:
        """The neutral element."""
        return 0

    @property
    def elements(self) -> range:
        """All elements of the group."""
        return range(self.order)

    def check_element(self, x: int) -> None:
        """Raise if `x` is not an element of the group.

        Args:
            x:
                The element index to check.

        Raises:
            ElementOutOfRange:
                If `x` is not in `0, ..., order - 1`.
        """
        if not 0 <= x < self.order:
            raise ElementOutOfRange(element=x, order=self.order)

    def add(self, x: int, y: int) -> int:
        """Return `x + y`."""
        return int(self.add_table[x, y])

    def neg(self, x: int) -> int:
        """Return `-x`."""
        return int(self.neg_table[x])

    def sum(self, *terms: int) -> int:
        """Return the sum of the terms, added from left to right.

        Args:
            *terms:
                The summands. The empty sum is zero.

        Returns:
            The sum `terms[0] + terms[1] + ...`.
        """
        total = self.zero
        for term in terms:
            total = int(self.add_table[total, term])
        return total

    @cached_property
    def is_abelian(self) -> bool:
        """Whether the group is commutative."""
        return bool(np.array_equal(self.add_table, self.add_table.T))

    def key(self) -> tuple:
        """A hashable key identifying the group tables."""
        return (self.order, self.add_table.tobytes(), self.neg_table.tobytes())

    def __eq__(self, other: object) -> bool:
        """Groups are equal when their tables are."""
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        """Return a hash of the group tables."""
        return hash(self.key())

    def __repr__(self) -> str:
        """Return a short representation of the group."""
        return f"FiniteGroup(name={self.name!r}, order={self.order})"


@dataclass(frozen=True, eq=False)
class GroupHom:
    """A homomorphism between finite groups.

    Attributes:
        src:
            The domain.
        dst:
            The codomain.
        mapping:
            The table with `mapping[x]` the image of `x`.
    """

    src: FiniteGroup
    dst: FiniteGroup
    mapping: np.ndarray

    def __post_init__(self) -> None:
        """Freeze the table."""
        mapping = np.array(self.mapping, dtype=np.int64)
        mapping.setflags(write=False)
        object.__setattr__(self, "mapping", mapping)

    def __call__(self, x: int) -> int:
        """Return the image of `x`."""
        return int(self.mapping[x])

    @property
    def is_bijective(self) -> bool:
        """Whether the map is a bijection."""
        return self.src.order == self.dst.order and len(
            set(self.mapping.tolist())
        ) == len(self.mapping)

    def key(self) -> tuple[int, ...]:
        """A hashable key identifying the map."""
        return tuple(self.mapping.tolist())

    def __eq__(self, other: object) -> bool:
        """Homomorphisms are equal when their groups and maps are."""
        if not isinstance(other, GroupHom):
            return NotImplemented
        return (
            self.src == other.src
            and self.dst == other.dst
            and self.key() == other.key()
        )

    def __hash__(self) -> int:
        """Return a hash of the map."""
        return hash(self.key())

    def __repr__(self) -> str:
        """Return a short representation of the map."""
        return f"GroupHom({list(self.key())})"


def validate_group(g: FiniteGroup) -> ValidationReport:
    """Check the group axioms on a Cayley table.

    Args:
        g:
            The group to check.

    Returns:
        The report listing every failed axiom with a witness.

    Raises:
        StructuralError:
            If the tables have inconsistent dimensions or out of range entries.
    """
    n = g.order
    if n < 1:
        raise StructuralError("A group needs at least one element.")
    if g.add_table.shape != (n, n):
        raise StructuralError(
            f"The addition table has shape {g.add_table.shape}, but the negation "
            f"table has {n} entries."
        )
    for table_name, table in (("addition", g.add_table), ("negation", g.neg_table)):
        if table.size and (table.min() < 0 or table.max() >= n):
            raise StructuralError(
                f"The {table_name} table has entries outside 0, ..., {n - 1}."
            )

    report = ValidationReport(subject="group")
    elements = np.arange(n)

    for x in np.flatnonzero(
        (g.add_table[:, 0] != elements) | (g.add_table[0, :] != elements)
    ):
        report.add("identity", (str(x),), "0 is not a two-sided unit")

    for x in np.flatnonzero(
        (g.add_table[elements, g.neg_table] != 0)
        | (g.add_table[g.neg_table, elements] != 0)
    ):
        report.add("inverse", (str(x),), f"neg({x}) = {g.neg(x)} is not an inverse")

    # (x + y) + z against x + (y + z), over all triples at once
    lhs = g.add_table[g.add_table[:, :, None], elements[None, None, :]]
    rhs = g.add_table[elements[:, None, None], g.add_table[None, :, :]]
    for x, y, z in np.argwhere(lhs != rhs):
        report.add("associativity", (str(x), str(y), str(z)))

    return report


def validate_hom(h: GroupHom) -> ValidationReport:
    """Check that a map between groups is a homomorphism.

    Args:
        h:
            The map to check.

    Returns:
        The report listing every pair (x, y) with h(x + y) != h(x) + h(y).

    Raises:
        StructuralError:
            If the map table does not fit its domain and codomain.
    """
    if h.mapping.shape != (h.src.order,):
        raise StructuralError(
            f"A map out of a group of order {h.src.order} has {h.mapping.size} "
            "entries."
        )
    if h.mapping.size and (h.mapping.min() < 0 or h.mapping.max() >= h.dst.order):
        raise StructuralError("The map has values outside its codomain.")

    report = ValidationReport(subject="homomorphism")
    if h(0) != 0:
        report.add("hom", ("0",), f"0 is sent to {h(0)}")
    image_of_sum = h.mapping[h.src.add_table]
    sum_of_images = h.dst.add_table[h.mapping[:, None], h.mapping[None, :]]
    for x, y in np.argwhere(image_of_sum != sum_of_images):
        report.add("hom", (str(x), str(y)))
    return report


def conjugate(g: FiniteGroup, a: int, t: int) -> int:
    """Conjugate `t` by `a`.

    Args:
        g:
            The group.
        a:
            The conjugating element.
        t:
            The conjugated element.

    Returns:
        The element `a + t - a`.

    Raises:
        ElementOutOfRange:
            If `a` or `t` is not an element of `g`.
    """
    g.check_element(a)
    g.check_element(t)
    return g.sum(a, t, g.neg(a))


def identity_hom(g: FiniteGroup) -> GroupHom:
    """The identity homomorphism of a group."""
    return GroupHom(src=g, dst=g, mapping=np.arange(g.order))


def zero_hom(src: FiniteGroup, dst: FiniteGroup) -> GroupHom:
    """The homomorphism sending everything to zero."""
    return GroupHom(src=src, dst=dst, mapping=np.zeros(src.order, dtype=np.int64))


def compose_homs(outer: GroupHom, inner: GroupHom) -> GroupHom:
    """Compose two homomorphisms.

    Args:
        outer:
            The homomorphism applied last.
        inner:
            The homomorphism applied first.

    Returns:
        The composite `outer o inner`.

    Raises:
        StructuralError:
            If the codomain of `inner` is not the domain of `outer`.
    """
    if inner.dst != outer.src:
        raise StructuralError("The homomorphisms are not composable.")
    return GroupHom(src=inner.src, dst=outer.dst, mapping=outer.mapping[inner.mapping])


def invert_hom(h: GroupHom) -> GroupHom:
    """Invert a bijective homomorphism.

    Raises:
        StructuralError:
            If the homomorphism is not a bijection.
    """
    if not h.is_bijective:
        raise StructuralError("Only bijective homomorphisms can be inverted.")
    inverse = np.empty(h.dst.order, dtype=np.int64)
    inverse[h.mapping] = np.arange(h.src.order)
    return GroupHom(src=h.dst, dst=h.src, mapping=inverse)


def enumerate_isomorphisms(g1: FiniteGroup, g2: FiniteGroup) -> list[GroupHom]:
    """Find all isomorphisms between two groups.

    This is a brute force search over the bijections fixing zero, which is fast
    enough for the small groups appearing as coefficients.

    Args:
        g1:
            The domain.
        g2:
            The codomain.

    Returns:
        All bijective homomorphisms from `g1` to `g2`, in lexicographic order of
        their tables. Empty if there are none.
    """
    if g1.order != g2.order:
        return list()

    isomorphisms: list[GroupHom] = list()
    for images in it.permutations(range(1, g2.order)):
        mapping = np.array((0, *images), dtype=np.int64)
        image_of_sum = mapping[g1.add_table]
        sum_of_images = g2.add_table[mapping[:, None], mapping[None, :]]
        if np.array_equal(image_of_sum, sum_of_images):
            isomorphisms.append(GroupHom(src=g1, dst=g2, mapping=mapping))

    logger.debug(
        f"Found {len(isomorphisms)} isomorphisms between groups of order {g1.order}."
    )
    return isomorphisms


def automorphisms(g: FiniteGroup) -> list[GroupHom]:
    """All automorphisms of a group, the identity first."""
    return enumerate_isomorphisms(g, g)


def trivial_group() -> FiniteGroup:
    """The group with one element."""
    return FiniteGroup(add_table=[[0]], neg_table=[0], name="0")


def cyclic_group(n: int) -> FiniteGroup:
    """The cyclic group Z/n.

    Args:
        n:
            The order of the group.

    Returns:
        The group, with element `k` standing for the residue of `k` modulo `n`.
    """
    elements = np.arange(n)
    return FiniteGroup(
        add_table=(elements[:, None] + elements[None, :]) % n,
        neg_table=(-elements) % n,
        name=f"Z/{n}",
    )


def symmetric_group(n: int) -> FiniteGroup:
    """The symmetric group on `n` letters.

    The elements are the permutations of `0, ..., n - 1` in lexicographic order, so
    that the identity is element 0. The sum `p + q` is the composite `p o q`.

    Args:
        n:
            The number of letters.

    Returns:
        The group.
    """
    perms = list(it.permutations(range(n)))
    index = {perm: idx for idx, perm in enumerate(perms)}
    add_table = [
        [index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms
    ]
    neg_table = [
        index[tuple(sorted(range(n), key=lambda i: p[i]))] for p in perms
    ]
    return FiniteGroup(add_table=add_table, neg_table=neg_table, name=f"S{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """The direct product of two groups.

    The pair `(x, y)` is stored as the element `x * h.order + y`.
    """
    m = h.order
    xs, ys = np.divmod(np.arange(g.order * m), m)
    add_table = (
        g.add_table[xs[:, None], xs[None, :]] * m
        + h.add_table[ys[:, None], ys[None, :]]
    )
    neg_table = g.neg_table[xs] * m + h.neg_table[ys]
    return FiniteGroup(
        add_table=add_table, neg_table=neg_table, name=f"{g.name} x {h.name}"
    )
