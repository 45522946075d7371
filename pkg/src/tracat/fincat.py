"""Finite categories, identity-on-objects functors and factorization categories."""

import itertools as it
import logging
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .exceptions import StructuralError
from .fingroup import FiniteGroup, GroupHom
from .reports import ValidationReport

logger = logging.getLogger(__package__)


# Morphism names appear inside table keys such as "g,f" and "x,y|a,b"
RESERVED_CHARACTERS = {",", "|"}


@dataclass(frozen=True)
class Morphism:
    """A morphism of a finite category.

    Attributes:
        name:
            The name of the morphism.
        src:
            The name of its source object.
        tgt:
            The name of its target object.
    """

    name: str
    src: str
    tgt: str


@dataclass(frozen=True, eq=False)
class FiniteCategory:
    """A finite category given by its composition table.

    In memory, morphisms are referred to by their position in `morphisms`.

    Attributes:
        objects:
            The names of the objects.
        morphisms:
            The morphisms.
        identities:
            The name of the identity morphism of every object.
        composites:
            The composition table, sending the pair of names `(g, f)` to the name of
            `g o f`. It has an entry exactly when the target of `f` is the source of
            `g`.
        name:
            An optional name, only used for logging.
    """

    objects: tuple[str, ...]
    morphisms: tuple[Morphism, ...]
    identities: dict[str, str]
    composites: dict[tuple[str, str], str]
    name: str = ""
    index: dict[str, int] = field(init=False, repr=False)
    object_index: dict[str, int] = field(init=False, repr=False)
    compose_table: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        """Check the tables and build the index."""
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "morphisms", tuple(self.morphisms))

        if len(set(self.objects)) != len(self.objects):
            raise StructuralError("The object names are not unique.")
        names = [morphism.name for morphism in self.morphisms]
        if len(set(names)) != len(names):
            raise StructuralError("The morphism names are not unique.")
        for name in names:
            if RESERVED_CHARACTERS & set(name) or not name:
                raise StructuralError(
                    f"The morphism name {name!r} is empty or contains one of the "
                    f"reserved characters {sorted(RESERVED_CHARACTERS)}."
                )

        index = {name: idx for idx, name in enumerate(names)}
        object_index = {obj: idx for idx, obj in enumerate(self.objects)}
        for morphism in self.morphisms:
            for endpoint in (morphism.src, morphism.tgt):
                if endpoint not in object_index:
                    raise StructuralError(
                        f"The morphism {morphism.name!r} refers to the unknown object "
                        f"{endpoint!r}."
                    )

        if set(self.identities) != set(self.objects):
            raise StructuralError("Every object needs exactly one identity morphism.")
        for obj, name in self.identities.items():
            if name not in index:
                raise StructuralError(
                    f"The identity of {obj!r} is the unknown morphism {name!r}."
                )

        n = len(names)
        compose_table = np.full((n, n), -1, dtype=np.int64)
        for (g, f), gf in self.composites.items():
            for name in (g, f, gf):
                if name not in index:
                    raise StructuralError(
                        f"The composite {g} o {f} = {gf} refers to the unknown "
                        f"morphism {name!r}."
                    )
            if self.morphisms[index[f]].tgt != self.morphisms[index[g]].src:
                raise StructuralError(
                    f"The composite {g} o {f} is given, but {g} and {f} are not "
                    "composable."
                )
            compose_table[index[g], index[f]] = index[gf]
        for g, f in it.product(range(n), repeat=2):
            if (
                self.morphisms[f].tgt == self.morphisms[g].src
                and compose_table[g, f] < 0
            ):
                raise StructuralError(
                    f"The composite {names[g]} o {names[f]} is missing from the "
                    "composition table."
                )
        compose_table.setflags(write=False)

        object.__setattr__(self, "index", index)
        object.__setattr__(self, "object_index", object_index)
        object.__setattr__(self, "compose_table", compose_table)

    @property
    def num_morphisms(self) -> int:
        """The number of morphisms."""
        return len(self.morphisms)

    def mor(self, name: str) -> int:
        """The index of the morphism with the given name.

        Raises:
            StructuralError:
                If there is no such morphism.
        """
        try:
            return self.index[name]
        except KeyError:
            raise StructuralError(f"There is no morphism named {name!r}.")

    def morphism_name(self, f: int) -> str:
        """The name of a morphism."""
        return self.morphisms[f].name

    def names(self, *morphisms: int) -> tuple[str, ...]:
        """The names of several morphisms, used as witnesses."""
        return tuple(self.morphisms[f].name for f in morphisms)

    def src(self, f: int) -> str:
        """The source object of a morphism."""
        return self.morphisms[f].src

    def tgt(self, f: int) -> str:
        """The target object of a morphism."""
        return self.morphisms[f].tgt

    def identity(self, obj: str) -> int:
        """The identity morphism of an object."""
        return self.index[self.identities[obj]]

    @cached_property
    def identity_morphisms(self) -> frozenset[int]:
        """The indices of all identity morphisms."""
        return frozenset(self.identity(obj) for obj in self.objects)

    def is_identity(self, f: int) -> bool:
        """Whether a morphism is an identity."""
        return f in self.identity_morphisms

    def composable(self, g: int, f: int) -> bool:
        """Whether `g o f` is defined."""
        return self.morphisms[f].tgt == self.morphisms[g].src

    def compose(self, g: int, f: int) -> int:
        """The composite `g o f`.

        Raises:
            StructuralError:
                If the morphisms are not composable.
        """
        gf = int(self.compose_table[g, f])
        if gf < 0:
            raise StructuralError(
                f"The morphisms {self.morphism_name(g)} and {self.morphism_name(f)} "
                "are not composable."
            )
        return gf

    def parallel(self, f: int, g: int) -> bool:
        """Whether two morphisms have the same source and target."""
        return self.src(f) == self.src(g) and self.tgt(f) == self.tgt(g)

    def hom(self, a: str, b: str) -> list[int]:
        """All morphisms from `a` to `b`."""
        return [
            idx
            for idx, morphism in enumerate(self.morphisms)
            if morphism.src == a and morphism.tgt == b
        ]

    @cached_property
    def composable_pairs(self) -> list[tuple[int, int]]:
        """All pairs `(g, f)` such that `g o f` is defined."""
        return [
            (g, f)
            for g, f in it.product(range(self.num_morphisms), repeat=2)
            if self.composable(g, f)
        ]

    def key(self) -> tuple:
        """A hashable key identifying the category."""
        return (
            self.objects,
            self.morphisms,
            tuple(sorted(self.identities.items())),
            tuple(sorted(self.composites.items())),
        )

    def __eq__(self, other: object) -> bool:
        """Categories are equal when their tables are."""
        if not isinstance(other, FiniteCategory):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        """Return a hash of the tables."""
        return hash(self.key())

    def __repr__(self) -> str:
        """Return a short representation of the category."""
        return (
            f"FiniteCategory(name={self.name!r}, objects={len(self.objects)}, "
            f"morphisms={self.num_morphisms})"
        )


@dataclass(frozen=True, eq=False)
class QuotientFunctor:
    """An identity-on-objects functor, meant to be full and surjective.

    Attributes:
        src:
            The source category K.
        dst:
            The target category C.
        mapping:
            The image of every morphism of K, by name.
    """

    src: FiniteCategory
    dst: FiniteCategory
    mapping: dict[str, str]
    table: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        """Check the mapping and build the lookup table."""
        if set(self.mapping) != {m.name for m in self.src.morphisms}:
            raise StructuralError(
                "The functor must assign an image to exactly the morphisms of its "
                "source."
            )
        table = np.array(
            [self.dst.mor(self.mapping[m.name]) for m in self.src.morphisms],
            dtype=np.int64,
        )
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    def __call__(self, f: int) -> int:
        """The image of a morphism of K, as a morphism of C."""
        return int(self.table[f])

    def key(self) -> tuple:
        """A hashable key identifying the functor."""
        return (self.src.key(), self.dst.key(), tuple(sorted(self.mapping.items())))

    def __eq__(self, other: object) -> bool:
        """Functors are equal when their categories and tables are."""
        if not isinstance(other, QuotientFunctor):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        """Return a hash of the functor."""
        return hash(self.key())


@dataclass(frozen=True)
class FactorizationMorphism:
    """A morphism `(g, h): f -> h o f o g` of the factorization category.

    Attributes:
        source:
            The name of the morphism `f: i -> j`.
        target:
            The name of the morphism `f': i' -> j'`.
        pre:
            The name of `g: i' -> i`.
        post:
            The name of `h: j -> j'`.
    """

    source: str
    target: str
    pre: str
    post: str

    @property
    def name(self) -> str:
        """The name of the morphism in the factorization category."""
        return f"({self.pre};{self.post}):{self.source}->{self.target}"


def validate_category(c: FiniteCategory) -> ValidationReport:
    """Check the category axioms on a composition table.

    Dangling names and missing composites are rejected when the category is
    constructed, so only mathematical failures are reported here.

    Args:
        c:
            The category to check.

    Returns:
        The report listing every typing, unit and associativity violation.
    """
    report = ValidationReport(subject="category")

    for obj in c.objects:
        idx = c.identity(obj)
        if c.src(idx) != obj or c.tgt(idx) != obj:
            report.add(
                "typing", (obj,), f"the identity {c.morphism_name(idx)} is not on {obj}"
            )

    for g, f in c.composable_pairs:
        gf = c.compose(g, f)
        if c.src(gf) != c.src(f) or c.tgt(gf) != c.tgt(g):
            report.add(
                "typing",
                c.names(g, f),
                f"the composite {c.morphism_name(gf)} has the wrong endpoints",
            )

    for f in range(c.num_morphisms):
        left_unit = c.compose(c.identity(c.tgt(f)), f)
        right_unit = c.compose(f, c.identity(c.src(f)))
        if left_unit != f or right_unit != f:
            report.add("unit", c.names(f))

    for (h, g), f in it.product(c.composable_pairs, range(c.num_morphisms)):
        if not c.composable(g, f):
            continue
        if c.compose(c.compose(h, g), f) != c.compose(h, c.compose(g, f)):
            report.add("associativity", c.names(h, g, f))

    return report


def validate_quotient(q: QuotientFunctor) -> ValidationReport:
    """Check that a functor is identity on objects, functorial and surjective.

    Args:
        q:
            The functor to check.

    Returns:
        The report listing every violation with its witness.

    Raises:
        StructuralError:
            If the two categories have different objects.
    """
    if set(q.src.objects) != set(q.dst.objects):
        raise StructuralError(
            "A quotient functor needs the same objects in its source and target."
        )

    k, c = q.src, q.dst
    report = ValidationReport(subject="quotient functor")

    for f in range(k.num_morphisms):
        if c.src(q(f)) != k.src(f) or c.tgt(q(f)) != k.tgt(f):
            report.add(
                "typing",
                k.names(f),
                f"sent to {c.morphism_name(q(f))}, which has other endpoints",
            )

    for obj in k.objects:
        if q(k.identity(obj)) != c.identity(obj):
            report.add("identity", (obj,))

    for g, f in k.composable_pairs:
        if not c.composable(q(g), q(f)):
            continue
        if q(k.compose(g, f)) != c.compose(q(g), q(f)):
            report.add("functoriality", k.names(g, f))

    missed = set(range(c.num_morphisms)) - set(q.table.tolist())
    for f in sorted(missed):
        report.add("surjectivity", c.names(f), "not in the image")

    return report


def enumerate_factorizations(c: FiniteCategory) -> list[FactorizationMorphism]:
    """All morphisms of the factorization category.

    Args:
        c:
            The category.

    Returns:
        Every `(g, h): f -> f'` with `f' = h o f o g`, ordered by `(f, f', g, h)`.
    """
    factorizations: list[FactorizationMorphism] = list()
    for f, f2 in it.product(range(c.num_morphisms), repeat=2):
        for g in c.hom(c.src(f2), c.src(f)):
            for h in c.hom(c.tgt(f), c.tgt(f2)):
                if c.compose(h, c.compose(f, g)) == f2:
                    factorizations.append(
                        FactorizationMorphism(
                            source=c.morphism_name(f),
                            target=c.morphism_name(f2),
                            pre=c.morphism_name(g),
                            post=c.morphism_name(h),
                        )
                    )
    return factorizations


def factorization_category(c: FiniteCategory) -> FiniteCategory:
    """The category of factorizations of a category.

    Its objects are the morphisms of `c`, and its morphisms `f -> f'` are the pairs
    `(g, h)` with `f' = h o f o g`. Composition is `(g', h')(g, h) = (g g', h' h)`.

    Args:
        c:
            The category.

    Returns:
        The factorization category.
    """
    factorizations = enumerate_factorizations(c)
    by_data = {(m.source, m.target, m.pre, m.post): m for m in factorizations}

    identities = {
        m.name: by_data[
            (m.name, m.name, c.identities[m.src], c.identities[m.tgt])
        ].name
        for m in c.morphisms
    }

    composites: dict[tuple[str, str], str] = dict()
    for first, second in it.product(factorizations, repeat=2):
        if first.target != second.source:
            continue
        pre = c.morphism_name(c.compose(c.mor(first.pre), c.mor(second.pre)))
        post = c.morphism_name(c.compose(c.mor(second.post), c.mor(first.post)))
        composite = by_data[(first.source, second.target, pre, post)]
        composites[(second.name, first.name)] = composite.name

    logger.debug(
        f"The factorization category of {c!r} has {len(factorizations)} morphisms."
    )
    return FiniteCategory(
        objects=tuple(m.name for m in c.morphisms),
        morphisms=tuple(
            Morphism(name=m.name, src=m.source, tgt=m.target) for m in factorizations
        ),
        identities=identities,
        composites=composites,
        name=f"F({c.name})",
    )


def terminal_category() -> FiniteCategory:
    """The category with one object and one morphism."""
    return FiniteCategory(
        objects=("0",),
        morphisms=(Morphism("id0", "0", "0"),),
        identities={"0": "id0"},
        composites={("id0", "id0"): "id0"},
        name="1",
    )


def arrow_category() -> FiniteCategory:
    """The category `0 -> 1` with the single non-identity morphism `u`."""
    return parallel_category(num_arrows=1, names=["u"], name="arrow")


def parallel_category(
    num_arrows: int = 2, names: list[str] | None = None, name: str | None = None
) -> FiniteCategory:
    """The category with objects 0 and 1 and parallel arrows `0 -> 1`.

    Args:
        num_arrows:
            The number of arrows from 0 to 1.
        names:
            The names of the arrows. Defaults to "f", "g", "h", and so on.
        name:
            The name of the category. Defaults to "P" followed by the number of
            arrows.

    Returns:
        The category.
    """
    if names is None:
        names = list("fghklmnpqrst"[:num_arrows])
    if len(names) != num_arrows:
        raise StructuralError(f"Expected {num_arrows} arrow names, got {names}.")

    morphisms = [Morphism("id0", "0", "0"), Morphism("id1", "1", "1")]
    morphisms.extend(Morphism(arrow, "0", "1") for arrow in names)
    composites = {("id0", "id0"): "id0", ("id1", "id1"): "id1"}
    for arrow in names:
        composites[("id1", arrow)] = arrow
        composites[(arrow, "id0")] = arrow
    return FiniteCategory(
        objects=("0", "1"),
        morphisms=tuple(morphisms),
        identities={"0": "id0", "1": "id1"},
        composites=composites,
        name=name or f"P{num_arrows}",
    )


def chain_category(length: int) -> FiniteCategory:
    """The linear order `0 -> 1 -> ... -> length` as a category.

    The morphism `i -> j` is named `c{i}_{j}`, so that `c{i}_{i}` is an identity.
    """
    objects = tuple(str(i) for i in range(length + 1))
    morphisms = tuple(
        Morphism(f"c{i}_{j}", str(i), str(j))
        for i in range(length + 1)
        for j in range(i, length + 1)
    )
    composites = {
        (f"c{j}_{k}", f"c{i}_{j}"): f"c{i}_{k}"
        for i in range(length + 1)
        for j in range(i, length + 1)
        for k in range(j, length + 1)
    }
    return FiniteCategory(
        objects=objects,
        morphisms=morphisms,
        identities={obj: f"c{obj}_{obj}" for obj in objects},
        composites=composites,
        name=f"[{length}]",
    )


def group_category(g: FiniteGroup, prefix: str = "e") -> FiniteCategory:
    """A group seen as a category with the single object "*".

    The element `x` becomes the morphism `{prefix}{x}`, and `g o f` is `g + f`.
    """
    names = [f"{prefix}{x}" for x in g.elements]
    return FiniteCategory(
        objects=("*",),
        morphisms=tuple(Morphism(name, "*", "*") for name in names),
        identities={"*": names[0]},
        composites={
            (names[x], names[y]): names[g.add(x, y)]
            for x, y in it.product(g.elements, repeat=2)
        },
        name=f"B({g.name})",
    )


def identity_functor(c: FiniteCategory) -> QuotientFunctor:
    """The identity functor of a category."""
    return QuotientFunctor(src=c, dst=c, mapping={m.name: m.name for m in c.morphisms})


def parallel_collapse(num_arrows: int = 2) -> QuotientFunctor:
    """The functor from the parallel category onto the arrow category.

    Every parallel arrow is sent to `u`.
    """
    k = parallel_category(num_arrows)
    mapping = {"id0": "id0", "id1": "id1"}
    mapping.update({m.name: "u" for m in k.morphisms if m.name not in mapping})
    return QuotientFunctor(src=k, dst=arrow_category(), mapping=mapping)


def quotient_group_functor(hom: GroupHom, prefix: str = "e") -> QuotientFunctor:
    """The functor between group categories induced by a group homomorphism.

    Args:
        hom:
            The homomorphism, meant to be surjective.
        prefix:
            The prefix of the morphism names of both categories.

    Returns:
        The functor sending `{prefix}{x}` to `{prefix}{hom(x)}`.
    """
    return QuotientFunctor(
        src=group_category(hom.src, prefix=prefix),
        dst=group_category(hom.dst, prefix=prefix),
        mapping={f"{prefix}{x}": f"{prefix}{hom(x)}" for x in hom.src.elements},
    )
