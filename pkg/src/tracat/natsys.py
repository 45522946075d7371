"""Natural systems of groups on a finite category."""

import itertools as it
import logging
from dataclasses import dataclass

import numpy as np

from .exceptions import StructuralError
from .fincat import FiniteCategory
from .fingroup import (
    FiniteGroup,
    GroupHom,
    compose_homs,
    identity_hom,
    trivial_group,
    validate_group,
    validate_hom,
    zero_hom,
)
from .reports import ValidationReport

logger = logging.getLogger(__package__)


@dataclass(frozen=True, eq=False)
class NaturalSystem:
    """A natural system of groups on a finite category.

    Only the generating maps `h_*` and `g^*` are stored. The general map `D(g, h)` is
    derived from them by `transport`.

    Attributes:
        base:
            The category the system lives on.
        groups:
            The group `D_f` of every morphism `f`, indexed by morphism.
        push:
            The map `h_*: D_f -> D_{hf}` for every composable pair `(h, f)`.
        pull:
            The map `g^*: D_f -> D_{fg}` for every composable pair `(f, g)`.
    """

    base: FiniteCategory
    groups: tuple[FiniteGroup, ...]
    push: dict[tuple[int, int], GroupHom]
    pull: dict[tuple[int, int], GroupHom]

    def __post_init__(self) -> None:
        """Check that the tables cover the composable pairs with typed maps."""
        object.__setattr__(self, "groups", tuple(self.groups))
        c = self.base
        if len(self.groups) != c.num_morphisms:
            raise StructuralError(
                f"A natural system on {c.num_morphisms} morphisms has "
                f"{len(self.groups)} groups."
            )
        pairs = set(c.composable_pairs)
        for table_name, table in (("push", self.push), ("pull", self.pull)):
            if set(table) != pairs:
                missing = sorted(pairs - set(table))
                raise StructuralError(
                    f"The {table_name} table does not cover exactly the composable "
                    f"pairs; missing {[c.names(*pair) for pair in missing]}."
                )
        for (h, f), hom in self.push.items():
            self._check_typing(hom, f, c.compose(h, f), ("push",) + c.names(h, f))
        for (f, g), hom in self.pull.items():
            self._check_typing(hom, f, c.compose(f, g), ("pull",) + c.names(f, g))

    def _check_typing(
        self, hom: GroupHom, src: int, dst: int, where: tuple[str, ...]
    ) -> None:
        if hom.src != self.groups[src] or hom.dst != self.groups[dst]:
            raise StructuralError(
                f"The map {where[0]}({', '.join(where[1:])}) goes between the wrong "
                "groups."
            )
        if hom.mapping.shape != (hom.src.order,):
            raise StructuralError(
                f"The map {where[0]}({', '.join(where[1:])}) has the wrong length."
            )

    def group(self, f: int) -> FiniteGroup:
        """The group `D_f`."""
        return self.groups[f]

    def push_map(self, h: int, f: int) -> GroupHom:
        """The map `h_*: D_f -> D_{hf}`."""
        return self.push[(h, f)]

    def pull_map(self, f: int, g: int) -> GroupHom:
        """The map `g^*: D_f -> D_{fg}`."""
        return self.pull[(f, g)]

    def push_element(self, h: int, f: int, x: int) -> int:
        """The element `h_*(x)` of `D_{hf}`, for `x` in `D_f`."""
        return int(self.push[(h, f)].mapping[x])

    def pull_element(self, f: int, g: int, x: int) -> int:
        """The element `g^*(x)` of `D_{fg}`, for `x` in `D_f`."""
        return int(self.pull[(f, g)].mapping[x])

    def key(self) -> tuple:
        """A hashable key identifying the system."""
        return (
            self.base.key(),
            tuple(group.key() for group in self.groups),
            tuple((pair, hom.key()) for pair, hom in sorted(self.push.items())),
            tuple((pair, hom.key()) for pair, hom in sorted(self.pull.items())),
        )

    def __eq__(self, other: object) -> bool:
        """Natural systems are equal when their tables are."""
        if not isinstance(other, NaturalSystem):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        """Return a hash of the tables."""
        return hash(self.key())


def transport(d: NaturalSystem, g: int, f: int, h: int) -> GroupHom:
    """The map `D(g, h) = g^* h_*: D_f -> D_{hfg}`.

    Args:
        d:
            The natural system.
        g:
            The morphism precomposed with `f`.
        f:
            The morphism whose group is transported.
        h:
            The morphism postcomposed with `f`.

    Returns:
        The composite homomorphism.

    Raises:
        StructuralError:
            If the morphisms are not composable.
    """
    c = d.base
    hf = c.compose(h, f)
    return compose_homs(d.pull_map(hf, g), d.push_map(h, f))


def validate_natural_system(d: NaturalSystem) -> ValidationReport:
    """Check the functoriality of a natural system.

    The checks are that every group is a group, every structure map is a
    homomorphism, identities act trivially, pushforwards and pullbacks compose, and
    pushforwards commute with pullbacks.

    Args:
        d:
            The natural system.

    Returns:
        The report listing every violated equation with its witness morphisms.
    """
    c = d.base
    report = ValidationReport(subject="natural system")

    for f, group in enumerate(d.groups):
        group_report = validate_group(group)
        for violation in group_report.violations:
            report.add(
                f"group {violation.label}",
                c.names(f) + violation.witness,
                violation.detail,
            )

    for label, table in (("push", d.push), ("pull", d.pull)):
        for pair, hom in sorted(table.items()):
            if not validate_hom(hom).passed:
                report.add(f"{label}-hom", c.names(*pair))

    for f in range(c.num_morphisms):
        push_unit = d.push_map(c.identity(c.tgt(f)), f)
        if not np.array_equal(push_unit.mapping, np.arange(d.group(f).order)):
            report.add("push-unit", c.names(f), "id_* is not the identity")
        pull_unit = d.pull_map(f, c.identity(c.src(f)))
        if not np.array_equal(pull_unit.mapping, np.arange(d.group(f).order)):
            report.add("pull-unit", c.names(f), "id^* is not the identity")

    # (g g1)_* = g_* g1_* on D_f and (f f1)^* = f1^* f^* on D_u
    for (g, g1), f in it.product(c.composable_pairs, range(c.num_morphisms)):
        if not c.composable(g1, f):
            continue
        lhs = d.push_map(c.compose(g, g1), f).mapping
        rhs = d.push_map(g, c.compose(g1, f)).mapping[d.push_map(g1, f).mapping]
        if not np.array_equal(lhs, rhs):
            report.add("push-composition", c.names(g, g1, f))
    for u, (f, f1) in it.product(range(c.num_morphisms), c.composable_pairs):
        if not c.composable(u, f):
            continue
        lhs = d.pull_map(u, c.compose(f, f1)).mapping
        rhs = d.pull_map(c.compose(u, f), f1).mapping[d.pull_map(u, f).mapping]
        if not np.array_equal(lhs, rhs):
            report.add("pull-composition", c.names(u, f, f1))

    # g_* f^* = f^* g_* as maps D_u -> D_{guf}
    for (g, u), f in it.product(c.composable_pairs, range(c.num_morphisms)):
        if not c.composable(u, f):
            continue
        lhs = d.push_map(g, c.compose(u, f)).mapping[d.pull_map(u, f).mapping]
        rhs = d.pull_map(c.compose(g, u), f).mapping[d.push_map(g, u).mapping]
        if not np.array_equal(lhs, rhs):
            report.add("interchange", c.names(g, u, f))

    return report


def is_centralised(d: NaturalSystem) -> ValidationReport:
    """Check that a natural system is centralised.

    For every composable pair `g o f` and all `x` in `D_f` and `y` in `D_g`, the
    elements `g_*(x)` and `f^*(y)` of `D_{gf}` must commute. As a consequence the
    group of every identity morphism is abelian, which is checked on its own.

    Args:
        d:
            The natural system, assumed to be valid.

    Returns:
        The report listing every pair of morphisms where commutation fails, with the
        offending elements in the detail.
    """
    c = d.base
    report = ValidationReport(subject="centralised natural system")

    for g, f in c.composable_pairs:
        target = d.group(c.compose(g, f))
        pushed = d.push_map(g, f).mapping
        pulled = d.pull_map(g, f).mapping
        lhs = target.add_table[pushed[:, None], pulled[None, :]]
        rhs = target.add_table[pulled[None, :], pushed[:, None]]
        failures = np.argwhere(lhs != rhs)
        if len(failures):
            x, y = failures[0]
            report.add(
                "centralised",
                c.names(g, f),
                f"g_*({x}) and f^*({y}) do not commute",
            )

    for obj in c.objects:
        identity = c.identity(obj)
        if not d.group(identity).is_abelian:
            report.add("abelian-identity", c.names(identity))

    return report


def natural_system_from_groups(
    base: FiniteCategory,
    groups: dict[str, FiniteGroup],
    push: dict[tuple[str, str], GroupHom] | None = None,
    pull: dict[tuple[str, str], GroupHom] | None = None,
) -> NaturalSystem:
    """Build a natural system, filling in the forced structure maps.

    A structure map that is not given is taken to be the zero map if its source
    group is trivial, and the identity if its source and target groups are equal.

    Args:
        base:
            The category.
        groups:
            The group of every morphism, by name.
        push:
            The maps `h_*` that cannot be filled in, keyed by the names `(h, f)`.
        pull:
            The maps `g^*` that cannot be filled in, keyed by the names `(f, g)`.

    Returns:
        The natural system.

    Raises:
        StructuralError:
            If a map is missing and cannot be filled in.
    """
    push, pull = push or dict(), pull or dict()
    group_list = [groups[m.name] for m in base.morphisms]

    def forced(src: int, dst: int, where: str) -> GroupHom:
        src_group, dst_group = group_list[src], group_list[dst]
        if src_group.order == 1:
            return zero_hom(src_group, dst_group)
        if src_group == dst_group:
            return identity_hom(src_group)
        raise StructuralError(f"The structure map {where} must be given explicitly.")

    push_table, pull_table = dict(), dict()
    for g, f in base.composable_pairs:
        names = base.names(g, f)
        gf = base.compose(g, f)
        push_table[(g, f)] = (
            push[names]
            if names in push
            else forced(f, gf, f"{names[0]}_* on {names[1]}")
        )
        pull_table[(g, f)] = (
            pull[names]
            if names in pull
            else forced(g, gf, f"{names[1]}^* on {names[0]}")
        )
    return NaturalSystem(
        base=base, groups=tuple(group_list), push=push_table, pull=pull_table
    )


def constant_natural_system(base: FiniteCategory, group: FiniteGroup) -> NaturalSystem:
    """The natural system with the same group everywhere and identity maps.

    It is centralised exactly when the group is abelian.
    """
    return natural_system_from_groups(
        base=base, groups={m.name: group for m in base.morphisms}
    )


def trivial_natural_system(base: FiniteCategory) -> NaturalSystem:
    """The natural system with the trivial group everywhere."""
    return constant_natural_system(base=base, group=trivial_group())
