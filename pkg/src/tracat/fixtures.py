"""All built-in pre-track categories used in tracat."""

import numpy as np

from .config import FixtureConfig
from .fincat import parallel_collapse, quotient_group_functor
from .fingroup import (
    FiniteGroup,
    GroupHom,
    cyclic_group,
    direct_product,
    symmetric_group,
    trivial_group,
)
from .natsys import (
    constant_natural_system,
    natural_system_from_groups,
    trivial_natural_system,
)
from .pretrack import PreTrack


def get_all_fixtures() -> dict[str, FixtureConfig]:
    """Get a mapping of all the built-in fixtures.

    Returns:
        A mapping between names of fixtures and their configurations.
    """
    fixtures = [cfg for cfg in globals().values() if isinstance(cfg, FixtureConfig)]
    assert len(fixtures) == len({cfg.name for cfg in fixtures}), (
        "There are duplicate fixtures. Please ensure that each fixture has a unique "
        "name."
    )
    return {cfg.name: cfg for cfg in fixtures}


def get_fixture(fixture_name: str) -> FixtureConfig:
    """Get the configuration of a built-in fixture.

    Args:
        fixture_name:
            The name of the fixture.

    Returns:
        The fixture configuration.

    Raises:
        ValueError:
            If the fixture is not found.
    """
    fixtures = get_all_fixtures()
    if fixture_name not in fixtures:
        raise ValueError(
            f"No fixture named {fixture_name!r}. The available fixtures are "
            f"{sorted(fixtures)}."
        )
    return fixtures[fixture_name]


def _trivial_parallel() -> PreTrack:
    pi = parallel_collapse(num_arrows=2)
    return PreTrack(
        pi=pi, system=trivial_natural_system(pi.src), name="trivial_parallel"
    )


def _parallel_z2() -> PreTrack:
    pi = parallel_collapse(num_arrows=2)
    return PreTrack(
        pi=pi,
        system=constant_natural_system(pi.src, cyclic_group(2)),
        name="parallel_z2",
    )


def _triple_parallel_z2() -> PreTrack:
    pi = parallel_collapse(num_arrows=3)
    return PreTrack(
        pi=pi,
        system=constant_natural_system(pi.src, cyclic_group(2)),
        name="triple_parallel_z2",
    )


def _parallel_arrows_over(group: FiniteGroup, name: str) -> PreTrack:
    pi = parallel_collapse(num_arrows=2)
    groups = {"id0": trivial_group(), "id1": trivial_group(), "f": group, "g": group}
    return PreTrack(
        pi=pi,
        system=natural_system_from_groups(base=pi.src, groups=groups),
        name=name,
    )


def _parallel_s3() -> PreTrack:
    return _parallel_arrows_over(symmetric_group(3), name="parallel_s3")


def _parallel_klein() -> PreTrack:
    klein = direct_product(cyclic_group(2), cyclic_group(2))
    return _parallel_arrows_over(klein, name="parallel_klein")


def _collapse_z2() -> PreTrack:
    z2 = cyclic_group(2)
    pi = quotient_group_functor(
        GroupHom(src=z2, dst=trivial_group(), mapping=np.zeros(2, dtype=np.int64))
    )
    return PreTrack(
        pi=pi, system=constant_natural_system(pi.src, z2), name="collapse_z2"
    )


def _z4_over_z2() -> PreTrack:
    z4, z2 = cyclic_group(4), cyclic_group(2)
    pi = quotient_group_functor(GroupHom(src=z4, dst=z2, mapping=np.arange(4) % 2))
    return PreTrack(
        pi=pi, system=constant_natural_system(pi.src, z2), name="z4_over_z2"
    )


### FIXTURES ###

TRIVIAL_PARALLEL = FixtureConfig(
    name="trivial_parallel",
    pretty_name="two parallel arrows collapsed onto one, with trivial groups",
    build=_trivial_parallel,
    expected_classes=1,
    tags=["trivial"],
)

PARALLEL_Z2 = FixtureConfig(
    name="parallel_z2",
    pretty_name="two parallel arrows collapsed onto one, with the constant group Z/2",
    build=_parallel_z2,
    expected_classes=1,
)

TRIPLE_PARALLEL_Z2 = FixtureConfig(
    name="triple_parallel_z2",
    pretty_name="three parallel arrows collapsed onto one, with the constant group "
    "Z/2",
    build=_triple_parallel_z2,
    expected_classes=1,
)

PARALLEL_S3 = FixtureConfig(
    name="parallel_s3",
    pretty_name="two parallel arrows collapsed onto one, with S3 on the arrows and "
    "trivial groups on the identities",
    build=_parallel_s3,
    expected_classes=1,
    tags=["non-abelian"],
)

PARALLEL_KLEIN = FixtureConfig(
    name="parallel_klein",
    pretty_name="two parallel arrows collapsed onto one, with Z/2 x Z/2 on the "
    "arrows and trivial groups on the identities",
    build=_parallel_klein,
    expected_classes=6,
)

COLLAPSE_Z2 = FixtureConfig(
    name="collapse_z2",
    pretty_name="the group Z/2 as a one-object category collapsed onto a point, "
    "with the constant group Z/2",
    build=_collapse_z2,
    expected_classes=2,
)

Z4_OVER_Z2 = FixtureConfig(
    name="z4_over_z2",
    pretty_name="the group Z/4 as a one-object category over Z/2, with the constant "
    "group Z/2",
    build=_z4_over_z2,
    expected_classes=4,
    tags=["slow"],
)
