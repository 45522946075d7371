"""Unit tests for the `natsys` module."""

import numpy as np
import pytest
from tracat.exceptions import StructuralError
from tracat.fincat import (
    arrow_category,
    chain_category,
    group_category,
    parallel_category,
)
from tracat.fingroup import (
    FiniteGroup,
    GroupHom,
    cyclic_group,
    symmetric_group,
    trivial_group,
)
from tracat.natsys import (
    NaturalSystem,
    constant_natural_system,
    is_centralised,
    natural_system_from_groups,
    transport,
    trivial_natural_system,
    validate_natural_system,
)


@pytest.fixture(scope="module")
def arrow_z3() -> NaturalSystem:
    """The constant natural system Z/3 on the arrow category."""
    return constant_natural_system(arrow_category(), cyclic_group(3))


def with_push(d: NaturalSystem, h: str, f: str, mapping: list[int]) -> NaturalSystem:
    """A copy of a natural system with one pushforward replaced."""
    c = d.base
    push = dict(d.push)
    key = (c.mor(h), c.mor(f))
    push[key] = GroupHom(src=push[key].src, dst=push[key].dst, mapping=mapping)
    return NaturalSystem(base=c, groups=d.groups, push=push, pull=d.pull)


class TestValidateNaturalSystem:
    """Unit tests for the `validate_natural_system` function."""

    @pytest.mark.parametrize(
        argnames=["system"],
        argvalues=[
            (trivial_natural_system(parallel_category(2)),),
            (constant_natural_system(chain_category(2), cyclic_group(4)),),
            (
                constant_natural_system(
                    group_category(cyclic_group(2)), cyclic_group(2)
                ),
            ),
            (constant_natural_system(arrow_category(), symmetric_group(3)),),
        ],
        ids=["trivial", "chain_z4", "bz2_z2", "arrow_s3"],
    )
    def test_valid_systems_pass(self, system):
        """Test that constant natural systems pass."""
        assert validate_natural_system(system).passed

    def test_push_unit(self, arrow_z3):
        """Test that an identity acting nontrivially is reported."""
        report = validate_natural_system(with_push(arrow_z3, "id1", "u", [0, 2, 1]))
        assert "push-unit" in report.labels
        assert "pull-unit" not in report.labels

    def test_push_hom(self, arrow_z3):
        """Test that a pushforward which is not a homomorphism is reported."""
        report = validate_natural_system(with_push(arrow_z3, "id1", "u", [0, 1, 1]))
        assert "push-hom" in report.labels

    def test_broken_group(self):
        """Test that a broken group is reported with its morphism."""
        broken = FiniteGroup(add_table=[[0, 1], [1, 0]], neg_table=[1, 1])
        c = arrow_category()
        system = natural_system_from_groups(
            base=c, groups={m.name: broken for m in c.morphisms}
        )
        report = validate_natural_system(system)
        assert "group inverse" in report.labels


class TestNaturalSystem:
    """Unit tests for the `NaturalSystem` class."""

    def test_missing_pair_raises(self, arrow_z3):
        """Test that a push table with a hole is rejected."""
        push = dict(arrow_z3.push)
        push.pop(next(iter(push)))
        with pytest.raises(StructuralError):
            NaturalSystem(
                base=arrow_z3.base,
                groups=arrow_z3.groups,
                push=push,
                pull=arrow_z3.pull,
            )

    def test_mistyped_map_raises(self, arrow_z3):
        """Test that a map between the wrong groups is rejected."""
        push = dict(arrow_z3.push)
        key = next(iter(push))
        z3 = cyclic_group(3)
        push[key] = GroupHom(src=cyclic_group(2), dst=z3, mapping=[0, 0])
        with pytest.raises(StructuralError):
            NaturalSystem(
                base=arrow_z3.base,
                groups=arrow_z3.groups,
                push=push,
                pull=arrow_z3.pull,
            )

    def test_wrong_number_of_groups_raises(self, arrow_z3):
        """Test that every morphism needs a group."""
        with pytest.raises(StructuralError):
            NaturalSystem(
                base=arrow_z3.base,
                groups=arrow_z3.groups[:2],
                push=arrow_z3.push,
                pull=arrow_z3.pull,
            )

    def test_elements(self, arrow_z3):
        """Test that elements are pushed and pulled along the maps."""
        c = arrow_z3.base
        u, id0, id1 = c.mor("u"), c.mor("id0"), c.mor("id1")
        assert arrow_z3.push_element(u, id0, 2) == 2
        assert arrow_z3.pull_element(id1, u, 1) == 1


class TestIsCentralised:
    """Unit tests for the `is_centralised` function."""

    def test_abelian_constant_system(self, arrow_z3):
        """Test that a constant system with an abelian group is centralised."""
        assert is_centralised(arrow_z3).passed

    def test_non_abelian_constant_system(self):
        """Test that a constant system with a non-abelian group is not."""
        system = constant_natural_system(arrow_category(), symmetric_group(3))
        assert is_centralised(system).labels == {"centralised", "abelian-identity"}

    def test_trivial_maps_commute(self):
        """Test that zero maps out of trivial groups commute with anything."""
        c = arrow_category()
        s3 = symmetric_group(3)
        groups = {"id0": trivial_group(), "id1": trivial_group(), "u": s3}
        system = natural_system_from_groups(base=c, groups=groups)
        report = is_centralised(system)
        assert report.passed


class TestNaturalSystemFromGroups:
    """Unit tests for the `natural_system_from_groups` function."""

    def test_forced_maps(self):
        """Test that maps out of trivial groups are filled in."""
        c = arrow_category()
        groups = {"id0": trivial_group(), "id1": trivial_group(), "u": cyclic_group(2)}
        system = natural_system_from_groups(base=c, groups=groups)
        assert validate_natural_system(system).passed
        assert system.push_map(c.mor("id1"), c.mor("u")).key() == (0, 1)

    def test_missing_map_raises(self):
        """Test that a map between different nontrivial groups must be given."""
        c = arrow_category()
        groups = {"id0": cyclic_group(2), "id1": cyclic_group(3), "u": cyclic_group(2)}
        with pytest.raises(StructuralError):
            natural_system_from_groups(base=c, groups=groups)


class TestTransport:
    """Unit tests for the `transport` function."""

    def test_constant_system(self, arrow_z3):
        """Test that transport in a constant system is the identity."""
        c = arrow_z3.base
        hom = transport(arrow_z3, c.mor("id0"), c.mor("u"), c.mor("id1"))
        assert np.array_equal(hom.mapping, np.arange(3))

    def test_not_composable_raises(self, arrow_z3):
        """Test that transport along non-composable morphisms raises."""
        c = arrow_z3.base
        with pytest.raises(StructuralError):
            transport(arrow_z3, c.mor("id0"), c.mor("u"), c.mor("id0"))
