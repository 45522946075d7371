"""Unit tests for the `fingroup` module."""

import numpy as np
import pytest
from tracat.exceptions import ElementOutOfRange, StructuralError
from tracat.fingroup import (
    FiniteGroup,
    GroupHom,
    automorphisms,
    compose_homs,
    conjugate,
    cyclic_group,
    direct_product,
    enumerate_isomorphisms,
    identity_hom,
    invert_hom,
    symmetric_group,
    trivial_group,
    validate_group,
    validate_hom,
    zero_hom,
)


class TestValidateGroup:
    """Unit tests for the `validate_group` function."""

    @pytest.mark.parametrize(
        argnames=["group"],
        argvalues=[
            (trivial_group(),),
            (cyclic_group(2),),
            (cyclic_group(5),),
            (symmetric_group(3),),
            (direct_product(cyclic_group(2), cyclic_group(2)),),
        ],
        ids=["trivial", "z2", "z5", "s3", "klein"],
    )
    def test_valid_groups_pass(self, group):
        """Test that the standard groups pass."""
        assert validate_group(group).passed

    def test_broken_identity(self):
        """Test that a table without a unit is reported."""
        group = FiniteGroup(add_table=[[1, 0], [0, 1]], neg_table=[0, 1])
        assert "identity" in validate_group(group).labels

    def test_broken_inverse(self):
        """Test that a wrong negation table is reported."""
        z3 = cyclic_group(3)
        group = FiniteGroup(add_table=z3.add_table, neg_table=[0, 1, 2])
        report = validate_group(group)
        assert report.labels == {"inverse"}
        assert {violation.witness for violation in report.violations} == {
            ("1",),
            ("2",),
        }

    def test_broken_associativity(self):
        """Test that a non-associative loop is reported."""
        # A loop of order 5 in which every element is its own inverse
        add_table = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
        group = FiniteGroup(add_table=add_table, neg_table=[0, 1, 2, 3, 4])
        assert validate_group(group).labels == {"associativity"}

    def test_out_of_range_entries_raise(self):
        """Test that entries outside the group are structural errors."""
        group = FiniteGroup(add_table=[[0, 2], [1, 0]], neg_table=[0, 1])
        with pytest.raises(StructuralError):
            validate_group(group)

    def test_inconsistent_shapes_raise(self):
        """Test that tables of different sizes are structural errors."""
        group = FiniteGroup(add_table=[[0, 1], [1, 0]], neg_table=[0, 1, 2])
        with pytest.raises(StructuralError):
            validate_group(group)


class TestValidateHom:
    """Unit tests for the `validate_hom` function."""

    def test_reduction_mod_two_is_a_hom(self):
        """Test that reduction from Z/4 to Z/2 is a homomorphism."""
        hom = GroupHom(
            src=cyclic_group(4), dst=cyclic_group(2), mapping=np.arange(4) % 2
        )
        assert validate_hom(hom).passed

    def test_non_hom_is_reported(self):
        """Test that a map which is not additive is reported."""
        hom = GroupHom(src=cyclic_group(3), dst=cyclic_group(3), mapping=[0, 1, 1])
        assert validate_hom(hom).labels == {"hom"}

    def test_wrong_length_raises(self):
        """Test that a map of the wrong length is a structural error."""
        hom = GroupHom(src=cyclic_group(3), dst=cyclic_group(3), mapping=[0, 1])
        with pytest.raises(StructuralError):
            validate_hom(hom)


class TestConjugate:
    """Unit tests for the `conjugate` function."""

    def test_abelian_conjugation_is_trivial(self):
        """Test that conjugation in an abelian group does nothing."""
        z5 = cyclic_group(5)
        assert all(conjugate(z5, a, t) == t for a in z5.elements for t in z5.elements)

    def test_non_abelian_conjugation(self):
        """Test that some conjugation in S3 moves an element."""
        s3 = symmetric_group(3)
        assert any(
            conjugate(s3, a, t) != t for a in s3.elements for t in s3.elements
        )

    def test_out_of_range_raises(self):
        """Test that an element outside the group raises."""
        with pytest.raises(ElementOutOfRange):
            conjugate(cyclic_group(2), 0, 2)


class TestIsomorphisms:
    """Unit tests for the isomorphism functions."""

    @pytest.mark.parametrize(
        argnames=["group", "expected"],
        argvalues=[
            (trivial_group(), 1),
            (cyclic_group(2), 1),
            (cyclic_group(3), 2),
            (cyclic_group(5), 4),
            (direct_product(cyclic_group(2), cyclic_group(2)), 6),
            (symmetric_group(3), 6),
        ],
        ids=["trivial", "z2", "z3", "z5", "klein", "s3"],
    )
    def test_number_of_automorphisms(self, group, expected):
        """Test the number of automorphisms of small groups."""
        assert len(automorphisms(group)) == expected

    def test_identity_first(self):
        """Test that the identity is the first automorphism."""
        z5 = cyclic_group(5)
        assert automorphisms(z5)[0] == identity_hom(z5)

    def test_different_orders(self):
        """Test that groups of different orders have no isomorphisms."""
        assert enumerate_isomorphisms(cyclic_group(2), cyclic_group(3)) == list()

    def test_non_isomorphic_groups(self):
        """Test that Z/4 and the Klein group are not isomorphic."""
        klein = direct_product(cyclic_group(2), cyclic_group(2))
        assert enumerate_isomorphisms(cyclic_group(4), klein) == list()

    def test_invert(self):
        """Test that inverting an automorphism gives its inverse."""
        z5 = cyclic_group(5)
        doubling = GroupHom(src=z5, dst=z5, mapping=(2 * np.arange(5)) % 5)
        assert compose_homs(invert_hom(doubling), doubling) == identity_hom(z5)

    def test_invert_non_bijection_raises(self):
        """Test that a non-bijective map cannot be inverted."""
        with pytest.raises(StructuralError):
            invert_hom(zero_hom(cyclic_group(2), cyclic_group(2)))

    def test_compose_mismatch_raises(self):
        """Test that composing maps between mismatched groups raises."""
        z2, z3 = cyclic_group(2), cyclic_group(3)
        with pytest.raises(StructuralError):
            compose_homs(identity_hom(z2), identity_hom(z3))


class TestFiniteGroup:
    """Unit tests for the `FiniteGroup` class."""

    def test_sum_is_left_to_right(self):
        """Test that sums are evaluated from left to right in S3."""
        s3 = symmetric_group(3)
        for x in s3.elements:
            for y in s3.elements:
                for z in s3.elements:
                    assert s3.sum(x, y, z) == s3.add(s3.add(x, y), z)

    def test_empty_sum(self):
        """Test that the empty sum is zero."""
        assert cyclic_group(4).sum() == 0

    def test_is_abelian(self):
        """Test that commutativity is detected."""
        assert cyclic_group(4).is_abelian
        assert not symmetric_group(3).is_abelian

    def test_equality_is_by_tables(self):
        """Test that the name does not affect equality."""
        z2 = cyclic_group(2)
        renamed = FiniteGroup(
            add_table=z2.add_table, neg_table=z2.neg_table, name="other"
        )
        assert renamed == z2
        assert hash(renamed) == hash(z2)

    def test_tables_are_read_only(self):
        """Test that the tables cannot be changed in place."""
        with pytest.raises(ValueError):
            cyclic_group(2).add_table[0, 0] = 1
