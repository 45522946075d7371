"""Unit tests for the `pretrack` module."""

import pytest
from tracat.exceptions import ContextMismatch
from tracat.fincat import QuotientFunctor, parallel_category, parallel_collapse
from tracat.fingroup import cyclic_group, symmetric_group
from tracat.natsys import constant_natural_system, trivial_natural_system
from tracat.pretrack import PreTrack, validate_pre_track


class TestValidatePreTrack:
    """Unit tests for the `validate_pre_track` function."""

    @pytest.mark.parametrize(
        argnames=["fixture_name"],
        argvalues=[("trivial_parallel",), ("parallel_z2",), ("collapse_z2",)],
        ids=["trivial_parallel", "parallel_z2", "collapse_z2"],
    )
    def test_fixtures_pass(self, fixture_name, request):
        """Test that the built-in pre-track categories pass."""
        p = request.getfixturevalue(fixture_name)
        assert validate_pre_track(p.pi, p.system).passed

    def test_non_abelian_coefficients(self):
        """Test that a non-centralised natural system is reported."""
        pi = parallel_collapse(2)
        system = constant_natural_system(pi.src, symmetric_group(3))
        report = validate_pre_track(pi, system)
        assert report.labels == {"G centralised", "G abelian-identity"}

    def test_non_surjective_functor(self):
        """Test that a functor missing a morphism is reported."""
        c = parallel_category(2)
        pi = QuotientFunctor(
            src=c, dst=c, mapping={"id0": "id0", "id1": "id1", "f": "g", "g": "g"}
        )
        report = validate_pre_track(pi, constant_natural_system(c, cyclic_group(2)))
        assert report.labels == {"pi surjectivity"}

    def test_mismatched_base_raises(self):
        """Test that the natural system must live on the source of the functor."""
        with pytest.raises(ContextMismatch):
            validate_pre_track(
                parallel_collapse(2), trivial_natural_system(parallel_category(3))
            )


class TestPreTrack:
    """Unit tests for the `PreTrack` class."""

    def test_mismatched_base_raises(self):
        """Test that the components must live on the same category."""
        with pytest.raises(ContextMismatch):
            PreTrack(
                pi=parallel_collapse(2),
                system=trivial_natural_system(parallel_category(3)),
            )

    def test_parallel_classes(self, parallel_z2):
        """Test the fibres of the collapse of two parallel arrows."""
        assert parallel_z2.classes == [[0], [1], [2, 3]]
        assert parallel_z2.canonical_pairs == [(2, 3)]
        assert len(parallel_z2.pairs) == 6
        assert parallel_z2.same_class(2, 3)
        assert not parallel_z2.same_class(0, 2)

    def test_collapse_index_sets(self, collapse_z2):
        """Test the index sets of the cocycle data over B(Z/2) -> B(0)."""
        assert collapse_z2.classes == [[0, 1]]
        assert len(collapse_z2.xi_keys) == 8
        assert len(collapse_z2.chi_keys) == 16
        assert len(collapse_z2.phi_keys) == 4

    def test_chi_keys_are_composable(self, parallel_z2):
        """Test that every chi key is typed."""
        c = parallel_z2.base
        for x, y, a, b in parallel_z2.chi_keys:
            assert c.parallel(x, y) and c.parallel(a, b)
            assert c.composable(a, x)
            assert parallel_z2.same_class(x, y) and parallel_z2.same_class(a, b)

    def test_equality_ignores_the_name(self, parallel_z2):
        """Test that pre-track categories are compared by their tables."""
        renamed = PreTrack(pi=parallel_z2.pi, system=parallel_z2.system, name="other")
        assert renamed == parallel_z2
        assert hash(renamed) == hash(parallel_z2)
