"""Unit tests for the `fixtures` module."""

import pytest
from tracat.fixtures import get_all_fixtures, get_fixture
from tracat.pretrack import validate_pre_track


def test_fixture_names():
    """Test the names of the built-in fixtures."""
    assert set(get_all_fixtures()) == {
        "trivial_parallel",
        "parallel_z2",
        "triple_parallel_z2",
        "parallel_s3",
        "parallel_klein",
        "collapse_z2",
        "z4_over_z2",
    }


@pytest.mark.parametrize(
    argnames=["fixture_name"],
    argvalues=[(name,) for name in sorted(get_all_fixtures())],
    ids=sorted(get_all_fixtures()),
)
def test_fixtures_are_valid(fixture_name):
    """Test that every fixture builds a valid pre-track category."""
    p = get_fixture(fixture_name).build()
    assert p.name == fixture_name
    assert validate_pre_track(p.pi, p.system).passed


def test_unknown_fixture_raises():
    """Test that asking for an unknown fixture raises."""
    with pytest.raises(ValueError):
        get_fixture("nonexistent")
