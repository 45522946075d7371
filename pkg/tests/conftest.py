"""General fixtures used throughout test modules."""

import sys
from typing import Generator

import pytest
from tracat.cohomology import CocycleTriple, zero_cocycle
from tracat.config import SearchBudget
from tracat.fixtures import get_fixture
from tracat.pretrack import PreTrack


def pytest_configure() -> None:
    """Set a global flag when `pytest` is being run."""
    setattr(sys, "_called_from_test", True)


def pytest_unconfigure() -> None:
    """Unset the global flag when `pytest` is finished."""
    delattr(sys, "_called_from_test")


@pytest.fixture(scope="session")
def trivial_parallel() -> Generator[PreTrack, None, None]:
    """Yields two parallel arrows collapsed onto one, with trivial groups."""
    yield get_fixture("trivial_parallel").build()


@pytest.fixture(scope="session")
def parallel_z2() -> Generator[PreTrack, None, None]:
    """Yields two parallel arrows collapsed onto one, with the constant group Z/2."""
    yield get_fixture("parallel_z2").build()


@pytest.fixture(scope="session")
def parallel_s3() -> Generator[PreTrack, None, None]:
    """Yields two parallel arrows collapsed onto one, with S3 on the arrows."""
    yield get_fixture("parallel_s3").build()


@pytest.fixture(scope="session")
def parallel_klein() -> Generator[PreTrack, None, None]:
    """Yields two parallel arrows collapsed onto one, with Z/2 x Z/2 on the arrows."""
    yield get_fixture("parallel_klein").build()


@pytest.fixture(scope="session")
def collapse_z2() -> Generator[PreTrack, None, None]:
    """Yields the group Z/2 as a category collapsed onto a point, over Z/2."""
    yield get_fixture("collapse_z2").build()


@pytest.fixture(scope="session")
def zero_collapse_z2(collapse_z2) -> Generator[CocycleTriple, None, None]:
    """Yields the zero cocycle over `collapse_z2`."""
    yield zero_cocycle(collapse_z2)


@pytest.fixture(scope="session")
def budget() -> Generator[SearchBudget, None, None]:
    """Yields a search budget that is large enough for all the fixtures."""
    yield SearchBudget(max_candidates=10_000_000)
