"""Configuration classes used throughout the project."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Callable

if TYPE_CHECKING:
    from .pretrack import PreTrack


@dataclass(frozen=True)
class SearchBudget:
    """Limits on the exhaustive searches.

    Attributes:
        max_candidates:
            The maximal number of candidates a search may visit, such as partial
            assignments in the cocycle enumeration or coboundaries in an equivalence
            search.
        max_seconds:
            The maximal wall time of a search, in seconds. If None then there is no
            time limit.
    """

    max_candidates: int = 1_000_000
    max_seconds: float | None = None


@dataclass
class Workspace:
    """The configuration of a command line run.

    Attributes:
        inputs:
            The input files.
        output_dir:
            The directory into which generated files are written.
        budget:
            The budget of all searches in the run.
        seed:
            The global seed from which every random stream is derived.
        num_threads:
            The maximal number of threads used by a search.
        progress_bar:
            Whether progress bars should be shown.
        verbose:
            Whether to output additional output.
    """

    inputs: list[Path]
    output_dir: Path
    budget: SearchBudget
    seed: int
    num_threads: int
    progress_bar: bool
    verbose: bool


@dataclass
class FixtureConfig:
    """A built-in pre-track category.

    Attributes:
        name:
            The name of the fixture, used on the command line.
        pretty_name:
            A longer description of the fixture.
        build:
            The function constructing the pre-track category.
        expected_classes:
            The number of cohomology classes of the fixture, if known.
        tags:
            Tags of the fixture, such as "trivial" or "slow".
    """

    name: str
    pretty_name: str
    build: "Callable[[], PreTrack]"
    expected_classes: int | None = None
    tags: list[str] = field(default_factory=list)

    def __hash__(self) -> int:
        """Return a hash of the fixture."""
        return hash(self.name)
