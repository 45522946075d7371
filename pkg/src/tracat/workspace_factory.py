"""Factory function for creating workspaces."""

import logging
import os
from pathlib import Path

from pydantic import BaseModel, Field, ValidationError

from .config import SearchBudget, Workspace
from .exceptions import StructuralError

logger = logging.getLogger(__package__)


class WorkspaceParams(BaseModel):
    """The raw parameters of a workspace, as given on the command line."""

    inputs: list[Path] = Field(default_factory=list)
    output_dir: Path = Path(".")
    max_candidates: int = Field(default=1_000_000, gt=0)
    max_seconds: float | None = Field(default=None, gt=0)
    seed: int = Field(default=0, ge=0)
    num_threads: int = Field(default=1, gt=0)
    progress_bar: bool = False
    verbose: bool = False


def build_workspace(
    inputs: list[Path] | None = None,
    output_dir: Path | str = ".",
    max_candidates: int = 1_000_000,
    max_seconds: float | None = None,
    seed: int = 0,
    num_threads: int | None = None,
    progress_bar: bool = False,
    verbose: bool = False,
) -> Workspace:
    """Create a workspace.

    Args:
        inputs:
            The input files. Defaults to no files.
        output_dir:
            The directory into which generated files are written.
        max_candidates:
            The maximal number of candidates visited by a search. Must be positive.
        max_seconds:
            The maximal wall time of a search, in seconds. If None then there is no
            time limit.
        seed:
            The global seed.
        num_threads:
            The maximal number of threads used by a search. If None then the value of
            the `TRACAT_THREADS` environment variable is used, falling back to 1.
        progress_bar:
            Whether to show progress bars.
        verbose:
            Whether to output additional output.

    Returns:
        The workspace.

    Raises:
        StructuralError:
            If a budget or the thread cap is not positive, or the seed is negative.
    """
    if num_threads is None:
        num_threads = get_thread_cap()

    try:
        params = WorkspaceParams(
            inputs=inputs or list(),
            output_dir=Path(output_dir),
            max_candidates=max_candidates,
            max_seconds=max_seconds,
            seed=seed,
            num_threads=num_threads,
            progress_bar=progress_bar,
            verbose=verbose,
        )
    except ValidationError as e:
        raise StructuralError(
            "Budgets and the thread cap must be positive, and the seed non-negative. "
            f"The following parameters are invalid: "
            f"{', '.join(str(error['loc'][0]) for error in e.errors())}."
        )

    if params.verbose:
        logging.getLogger(__package__).setLevel(logging.DEBUG)

    return Workspace(
        inputs=params.inputs,
        output_dir=params.output_dir,
        budget=SearchBudget(
            max_candidates=params.max_candidates, max_seconds=params.max_seconds
        ),
        seed=params.seed,
        num_threads=params.num_threads,
        progress_bar=params.progress_bar,
        verbose=params.verbose,
    )


def get_thread_cap() -> int:
    """Get the thread cap from the environment.

    Returns:
        The value of `TRACAT_THREADS`, or 1 if it is not set.

    Raises:
        StructuralError:
            If the variable is set but is not an integer.
    """
    raw_value = os.getenv("TRACAT_THREADS", "1")
    try:
        return int(raw_value)
    except ValueError:
        raise StructuralError(
            "The environment variable TRACAT_THREADS must be an integer, but it is "
            f"{raw_value!r}."
        )
