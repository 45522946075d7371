"""Exceptions to used by other functions."""

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .reports import ValidationReport


class StructuralError(Exception):
    """The input tables are malformed, so no axiom can even be checked."""

    def __init__(self, message: str = "The input tables are malformed."):
        """Initialize the exception.

        Args:
            message:
                The message to display.
        """
        self.message = message
        super().__init__(self.message)


class ElementOutOfRange(StructuralError):
    """An element index lies outside the group it should belong to."""

    def __init__(self, element: int, order: int):
        """Initialize the exception.

        Args:
            element:
                The offending element index.
            order:
                The order of the group.
        """
        super().__init__(
            f"The element {element} is not an element of a group of order {order}."
        )


class MalformedFile(StructuralError):
    """A structure file could not be parsed."""

    def __init__(self, message: str = "The file could not be parsed."):
        """Initialize the exception.

        Args:
            message:
                The message to display.
        """
        super().__init__(message)


class ContextMismatch(StructuralError):
    """Two structures were built over different pre-track categories."""

    def __init__(
        self,
        message: str = (
            "The two structures are not defined over the same pre-track category."
        ),
    ):
        """Initialize the exception.

        Args:
            message:
                The message to display.
        """
        super().__init__(message)


class NotACongruence(Exception):
    """The homotopy relation is not compatible with composition."""

    def __init__(
        self,
        message: str = "The homotopy relation is not a congruence on the category.",
    ):
        """Initialize the exception.

        Args:
            message:
                The message to display.
        """
        self.message = message
        super().__init__(self.message)


class InvalidCocycle(Exception):
    """A cocycle triple is not an element of the cocycle set."""

    def __init__(self, report: "ValidationReport"):
        """Initialize the exception.

        Args:
            report:
                The failed validation report of the triple.
        """
        self.report = report
        self.message = f"The cocycle triple is invalid: {report.summary()}"
        super().__init__(self.message)


class InvalidTrackCategory(Exception):
    """A track category, or a (pi, G)-track category, failed validation."""

    def __init__(self, report: "ValidationReport"):
        """Initialize the exception.

        Args:
            report:
                The failed validation report.
        """
        self.report = report
        self.message = f"The track category is invalid: {report.summary()}"
        super().__init__(self.message)


class BudgetExceeded(Exception):
    """A search ran past its configured budget."""

    def __init__(self, what: str, limit: int | float, unit: str = "candidates"):
        """Initialize the exception.

        Args:
            what:
                The name of the search that was aborted.
            limit:
                The limit that was exceeded.
            unit:
                The unit of the limit, such as "candidates" or "seconds".
        """
        self.message = (
            f"The {what} search exceeded its budget of {limit} {unit}. No partial "
            "result is reported; raise the budget with `--budget` and try again."
        )
        super().__init__(self.message)
