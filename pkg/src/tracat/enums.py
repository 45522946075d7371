"""Enums used in the project."""

from enum import Enum, IntEnum, auto


class AutoStrEnum(str, Enum):
    """StrEnum where auto() returns the field name in lower case."""

    @staticmethod
    def _generate_next_value_(
        name: str, start: int, count: int, last_values: list
    ) -> str:
        return name.lower()


class StructureKind(AutoStrEnum):
    """The kind of structure stored in a file envelope.

    Attributes:
        GROUP:
            A finite group given by its Cayley table.
        CATEGORY:
            A finite category given by its composition table.
        NATURAL_SYSTEM:
            A natural system of groups on a finite category.
        PRETRACK:
            A pre-track category (pi, G).
        COCYCLE:
            A cocycle triple (xi, chi, phi) over a pre-track category.
        COBOUNDARY:
            A coboundary zeta over a pre-track category.
        TRACK_CHOICE:
            A choice of tracks H_{f,g} in a (pi, G)-track category.
        TRACK:
            A (pi, G)-track category.
        CLASSIFICATION:
            The result of classifying a pre-track category.
    """

    GROUP = auto()
    CATEGORY = auto()
    NATURAL_SYSTEM = auto()
    PRETRACK = auto()
    COCYCLE = auto()
    COBOUNDARY = auto()
    TRACK_CHOICE = auto()
    TRACK = auto()
    CLASSIFICATION = auto()


class EquivalenceKind(AutoStrEnum):
    """What the `equivalent` command compares.

    Attributes:
        COCYCLES:
            Two cocycle triples, compared up to coboundaries.
        TRACKS:
            Two (pi, G)-track categories, compared up to track functors.
    """

    COCYCLES = auto()
    TRACKS = auto()


class ExitCode(IntEnum):
    """Exit codes of the command line interface.

    Attributes:
        PASS:
            The check passed.
        FAILURE:
            A mathematical failure, such as a violated axiom.
        STRUCTURAL:
            The input could not be parsed or is structurally malformed.
        BUDGET:
            A search exceeded its budget.
    """

    PASS = 0
    FAILURE = 1
    STRUCTURAL = 2
    BUDGET = 3
