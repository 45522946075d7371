"""Pre-track categories and the index sets of their cocycle data."""

import itertools as it
import logging
from dataclasses import dataclass
from functools import cached_property

from .exceptions import ContextMismatch
from .fincat import FiniteCategory, QuotientFunctor, validate_quotient
from .fingroup import FiniteGroup
from .natsys import NaturalSystem, is_centralised, validate_natural_system
from .reports import ValidationReport
from .types import ChiKey, PairKey, XiKey

logger = logging.getLogger(__package__)


@dataclass(frozen=True, eq=False)
class PreTrack:
    """A pre-track category `(pi: K -> C, G)`.

    Attributes:
        pi:
            The identity-on-objects functor `pi: K -> C` onto the homotopy category.
        system:
            The centralised natural system `G` on `K`.
        name:
            An optional name, only used for logging.
    """

    pi: QuotientFunctor
    system: NaturalSystem
    name: str = ""

    def __post_init__(self) -> None:
        """Check that both components live on the same category."""
        if self.system.base != self.pi.src:
            raise ContextMismatch(
                "The natural system of a pre-track category must live on the source "
                "of its functor."
            )

    @property
    def base(self) -> FiniteCategory:
        """The category K."""
        return self.pi.src

    def group(self, f: int) -> FiniteGroup:
        """The group `G_f`."""
        return self.system.groups[f]

    def push(self, h: int, f: int, x: int) -> int:
        """The element `h_*(x)` of `G_{hf}`, for `x` in `G_f`."""
        return int(self.system.push[(h, f)].mapping[x])

    def pull(self, f: int, g: int, x: int) -> int:
        """The element `g^*(x)` of `G_{fg}`, for `x` in `G_f`."""
        return int(self.system.pull[(f, g)].mapping[x])

    def same_class(self, f: int, g: int) -> bool:
        """Whether `pi(f) = pi(g)`."""
        return self.pi(f) == self.pi(g)

    @cached_property
    def classes(self) -> list[list[int]]:
        """The fibres of `pi`, each sorted, ordered by their least morphism."""
        fibres: dict[int, list[int]] = dict()
        for f in range(self.base.num_morphisms):
            fibres.setdefault(self.pi(f), list()).append(f)
        return sorted(fibres.values())

    @cached_property
    def fibre(self) -> dict[int, list[int]]:
        """The fibre of `pi` through every morphism."""
        return {f: fibre for fibre in self.classes for f in fibre}

    @cached_property
    def pairs(self) -> list[PairKey]:
        """All pairs `(f, g)` with `pi(f) = pi(g)`, the diagonal included."""
        return [pair for fibre in self.classes for pair in it.product(fibre, repeat=2)]

    @cached_property
    def canonical_pairs(self) -> list[PairKey]:
        """All pairs `(f, g)` with `pi(f) = pi(g)` and `f < g`."""
        return [(f, g) for f, g in self.pairs if f < g]

    @cached_property
    def xi_keys(self) -> list[XiKey]:
        """All triples `(f, g, h)` in a common fibre."""
        return sorted(
            key for fibre in self.classes for key in it.product(fibre, repeat=3)
        )

    @cached_property
    def chi_keys(self) -> list[ChiKey]:
        """All `(x, y, a, b)` with `x, y: i -> j` and `a, b: j -> k` in common fibres.

        The value `chi(x, y | a, b)` lies in `G_{ax}`.
        """
        c = self.base
        return sorted(
            (x, y, a, b)
            for x, y in self.pairs
            for a, b in self.pairs
            if c.composable(a, x)
        )

    @cached_property
    def phi_keys(self) -> list[PairKey]:
        """All pairs `(g, f)` in a common fibre; `phi_{g,f}` maps `G_g` to `G_f`."""
        return sorted(self.pairs)

    def key(self) -> tuple:
        """A hashable key identifying the pre-track category."""
        return (self.pi.key(), self.system.key())

    def __eq__(self, other: object) -> bool:
        """Pre-track categories are equal when their tables are."""
        if not isinstance(other, PreTrack):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        """Return a hash of the tables."""
        return hash(self.key())

    def __repr__(self) -> str:
        """Return a short representation of the pre-track category."""
        return (
            f"PreTrack(name={self.name!r}, morphisms={self.base.num_morphisms}, "
            f"classes={len(self.classes)})"
        )


def validate_pre_track(pi: QuotientFunctor, g: NaturalSystem) -> ValidationReport:
    """Check that a functor and a natural system form a pre-track category.

    Args:
        pi:
            The functor, which must be identity on objects and surjective.
        g:
            The natural system on the source of `pi`, which must be centralised.

    Returns:
        The combined report of the functor, the natural system and the centralised
        condition.

    Raises:
        ContextMismatch:
            If the natural system does not live on the source of the functor.
        StructuralError:
            If the functor changes the objects.
    """
    if g.base != pi.src:
        raise ContextMismatch(
            "The natural system of a pre-track category must live on the source of "
            "its functor."
        )
    report = ValidationReport(subject="pre-track category")
    report.extend(validate_quotient(pi), prefix="pi ")
    natural_system_report = validate_natural_system(g)
    report.extend(natural_system_report, prefix="G ")
    if natural_system_report.passed:
        report.extend(is_centralised(g), prefix="G ")
    return report
