"""Validation reports returned by every axiom checker."""

from bisect import insort
from dataclasses import dataclass, field


@dataclass(frozen=True, order=True)
class Violation:
    """A single violated axiom.

    Attributes:
        label:
            The label of the violated axiom or equation, such as "TR1" or "(ii)".
        witness:
            The names of the arguments at which the axiom fails.
        detail:
            A human readable description of the failure.
    """

    label: str
    witness: tuple[str, ...]
    detail: str = ""

    def __str__(self) -> str:
        """Render the violation on one line."""
        msg = f"[{self.label}] at ({', '.join(self.witness)})"
        if self.detail:
            msg += f": {self.detail}"
        return msg


@dataclass
class ValidationReport:
    """The outcome of checking a structure against its axioms.

    Attributes:
        subject:
            What was validated, such as "group" or "track category".
        violations:
            The violations found, kept sorted canonically.
    """

    subject: str
    violations: list[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """Whether no axiom was violated."""
        return len(self.violations) == 0

    @property
    def labels(self) -> set[str]:
        """The labels of all violated axioms."""
        return {violation.label for violation in self.violations}

    def add(self, label: str, witness: tuple[str, ...], detail: str = "") -> None:
        """Record a violation.

        Args:
            label:
                The label of the violated axiom.
            witness:
                The names of the arguments at which the axiom fails.
            detail:
                A human readable description of the failure.
        """
        insort(self.violations, Violation(label=label, witness=witness, detail=detail))

    def extend(self, other: "ValidationReport", prefix: str = "") -> None:
        """Merge the violations of another report into this one.

        Args:
            other:
                The report to merge.
            prefix:
                A prefix prepended to the merged labels, to tell them apart.
        """
        for violation in other.violations:
            self.add(
                label=f"{prefix}{violation.label}",
                witness=violation.witness,
                detail=violation.detail,
            )

    def summary(self) -> str:
        """A one line summary of the report."""
        if self.passed:
            return f"{self.subject}: pass"
        first = self.violations[0]
        return (
            f"{self.subject}: {len(self.violations)} violation(s), first {first}"
        )

    def render(self, max_violations: int = 20) -> str:
        """Render the report for the terminal.

        Args:
            max_violations:
                The maximal number of violations to list.

        Returns:
            The rendered report.
        """
        if self.passed:
            return f"{self.subject}: pass"
        lines = [f"{self.subject}: {len(self.violations)} violation(s)"]
        lines.extend(f"  - {v}" for v in self.violations[:max_violations])
        if len(self.violations) > max_violations:
            lines.append(f"  ... and {len(self.violations) - max_violations} more")
        return "\n".join(lines)
