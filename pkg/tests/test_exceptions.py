"""Unit tests for the `exceptions` module."""

import pytest
from tracat.exceptions import (
    BudgetExceeded,
    ContextMismatch,
    ElementOutOfRange,
    InvalidCocycle,
    InvalidTrackCategory,
    MalformedFile,
    NotACongruence,
    StructuralError,
)
from tracat.reports import ValidationReport


@pytest.fixture(scope="module")
def failed_report() -> ValidationReport:
    """A report with a single violation."""
    report = ValidationReport(subject="cocycle triple")
    report.add("(ii)", ("a", "b", "c", "d"))
    return report


@pytest.mark.parametrize(
    argnames=["exception"],
    argvalues=[
        (StructuralError,),
        (MalformedFile,),
        (ContextMismatch,),
        (NotACongruence,),
    ],
    ids=["structural", "malformed", "context", "congruence"],
)
def test_exceptions_with_default_messages(exception):
    """Test that exceptions without arguments can be raised."""
    with pytest.raises(exception) as excinfo:
        raise exception()
    assert excinfo.value.message


@pytest.mark.parametrize(
    argnames=["exception"],
    argvalues=[(MalformedFile,), (ContextMismatch,), (ElementOutOfRange,)],
    ids=["malformed", "context", "element"],
)
def test_input_errors_are_structural(exception):
    """Test that errors in the input are all structural errors."""
    assert issubclass(exception, StructuralError)


def test_element_out_of_range():
    """Test that the element and the order appear in the message."""
    with pytest.raises(ElementOutOfRange) as excinfo:
        raise ElementOutOfRange(element=5, order=3)
    assert "5" in excinfo.value.message and "3" in excinfo.value.message


@pytest.mark.parametrize(
    argnames=["exception"],
    argvalues=[(InvalidCocycle,), (InvalidTrackCategory,)],
    ids=["cocycle", "track"],
)
def test_report_exceptions(exception, failed_report):
    """Test that report exceptions carry their report and its summary."""
    with pytest.raises(exception) as excinfo:
        raise exception(report=failed_report)
    assert excinfo.value.report is failed_report
    assert failed_report.summary() in excinfo.value.message
    assert not issubclass(exception, StructuralError)


def test_budget_exceeded():
    """Test that the budget message names the limit and the option to raise it."""
    with pytest.raises(BudgetExceeded) as excinfo:
        raise BudgetExceeded(what="cocycle", limit=10, unit="candidates")
    assert "10 candidates" in excinfo.value.message
    assert "--budget" in excinfo.value.message
