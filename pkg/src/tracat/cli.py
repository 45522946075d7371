"""Command-line interface for tracat."""

import functools
import logging
from pathlib import Path
from typing import Any, Callable

import click
from termcolor import colored

from .cohomology import (
    Coboundary,
    CocycleTriple,
    are_cohomologous,
    build_track,
    choose_tracks,
    extract_cocycle,
    validate_coboundary,
    validate_cocycle,
    zero_cocycle,
)
from .enumeration import classify, representatives
from .enums import EquivalenceKind, ExitCode, StructureKind
from .exceptions import (
    BudgetExceeded,
    ContextMismatch,
    InvalidCocycle,
    InvalidTrackCategory,
    NotACongruence,
    StructuralError,
)
from .fincat import validate_category
from .fingroup import validate_group
from .fixtures import get_all_fixtures, get_fixture
from .natsys import validate_natural_system
from .pretrack import PreTrack, validate_pre_track
from .reports import ValidationReport
from .serialisation import (
    Envelope,
    coboundary_to_dict,
    cocycle_from_dict,
    cocycle_to_dict,
    from_envelope,
    pretrack_from_dict,
    pretrack_to_dict,
    read_file,
    track_choice_to_dict,
    track_from_dict,
    track_to_dict,
    write_file,
)
from .track import (
    PiGTrack,
    are_equivalent_tracks,
    validate_pi_g_track,
    validate_track_category,
)
from .workspace_factory import build_workspace

logger = logging.getLogger(__package__)


def exit_codes(command: Callable[..., ExitCode]) -> Callable[..., None]:
    """Turn the outcome of a command, or the error it raises, into its exit code.

    Args:
        command:
            The body of the command, returning its exit code.

    Returns:
        The wrapped command.
    """

    @functools.wraps(command)
    def wrapper(*args: Any, **kwargs: Any) -> None:
        try:
            code = command(*args, **kwargs)
        except (InvalidCocycle, InvalidTrackCategory) as e:
            click.echo(e.report.render())
            code = ExitCode.FAILURE
        except NotACongruence as e:
            click.echo(e.message)
            code = ExitCode.FAILURE
        except StructuralError as e:
            click.echo(f"error: {e.message}", err=True)
            code = ExitCode.STRUCTURAL
        except BudgetExceeded as e:
            click.echo(f"budget: {e.message}", err=True)
            code = ExitCode.BUDGET
        click.get_current_context().exit(int(code))

    return wrapper


def echo_report(report: ValidationReport, max_violations: int = 20) -> ExitCode:
    """Print a report and return the matching exit code."""
    header = colored("PASS", "green") if report.passed else colored("FAIL", "red")
    click.echo(header)
    click.echo(report.render(max_violations=max_violations))
    return ExitCode.PASS if report.passed else ExitCode.FAILURE


def load(path: Path, kind: StructureKind) -> Envelope:
    """Read a file that must hold a structure of a given kind.

    Raises:
        StructuralError:
            If the file holds another kind of structure.
    """
    envelope = read_file(path)
    if envelope.kind != kind:
        raise StructuralError(
            f"The file {path} holds a {envelope.kind.value}, but a {kind.value} is "
            "expected."
        )
    return envelope


def load_cocycle(path: Path) -> CocycleTriple:
    """Read a cocycle file, together with its pre-track category."""
    return cocycle_from_dict(None, load(path, StructureKind.COCYCLE).data)


def load_track(path: Path) -> PiGTrack:
    """Read a (pi, G)-track category file."""
    return track_from_dict(load(path, StructureKind.TRACK).data)


def budget_options(command: Callable) -> Callable:
    """Add the budget options shared by all searching commands."""
    command = click.option(
        "--threads",
        type=int,
        default=None,
        help="""The maximal number of threads used by a search. Defaults to the
        TRACAT_THREADS environment variable, or 1 if it is not set.""",
    )(command)
    command = click.option(
        "--max-seconds",
        type=float,
        default=None,
        show_default=True,
        help="The maximal wall time of a search, in seconds.",
    )(command)
    command = click.option(
        "--budget",
        type=int,
        default=1_000_000,
        show_default=True,
        help="The maximal number of candidates a search may visit.",
    )(command)
    return command


@click.group()
@click.option(
    "--verbose/--no-verbose",
    "-v",
    default=False,
    show_default=True,
    help="Whether extra logging information should be shown.",
)
@click.option(
    "--progress-bar/--no-progress-bar",
    default=False,
    show_default=True,
    help="Whether progress bars should be shown during searches.",
)
@click.pass_context
def main(ctx: click.Context, verbose: bool, progress_bar: bool) -> None:
    """Schreier theory of track categories, computed on finite inputs."""
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    ctx.obj["progress_bar"] = progress_bar
    if verbose:
        logging.getLogger(__package__).setLevel(logging.DEBUG)


@main.command()
@click.argument("path", type=click.Path(path_type=Path))
@click.option(
    "--max-violations",
    type=int,
    default=20,
    show_default=True,
    help="The maximal number of violations to print.",
)
@exit_codes
def validate(path: Path, max_violations: int) -> ExitCode:
    """Validate a structure file of any kind."""
    envelope = read_file(path)
    structure = from_envelope(envelope)
    logger.debug(f"Validating the {envelope.kind.value} in {path}.")

    report = ValidationReport(subject=envelope.kind.value.replace("_", " "))
    match envelope.kind:
        case StructureKind.GROUP:
            report.extend(validate_group(structure))
        case StructureKind.CATEGORY:
            report.extend(validate_category(structure))
        case StructureKind.NATURAL_SYSTEM:
            report.extend(validate_natural_system(structure))
        case StructureKind.PRETRACK:
            report.extend(validate_pre_track(structure.pi, structure.system))
        case StructureKind.COCYCLE:
            pre = structure.pre
            report.extend(validate_pre_track(pre.pi, pre.system), prefix="pretrack ")
            report.extend(validate_cocycle(pre, structure))
        case StructureKind.COBOUNDARY:
            pre = structure.pre
            report.extend(validate_pre_track(pre.pi, pre.system), prefix="pretrack ")
            report.extend(validate_coboundary(pre, structure))
        case StructureKind.TRACK:
            report.extend(validate_track_category(structure.track))
            report.extend(validate_pi_g_track(structure))
    return echo_report(report, max_violations=max_violations)


@main.command()
@click.argument("path", type=click.Path(path_type=Path))
@exit_codes
def axioms(path: Path) -> ExitCode:
    """Check the axioms TR1 to TR9 of the track category in a track file."""
    return echo_report(validate_track_category(load_track(path).track))


@main.command(name="classify")
@click.argument("pretrack_path", type=click.Path(path_type=Path))
@budget_options
@click.option(
    "--emit-reps",
    type=click.Path(file_okay=False, path_type=Path),
    default=None,
    help="A directory into which one cocycle file per class is written.",
)
@click.option(
    "--output",
    "-o",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="A file into which the classification is written.",
)
@click.pass_context
@exit_codes
def classify_command(
    ctx: click.Context,
    pretrack_path: Path,
    budget: int,
    max_seconds: float | None,
    threads: int | None,
    emit_reps: Path | None,
    output: Path | None,
) -> ExitCode:
    """Count the cohomology classes of a pre-track category."""
    p = pretrack_from_dict(load(pretrack_path, StructureKind.PRETRACK).data)
    report = validate_pre_track(p.pi, p.system)
    if not report.passed:
        return echo_report(report)

    workspace = build_workspace(
        inputs=[pretrack_path],
        output_dir=emit_reps or ".",
        max_candidates=budget,
        max_seconds=max_seconds,
        num_threads=threads,
        progress_bar=ctx.obj["progress_bar"],
        verbose=ctx.obj["verbose"],
    )
    result = classify(
        p,
        budget=workspace.budget,
        num_threads=workspace.num_threads,
        progress_bar=workspace.progress_bar,
    )

    click.echo(f"classes: {result.class_count}")
    click.echo(f"class sizes: {result.class_sizes}")
    stats = result.search_stats
    click.echo(
        f"variables: {stats.variables}, nodes: {stats.nodes}, pruned: "
        f"{stats.pruned}, cocycles: {stats.cocycles}, coboundaries applied: "
        f"{stats.coboundaries}"
    )

    if emit_reps is not None:
        for idx, z in enumerate(representatives(p, result)):
            write_file(
                workspace.output_dir / f"class_{idx}.json",
                kind=StructureKind.COCYCLE,
                data=cocycle_to_dict(z),
            )
        click.echo(f"wrote {result.class_count} representatives to {emit_reps}")
    if output is not None:
        write_file(
            output,
            kind=StructureKind.CLASSIFICATION,
            data=result.model_dump(mode="json"),
        )
    return ExitCode.PASS


@main.command(name="build-track")
@click.argument("pretrack_path", type=click.Path(path_type=Path))
@click.argument("cocycle_path", type=click.Path(path_type=Path))
@click.option(
    "--output",
    "-o",
    type=click.Path(dir_okay=False, path_type=Path),
    required=True,
    help="The track file to write.",
)
@exit_codes
def build_track_command(
    pretrack_path: Path, cocycle_path: Path, output: Path
) -> ExitCode:
    """Build the (pi, G)-track category of a cocycle triple."""
    p = pretrack_from_dict(load(pretrack_path, StructureKind.PRETRACK).data)
    z = load_cocycle(cocycle_path)
    if z.pre != p:
        raise ContextMismatch(
            f"The cocycle in {cocycle_path} does not live over the pre-track "
            f"category in {pretrack_path}."
        )
    pre_report = validate_pre_track(p.pi, p.system)
    if not pre_report.passed:
        return echo_report(pre_report)

    x = build_track(p, z)
    report = validate_track_category(x.track)
    report.extend(validate_pi_g_track(x))
    if not report.passed:
        return echo_report(report)
    write_file(output, kind=StructureKind.TRACK, data=track_to_dict(x))
    click.echo(f"wrote the track category to {output}")
    return ExitCode.PASS


@main.command(name="extract-cocycle")
@click.argument("track_path", type=click.Path(path_type=Path))
@click.option(
    "--seed",
    type=int,
    default=0,
    show_default=True,
    help="The seed of the choice of tracks.",
)
@click.option(
    "--output",
    "-o",
    type=click.Path(dir_okay=False, path_type=Path),
    required=True,
    help="The cocycle file to write.",
)
@exit_codes
def extract_cocycle_command(track_path: Path, seed: int, output: Path) -> ExitCode:
    """Extract a cocycle triple from a (pi, G)-track category."""
    workspace = build_workspace(inputs=[track_path], seed=seed)
    x = load_track(track_path)
    h = choose_tracks(x, seed=workspace.seed)
    z = extract_cocycle(x, h)
    data = cocycle_to_dict(z)
    data["choice"] = track_choice_to_dict(x.track.underlying, h)
    write_file(output, kind=StructureKind.COCYCLE, data=data)
    click.echo(f"wrote the cocycle triple to {output}")
    return ExitCode.PASS


def _echo_coboundary(cob: Coboundary) -> None:
    zeta = coboundary_to_dict(cob)["zeta"]
    entries = ", ".join(f"{key}: {value}" for key, value in sorted(zeta.items()))
    click.echo(f"witness zeta = {{{entries}}}")


@main.command()
@click.argument("kind", type=click.Choice([kind.value for kind in EquivalenceKind]))
@click.argument("a_path", type=click.Path(path_type=Path))
@click.argument("b_path", type=click.Path(path_type=Path))
@budget_options
@click.pass_context
@exit_codes
def equivalent(
    ctx: click.Context,
    kind: str,
    a_path: Path,
    b_path: Path,
    budget: int,
    max_seconds: float | None,
    threads: int | None,
) -> ExitCode:
    """Decide whether two cocycle triples, or two track categories, are equivalent."""
    workspace = build_workspace(
        inputs=[a_path, b_path],
        max_candidates=budget,
        max_seconds=max_seconds,
        num_threads=threads,
        progress_bar=ctx.obj["progress_bar"],
        verbose=ctx.obj["verbose"],
    )

    if EquivalenceKind(kind) == EquivalenceKind.COCYCLES:
        z1, z2 = load_cocycle(a_path), load_cocycle(b_path)
        if z1.pre != z2.pre:
            raise ContextMismatch()
        for z in (z1, z2):
            report = validate_cocycle(z.pre, z)
            if not report.passed:
                return echo_report(report)
        cob = are_cohomologous(z1.pre, z1, z2, budget=workspace.budget)
        if cob is None:
            click.echo("not cohomologous")
            return ExitCode.FAILURE
        click.echo("cohomologous")
        _echo_coboundary(cob)
        return ExitCode.PASS

    x, y = load_track(a_path), load_track(b_path)
    if x.pre != y.pre:
        raise ContextMismatch()
    for track in (x, y):
        report = validate_track_category(track.track)
        report.extend(validate_pi_g_track(track))
        if not report.passed:
            return echo_report(report)
    witness = are_equivalent_tracks(
        x, y, budget=workspace.budget, progress_bar=workspace.progress_bar
    )
    if witness is None:
        click.echo("not equivalent")
        return ExitCode.FAILURE
    click.echo("equivalent")
    c = x.track.underlying
    for pair, table in sorted(witness.mapping.items()):
        click.echo(f"  {','.join(c.names(*pair))}: {table.tolist()}")
    return ExitCode.PASS


@main.command()
@click.argument("path", type=click.Path(path_type=Path))
@click.option(
    "--seed",
    type=int,
    default=0,
    show_default=True,
    help="The seed of the choice of tracks.",
)
@budget_options
@click.pass_context
@exit_codes
def roundtrip(
    ctx: click.Context,
    path: Path,
    seed: int,
    budget: int,
    max_seconds: float | None,
    threads: int | None,
) -> ExitCode:
    """Check that building and extracting are inverse on a cocycle or track file.

    A cocycle triple is built into a track category, a cocycle is extracted from it
    again and compared with the original. A track category goes the other way.
    """
    workspace = build_workspace(
        inputs=[path],
        seed=seed,
        max_candidates=budget,
        max_seconds=max_seconds,
        num_threads=threads,
        progress_bar=ctx.obj["progress_bar"],
        verbose=ctx.obj["verbose"],
    )
    envelope = read_file(path)

    if envelope.kind == StructureKind.COCYCLE:
        z = cocycle_from_dict(None, envelope.data)
        x = build_track(z.pre, z)
        z2 = extract_cocycle(x, choose_tracks(x, seed=workspace.seed))
        cob = are_cohomologous(z.pre, z, z2, budget=workspace.budget)
        if cob is None:
            click.echo("roundtrip failed: the extracted triple is not cohomologous")
            return ExitCode.FAILURE
        click.echo("roundtrip passed: the extracted triple is cohomologous")
        _echo_coboundary(cob)
        return ExitCode.PASS

    if envelope.kind == StructureKind.TRACK:
        x = track_from_dict(envelope.data)
        z = extract_cocycle(x, choose_tracks(x, seed=workspace.seed))
        y = build_track(x.pre, z)
        witness = are_equivalent_tracks(
            x, y, budget=workspace.budget, progress_bar=workspace.progress_bar
        )
        if witness is None:
            click.echo("roundtrip failed: the rebuilt track category differs")
            return ExitCode.FAILURE
        click.echo("roundtrip passed: the rebuilt track category is equivalent")
        return ExitCode.PASS

    raise StructuralError(
        f"A roundtrip needs a cocycle or a track file, not a {envelope.kind.value}."
    )


@main.command()
def fixtures() -> None:
    """List the built-in pre-track categories."""
    for name, cfg in sorted(get_all_fixtures().items()):
        expected = "?" if cfg.expected_classes is None else cfg.expected_classes
        tags = f" [{', '.join(cfg.tags)}]" if cfg.tags else ""
        click.echo(f"{name}: {cfg.pretty_name} (classes: {expected}){tags}")


@main.command(name="export-fixture")
@click.argument("name", type=click.Choice(sorted(get_all_fixtures().keys())))
@click.option(
    "--output",
    "-o",
    type=click.Path(dir_okay=False, path_type=Path),
    required=True,
    help="The pre-track file to write.",
)
@click.option(
    "--track",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="""A track file into which the track category of the zero cocycle is
    written.""",
)
@exit_codes
def export_fixture(name: str, output: Path, track: Path | None) -> ExitCode:
    """Write a built-in pre-track category to a file."""
    p: PreTrack = get_fixture(name).build()
    write_file(output, kind=StructureKind.PRETRACK, data=pretrack_to_dict(p))
    click.echo(f"wrote the pre-track category {name} to {output}")
    if track is not None:
        x = build_track(p, zero_cocycle(p))
        write_file(track, kind=StructureKind.TRACK, data=track_to_dict(x))
        click.echo(f"wrote its zero track category to {track}")
    return ExitCode.PASS


if __name__ == "__main__":
    main()
