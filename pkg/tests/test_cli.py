"""Unit tests for the `cli` module."""

import json
from pathlib import Path
from typing import Generator

import pytest
from click import INT, ParamType
from click.testing import CliRunner
from click.types import BOOL, FLOAT, Choice
from tracat.cli import classify_command, equivalent, export_fixture, main
from tracat.cohomology import zero_coboundary
from tracat.enums import StructureKind
from tracat.serialisation import coboundary_to_dict, write_file


@pytest.fixture(scope="module")
def params() -> Generator[dict[str | None, ParamType], None, None]:
    """Yields a dictionary of the parameters of the `classify` command."""
    ctx = classify_command.make_context(None, ["pretrack.json"])
    yield {p.name: p.type for p in classify_command.get_params(ctx)}


@pytest.fixture(scope="module")
def runner() -> Generator[CliRunner, None, None]:
    """Yields a command line runner."""
    yield CliRunner()


@pytest.fixture(scope="module")
def workdir(tmp_path_factory, runner, collapse_z2) -> Generator[Path, None, None]:
    """Yields a directory with exported fixtures and classified representatives."""
    path = tmp_path_factory.mktemp("cli")
    for name in ("collapse_z2", "parallel_z2"):
        result = runner.invoke(
            main,
            [
                "export-fixture",
                name,
                "-o",
                str(path / f"{name}.json"),
                "--track",
                str(path / f"{name}_track.json"),
            ],
        )
        assert result.exit_code == 0, result.output
    result = runner.invoke(
        main,
        [
            "classify",
            str(path / "collapse_z2.json"),
            "--emit-reps",
            str(path / "reps"),
        ],
    )
    assert result.exit_code == 0, result.output
    write_file(
        path / "zero_zeta.json",
        kind=StructureKind.COBOUNDARY,
        data=coboundary_to_dict(zero_coboundary(collapse_z2)),
    )
    yield path


def test_cli_param_names(params):
    """Test that the `classify` parameters have the correct names."""
    assert set(params.keys()) == {
        "pretrack_path",
        "budget",
        "max_seconds",
        "threads",
        "emit_reps",
        "output",
        "help",
    }


def test_cli_param_types(params):
    """Test that the `classify` parameters have the correct types."""
    assert params["budget"] == INT
    assert params["max_seconds"] == FLOAT
    assert params["threads"] == INT
    assert params["help"] == BOOL


def test_choice_params():
    """Test that the fixed choices are offered as choices."""
    ctx = equivalent.make_context(None, ["cocycles", "a.json", "b.json"])
    assert isinstance(
        {p.name: p.type for p in equivalent.get_params(ctx)}["kind"], Choice
    )
    ctx = export_fixture.make_context(None, ["collapse_z2", "-o", "out.json"])
    assert isinstance(
        {p.name: p.type for p in export_fixture.get_params(ctx)}["name"], Choice
    )


class TestCommands:
    """Unit tests for the commands."""

    def test_fixtures(self, runner):
        """Test that the fixtures are listed with their class counts."""
        result = runner.invoke(main, ["fixtures"])
        assert result.exit_code == 0
        assert "collapse_z2:" in result.output
        assert "(classes: 2)" in result.output
        assert "[slow]" in result.output

    def test_validate_pretrack(self, runner, workdir):
        """Test that an exported fixture validates."""
        result = runner.invoke(main, ["validate", str(workdir / "collapse_z2.json")])
        assert result.exit_code == 0
        assert "PASS" in result.output

    def test_validate_broken_cocycle(self, runner, workdir, tmp_path):
        """Test that a broken cocycle fails with exit code 1."""
        data = json.loads((workdir / "reps" / "class_0.json").read_text())
        data["data"]["xi"]["e0,e0,e1"] = 1
        path = tmp_path / "broken.json"
        path.write_text(json.dumps(data))
        result = runner.invoke(main, ["validate", str(path)])
        assert result.exit_code == 1
        assert "FAIL" in result.output
        assert "normalization" in result.output

    def test_validate_malformed_file(self, runner, tmp_path):
        """Test that a malformed file exits with code 2."""
        path = tmp_path / "malformed.json"
        path.write_text("{not json")
        result = runner.invoke(main, ["validate", str(path)])
        assert result.exit_code == 2
        assert "error:" in result.output

    @pytest.mark.parametrize(
        argnames=["file_name", "keys"],
        argvalues=[
            ("reps/class_0.json", ("xi",)),
            ("reps/class_0.json", ("chi",)),
            ("reps/class_0.json", ("phi",)),
            ("reps/class_0.json", ("pretrack", "pi")),
            ("zero_zeta.json", ("zeta",)),
            ("collapse_z2.json", ("G", "push")),
            ("collapse_z2.json", ("G", "groups")),
            ("collapse_z2.json", ("source", "compose")),
            ("collapse_z2_track.json", ("vcomp",)),
        ],
        ids=["xi", "chi", "phi", "pi", "zeta", "push", "groups", "compose", "vcomp"],
    )
    def test_validate_table_given_as_list(
        self, runner, workdir, tmp_path, file_name, keys
    ):
        """Test that a table given as a list exits with code 2."""
        data = json.loads((workdir / file_name).read_text())
        table = data["data"]
        for key in keys[:-1]:
            table = table[key]
        table[keys[-1]] = []
        path = tmp_path / "misshapen.json"
        path.write_text(json.dumps(data))
        result = runner.invoke(main, ["validate", str(path)])
        assert result.exit_code == 2, result.output
        assert "error:" in result.output
        assert f"'{keys[-1]}'" in result.output

    def test_validate_coboundary(self, runner, workdir, tmp_path):
        """Test that the values of a coboundary are validated."""
        result = runner.invoke(main, ["validate", str(workdir / "zero_zeta.json")])
        assert result.exit_code == 0
        assert "coboundary: pass" in result.output
        data = json.loads((workdir / "zero_zeta.json").read_text())
        data["data"]["zeta"]["e0,e0"] = 1
        data["data"]["zeta"]["e0,e1"] = 5
        path = tmp_path / "broken_zeta.json"
        path.write_text(json.dumps(data))
        result = runner.invoke(main, ["validate", str(path)])
        assert result.exit_code == 1
        assert "[diagonal] at (e0, e0)" in result.output
        assert "[range] at (e0, e1)" in result.output

    def test_axioms(self, runner, workdir):
        """Test that the zero track category satisfies the axioms."""
        track = workdir / "collapse_z2_track.json"
        result = runner.invoke(main, ["axioms", str(track)])
        assert result.exit_code == 0

    def test_classify(self, runner, workdir, tmp_path):
        """Test the classification of `collapse_z2`."""
        output = tmp_path / "classification.json"
        result = runner.invoke(
            main, ["classify", str(workdir / "collapse_z2.json"), "-o", str(output)]
        )
        assert result.exit_code == 0
        assert "classes: 2" in result.output
        assert "coboundaries applied:" in result.output
        assert json.loads(output.read_text())["data"]["class_count"] == 2

    def test_emitted_representatives(self, workdir):
        """Test that one cocycle file is written per class."""
        assert sorted(p.name for p in (workdir / "reps").iterdir()) == [
            "class_0.json",
            "class_1.json",
        ]

    def test_classify_budget_exceeded(self, runner, workdir):
        """Test that exhausting the budget exits with code 3."""
        result = runner.invoke(
            main, ["classify", str(workdir / "parallel_z2.json"), "--budget", "1"]
        )
        assert result.exit_code == 3
        assert "budget:" in result.output

    def test_classify_wrong_kind(self, runner, workdir):
        """Test that classifying a file of another kind exits with code 2."""
        result = runner.invoke(
            main, ["classify", str(workdir / "collapse_z2_track.json")]
        )
        assert result.exit_code == 2

    def test_build_and_extract(self, runner, workdir, tmp_path):
        """Test building a track category and extracting a cocycle from it."""
        track = tmp_path / "track.json"
        result = runner.invoke(
            main,
            [
                "build-track",
                str(workdir / "collapse_z2.json"),
                str(workdir / "reps" / "class_1.json"),
                "-o",
                str(track),
            ],
        )
        assert result.exit_code == 0, result.output
        outputs = list()
        for name in ("first.json", "second.json"):
            result = runner.invoke(
                main,
                [
                    "extract-cocycle",
                    str(track),
                    "--seed",
                    "1",
                    "-o",
                    str(tmp_path / name),
                ],
            )
            assert result.exit_code == 0, result.output
            outputs.append((tmp_path / name).read_text())
        assert outputs[0] == outputs[1]
        assert "choice" in json.loads(outputs[0])["data"]

    def test_extract_with_negative_seed(self, runner, workdir, tmp_path):
        """Test that a negative seed exits with code 2."""
        result = runner.invoke(
            main,
            [
                "extract-cocycle",
                str(workdir / "collapse_z2_track.json"),
                "--seed",
                "-1",
                "-o",
                str(tmp_path / "cocycle.json"),
            ],
        )
        assert result.exit_code == 2
        assert not (tmp_path / "cocycle.json").exists()

    def test_build_over_another_pretrack(self, runner, workdir, tmp_path):
        """Test that a cocycle over another pre-track category exits with code 2."""
        result = runner.invoke(
            main,
            [
                "build-track",
                str(workdir / "parallel_z2.json"),
                str(workdir / "reps" / "class_1.json"),
                "-o",
                str(tmp_path / "track.json"),
            ],
        )
        assert result.exit_code == 2

    def test_equivalent_cocycles(self, runner, workdir):
        """Test comparing representatives of the same and of different classes."""
        reps = workdir / "reps"
        first, second = str(reps / "class_0.json"), str(reps / "class_1.json")
        same = runner.invoke(main, ["equivalent", "cocycles", second, second])
        assert same.exit_code == 0
        assert "cohomologous" in same.output
        assert "witness zeta = {" in same.output
        different = runner.invoke(main, ["equivalent", "cocycles", first, second])
        assert different.exit_code == 1
        assert "not cohomologous" in different.output

    def test_equivalent_tracks(self, runner, workdir, tmp_path):
        """Test comparing the track categories of different classes."""
        for idx in range(2):
            result = runner.invoke(
                main,
                [
                    "build-track",
                    str(workdir / "collapse_z2.json"),
                    str(workdir / "reps" / f"class_{idx}.json"),
                    "-o",
                    str(tmp_path / f"track_{idx}.json"),
                ],
            )
            assert result.exit_code == 0, result.output
        same = runner.invoke(
            main,
            [
                "equivalent",
                "tracks",
                str(tmp_path / "track_0.json"),
                str(workdir / "collapse_z2_track.json"),
            ],
        )
        assert same.exit_code == 0
        assert "equivalent" in same.output
        different = runner.invoke(
            main,
            [
                "equivalent",
                "tracks",
                str(tmp_path / "track_0.json"),
                str(tmp_path / "track_1.json"),
            ],
        )
        assert different.exit_code == 1
        assert "not equivalent" in different.output

    @pytest.mark.parametrize(
        argnames=["file_name"],
        argvalues=[("reps/class_1.json",), ("collapse_z2_track.json",)],
        ids=["cocycle", "track"],
    )
    def test_roundtrip(self, runner, workdir, file_name):
        """Test the roundtrip on a cocycle file and on a track file."""
        result = runner.invoke(
            main, ["roundtrip", str(workdir / file_name), "--seed", "2"]
        )
        assert result.exit_code == 0, result.output
        assert "roundtrip passed" in result.output

    def test_roundtrip_of_a_pretrack_raises(self, runner, workdir):
        """Test that a roundtrip needs a cocycle or a track file."""
        result = runner.invoke(main, ["roundtrip", str(workdir / "collapse_z2.json")])
        assert result.exit_code == 2
