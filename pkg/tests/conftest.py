import json
import os

import pytest

from subset_syzygy.algebra.exactfield import FieldSpec
from subset_syzygy.algebra.pointideal import PointSet, load_points, random_points
from subset_syzygy.main import main

FILES_DIR = os.path.join(os.path.dirname(__file__), "files")


def file_path(kind: str, name: str) -> str:
    return os.path.join(FILES_DIR, kind, name)


@pytest.fixture(scope="session")
def fixture_path():
    """Path of a file under tests/files/pass or tests/files/fail."""
    return file_path


@pytest.fixture(scope="session")
def field() -> FieldSpec:
    """The default field GF(31991)."""
    return FieldSpec(31991)


@pytest.fixture(scope="session")
def five_points() -> PointSet:
    """Five points of P^2 whose unique 4-subset without cubic generators is {1, 2, 4, 5}."""
    return load_points(file_path("pass", "five_points.json"))


@pytest.fixture(scope="session")
def collinear() -> PointSet:
    """Three points on x2 = 0 and the point (0:0:1)."""
    return load_points(file_path("pass", "collinear.json"))


@pytest.fixture(scope="session")
def generic_p2(field):
    """Seeded generic point sets of P^2 keyed by size."""
    return {d: random_points(2, d, field, seed=7) for d in range(1, 11)}


@pytest.fixture
def cli(capsys):
    """Run the command line and return (exit code, stdout, stderr)."""

    def run(*argv: str):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run


@pytest.fixture
def cli_json(cli):
    """Run a command that must succeed and decode its JSON output."""

    def run(*argv: str):
        code, out, err = cli(*argv)
        assert code == 0, err
        return json.loads(out)

    return run
