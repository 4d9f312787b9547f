import numpy as np
import pytest
from pydantic import ValidationError

from subset_syzygy.algebra.exactfield import FieldSpec, Matrix, rank
from subset_syzygy.algebra.pointideal import (
    HilbertTable,
    PointSet,
    dump_points,
    evaluation_matrix,
    generic_values,
    hilbert,
    ideal_basis,
    is_generic,
    load_points,
    sample_generic_points,
)
from subset_syzygy.algebra.polyspace import evaluate
from subset_syzygy.errors import GenericityError, PointSetError, PreconditionError


def test_load_point_files(fixture_path):
    """
    Test loading the point-set files that must pass.
    """

    # Test with the default prime
    X = load_points(fixture_path("pass", "one_point.json"))
    assert X.field.prime == 31991
    assert X.points == ((1, 2, 3),)

    # Test with points that need normalization
    X = PointSet.create(FieldSpec(7), 2, [[3, 6, 0], [0, 2, 4]])
    assert X.points == ((1, 2, 0), (0, 1, 2))


def test_load_point_files_fail(fixture_path):
    """
    Test that bad point-set files are refused with the offending location.
    """

    # Test with a point that repeats after scaling
    with pytest.raises(PointSetError) as error:
        load_points(fixture_path("fail", "duplicate_points.json"))
    assert error.value.location == "points[2]"
    assert "points[0]" in error.value.detail

    # Test with a point that vanishes modulo the prime
    with pytest.raises(PointSetError) as error:
        load_points(fixture_path("fail", "zero_point.json"))
    assert error.value.location == "points[1]"

    # Test with a composite modulus, a short point and broken JSON
    for name in ("nonprime.json", "wrong_length.json", "malformed.json"):
        with pytest.raises(ValidationError):
            load_points(fixture_path("fail", name))

    with pytest.raises(PointSetError):
        PointSet.create(FieldSpec(7), 2, [])
    with pytest.raises(PointSetError) as error:
        PointSet.create(FieldSpec(7), 2, [[1, 0, 0], [1, 1]])
    assert error.value.location == "points[1]"


def test_hilbert_of_fixtures(five_points, collinear, fixture_path):
    """
    Test Hilbert functions and their first differences.
    """

    table = hilbert(five_points)
    assert table.values == (1, 3, 5, 5)
    assert table.deltas == (1, 2, 2, 0)
    assert table.stabilization == 2
    assert table.initial_degree == 2
    assert table.ideal_dim(2) == 1
    assert table.ideal_dim(3) == 5

    table = hilbert(collinear)
    assert table.values == (1, 3, 4, 4)
    assert table.trimmed_deltas() == (1, 2, 1)
    assert table.value(10) == 4
    assert table.delta(10) == 0
    assert table.value(-1) == 0

    table = hilbert(load_points(fixture_path("pass", "one_point.json")))
    assert table.values == (1, 1)
    assert table.stabilization == 0
    assert table.initial_degree == 1


def test_hilbert_of_special_position(field):
    """
    Test four points on a line, which fail to impose independent conditions
    on conics.
    """

    X = PointSet.create(field, 2, [[1, i, 0] for i in range(4)])
    table = hilbert(X)
    assert table.values == (1, 2, 3, 4, 4)
    assert table.trimmed_deltas() == (1, 1, 1, 1)
    assert not is_generic(X)


def test_hilbert_of_generic_points(generic_p2):
    """
    Test that sampled points have the maximal Hilbert function.
    """

    for d, X in generic_p2.items():
        table = hilbert(X)
        assert list(table.values) == generic_values(2, d, len(table.values) - 1)
        assert is_generic(X)


def test_table_from_values():
    """
    Test that tables are trimmed and padded to stabilization + 1.
    """

    table = HilbertTable.from_values([1, 3, 6, 7, 7, 7, 7], degree=7, projective_dim=2)
    assert table.values == (1, 3, 6, 7, 7)
    assert table.stabilization == 3

    table = HilbertTable.from_values([1, 3, 6, 7], degree=7, projective_dim=2)
    assert table.values == (1, 3, 6, 7, 7)
    assert table.deltas == (1, 2, 3, 1, 0)


def test_ideal_basis(five_points, field):
    """
    Test that ideal bases vanish at the points and have the expected size.
    """

    for t in range(5):
        basis = ideal_basis(five_points, t)
        assert len(basis) == hilbert(five_points).ideal_dim(t)
        for form in basis.elements():
            assert all(evaluate(form, point) == 0 for point in five_points.points)
        if len(basis):
            identity = basis.coordinates(basis.vectors.entries)
            assert identity.tolist() == np.eye(len(basis), dtype=int).tolist()

    with pytest.raises(PreconditionError):
        evaluation_matrix(five_points, -1)


def test_sample_generic_points(field):
    """
    Test seeded sampling of generic points.
    """

    X, attempts = sample_generic_points(3, 10, field, seed=5)
    Y, _ = sample_generic_points(3, 10, field, seed=5)
    assert X == Y
    assert attempts >= 0
    assert hilbert(X).values == (1, 4, 10, 10)

    X, _ = sample_generic_points(6, 22, field, seed=42)
    assert hilbert(X).values == (1, 7, 22, 22)

    # Test with a line over GF(3), which only has four points
    with pytest.raises(GenericityError):
        sample_generic_points(1, 5, FieldSpec(3), seed=1, retries=3)

    with pytest.raises(PreconditionError):
        sample_generic_points(0, 3, field, seed=1)


def test_subsets_and_files(five_points, tmp_path):
    """
    Test subsets and writing a point set back to disk.
    """

    Z = five_points.subset([0, 1, 3, 4])
    assert len(Z) == 4
    assert five_points.without(2) == Z
    with pytest.raises(PointSetError):
        five_points.subset([])

    path = tmp_path / "points.json"
    dump_points(Z, path)
    assert load_points(path) == Z


def test_ideals_grow_when_points_are_removed(five_points, collinear, generic_p2):
    """
    Test that I(X)_t lies in I(Z)_t for Z = X minus one point, by the rank of
    the stacked bases, and that dim I_t grows by at most one.
    """

    for X in (five_points, collinear, generic_p2[8]):
        table = hilbert(X)
        for index in range(len(X)):
            Z = X.without(index)
            for t in range(table.stabilization + 2):
                larger, smaller = ideal_basis(Z, t), ideal_basis(X, t)
                stacked = np.vstack([larger.vectors.entries, smaller.vectors.entries])
                assert rank(Matrix(X.field, stacked)) == len(larger)
                assert len(larger) - len(smaller) in (0, 1)
