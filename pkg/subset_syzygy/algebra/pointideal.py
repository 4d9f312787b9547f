"""
Finite point sets in P^n, their Hilbert functions and the graded pieces of
their ideals.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from math import comb
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np

from subset_syzygy.algebra.exactfield import FieldSpec, Matrix, nullspace, rank
from subset_syzygy.algebra.polyspace import PolyVec, monomial_values
from subset_syzygy.config import GENERIC_RETRIES
from subset_syzygy.errors import GenericityError, PointSetError, PreconditionError
from subset_syzygy.models import PointSetFile

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PointSet:
    """
    Pairwise distinct points of P^n over ``field``.

    Every point is normalized so that its first nonzero coordinate is 1.
    Build instances with ``PointSet.create``.
    """

    field: FieldSpec
    n: int
    points: tuple[tuple[int, ...], ...]

    @classmethod
    def create(
        cls, field: FieldSpec, n: int, rows: Iterable[Sequence[int]]
    ) -> "PointSet":
        prime = field.prime
        normalized: list[tuple[int, ...]] = []
        seen: dict[tuple[int, ...], int] = {}
        for position, row in enumerate(rows):
            if len(row) != n + 1:
                raise PointSetError(
                    f"expected {n + 1} coordinates, got {len(row)}",
                    location=f"points[{position}]",
                )
            reduced = [int(value) % prime for value in row]
            leading = next((value for value in reduced if value), 0)
            if leading == 0:
                raise PointSetError(
                    "all coordinates vanish modulo the prime",
                    location=f"points[{position}]",
                )
            scale = pow(leading, -1, prime)
            point = tuple(value * scale % prime for value in reduced)
            if point in seen:
                raise PointSetError(
                    f"duplicates points[{seen[point]}] after normalization",
                    location=f"points[{position}]",
                )
            seen[point] = position
            normalized.append(point)
        if not normalized:
            raise PointSetError("a point set needs at least one point", location="points")
        return cls(field, n, tuple(normalized))

    def __len__(self) -> int:
        return len(self.points)

    @cached_property
    def coordinates(self) -> np.ndarray:
        array = np.array(self.points, dtype=np.int64)
        array.setflags(write=False)
        return array

    def subset(self, indices: Iterable[int]) -> "PointSet":
        chosen = tuple(indices)
        if not chosen:
            raise PointSetError("a point set needs at least one point", location="points")
        return PointSet(self.field, self.n, tuple(self.points[i] for i in chosen))

    def without(self, index: int) -> "PointSet":
        return self.subset(i for i in range(len(self)) if i != index)


@dataclass(frozen=True)
class HilbertTable:
    """
    Values h(0..T) and first differences of a Hilbert function of points.

    ``stabilization`` is the smallest t with h(t) = degree; the table runs
    through stabilization + 1 and ``value`` extends it by the constant.
    """

    values: tuple[int, ...]
    deltas: tuple[int, ...]
    degree: int
    stabilization: int
    projective_dim: int

    @classmethod
    def from_values(cls, values: Sequence[int], degree: int, projective_dim: int) -> "HilbertTable":
        values = tuple(int(v) for v in values)
        stabilization = next(t for t, v in enumerate(values) if v == degree)
        values = values[: stabilization + 2]
        if len(values) < stabilization + 2:
            values = values + (degree,)
        deltas = tuple(v - (values[t - 1] if t else 0) for t, v in enumerate(values))
        return cls(values, deltas, degree, stabilization, projective_dim)

    def value(self, t: int) -> int:
        if t < 0:
            return 0
        return self.values[t] if t < len(self.values) else self.degree

    def delta(self, t: int) -> int:
        return self.value(t) - self.value(t - 1)

    def ideal_dim(self, t: int) -> int:
        if t < 0:
            return 0
        return comb(self.projective_dim + t, self.projective_dim) - self.value(t)

    @property
    def initial_degree(self) -> int:
        t = 0
        while self.ideal_dim(t) == 0:
            t += 1
        return t

    def trimmed_deltas(self) -> tuple[int, ...]:
        """Δh without trailing zeros."""
        deltas = list(self.deltas)
        while deltas and deltas[-1] == 0:
            deltas.pop()
        return tuple(deltas)


@dataclass(frozen=True)
class GradedBasis:
    """
    A basis of one graded piece I_t, one coefficient vector per row.

    ``coordinate_columns`` are the monomial positions on which the basis is
    the identity, so ``vector[coordinate_columns]`` are the coordinates of
    any element of the span.
    """

    n: int
    t: int
    vectors: Matrix
    coordinate_columns: tuple[int, ...]

    def __len__(self) -> int:
        return self.vectors.rows

    def coordinates(self, elements: np.ndarray) -> np.ndarray:
        elements = np.atleast_2d(elements)
        return elements[:, list(self.coordinate_columns)]

    def elements(self) -> list[PolyVec]:
        return [
            PolyVec(self.vectors.field, self.n, self.t, row) for row in self.vectors.entries
        ]


def evaluation_matrix(X: PointSet, t: int) -> Matrix:
    """Row i holds every monomial of degree t evaluated at the i-th point."""
    if t < 0:
        raise PreconditionError(f"negative degree {t}")
    return Matrix(X.field, monomial_values(X.field, X.coordinates, t))


def hilbert(X: PointSet) -> HilbertTable:
    """h_X(t) = rank of the degree t evaluation matrix, through stabilization + 1."""
    values: list[int] = []
    t = 0
    while not values or values[-1] != len(X):
        values.append(rank(evaluation_matrix(X, t)))
        t += 1
    values.append(len(X))
    return HilbertTable.from_values(values, len(X), X.n)


def ideal_basis(X: PointSet, t: int) -> GradedBasis:
    """Basis of I(X)_t: the null space of the evaluation matrix."""
    vectors, free = nullspace(evaluation_matrix(X, t))
    return GradedBasis(X.n, t, vectors, free)


def generic_values(n: int, d: int, through: int) -> list[int]:
    return [min(comb(n + t, n), d) for t in range(through + 1)]


def is_generic(X: PointSet) -> bool:
    """True when X has the maximal Hilbert function min{C(n+t, n), |X|}."""
    table = hilbert(X)
    return list(table.values) == generic_values(X.n, len(X), len(table.values) - 1)


def sample_generic_points(
    n: int, d: int, field: FieldSpec, seed: int, retries: int = GENERIC_RETRIES
) -> tuple[PointSet, int]:
    """
    Seeded certified generic points together with the number of resamples.

    All randomness comes from ``numpy.random.default_rng(seed)`` (PCG64):
    each attempt draws a fresh d x (n+1) block of residues.
    """
    if n < 1 or d < 1:
        raise PreconditionError(f"cannot sample {d} points in P^{n}")
    generator = np.random.default_rng(seed)
    for attempt in range(retries + 1):
        rows = generator.integers(0, field.prime, size=(d, n + 1))
        try:
            X = PointSet.create(field, n, rows.tolist())
        except PointSetError as error:
            logger.info("generic resample seed=%s attempt=%s reason=%s", seed, attempt, error)
            continue
        if is_generic(X):
            return X, attempt
        logger.info("generic resample seed=%s attempt=%s reason=hilbert", seed, attempt)
    raise GenericityError(
        f"no generic sample of {d} points in P^{n} over GF({field.prime}) "
        f"after {retries + 1} attempts with seed {seed}"
    )


def random_points(n: int, d: int, field: FieldSpec, seed: int) -> PointSet:
    return sample_generic_points(n, d, field, seed)[0]


def load_points(path: Union[str, Path]) -> PointSet:
    """Read a point-set JSON file; raises pydantic ValidationError or PointSetError."""
    with open(path, "r") as f:
        document = PointSetFile.model_validate_json(f.read())
    return PointSet.create(
        FieldSpec(document.prime), document.projective_dim, document.points
    )


def dump_points(X: PointSet, path: Union[str, Path]):
    document = PointSetFile(
        prime=X.field.prime, projective_dim=X.n, points=[list(p) for p in X.points]
    )
    with open(path, "w") as f:
        f.write(document.model_dump_json(indent=2))
