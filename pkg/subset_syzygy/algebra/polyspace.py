"""
Graded pieces S_t of k[x_0, ..., x_n] with an explicit monomial basis.

Monomials of one degree are ordered graded-lexicographically with
x_0 > x_1 > ... > x_n, i.e. by descending exponent tuple. Positions are
computed combinatorially from the exponents, never by hashing monomials.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

import numpy as np

from subset_syzygy.algebra.exactfield import FieldSpec, Matrix
from subset_syzygy.errors import PreconditionError


@dataclass(frozen=True)
class MonomialBasis:
    """Ordered monomial basis of S_t in n+1 variables."""

    n: int
    t: int
    monomials: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.monomials)

    @property
    def exponents(self) -> np.ndarray:
        return _exponent_array(self.n, self.t)

    def index(self, exponents: Sequence[int]) -> int:
        if len(exponents) != self.n + 1 or sum(exponents) != self.t:
            raise PreconditionError(f"{tuple(exponents)} is not a monomial of S_{self.t}")
        return monomial_index(exponents)


def _descending(count: int, degree: int):
    if count == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in _descending(count - 1, degree - first):
            yield (first, *rest)


@lru_cache(maxsize=None)
def monomial_basis(n: int, t: int) -> MonomialBasis:
    """The basis of S_t; its size is C(n+t, n)."""
    if n < 1 or t < 0:
        raise PreconditionError(f"no monomial basis for n={n}, t={t}")
    return MonomialBasis(n, t, tuple(_descending(n + 1, t)))


@lru_cache(maxsize=None)
def _exponent_array(n: int, t: int) -> np.ndarray:
    array = np.array(monomial_basis(n, t).monomials, dtype=np.int64).reshape(-1, n + 1)
    array.setflags(write=False)
    return array


def monomial_index(exponents: Sequence[int]) -> int:
    """Position of a monomial inside the basis of its own degree."""
    n = len(exponents) - 1
    remaining = sum(exponents)
    index = 0
    for i in range(n):
        index += comb(remaining - exponents[i] - 1 + n - i, n - i)
        remaining -= exponents[i]
    return index


@lru_cache(maxsize=None)
def _binomials(limit: int) -> np.ndarray:
    table = np.zeros((limit + 1, limit + 1), dtype=np.int64)
    for top in range(limit + 1):
        for bottom in range(top + 1):
            table[top, bottom] = comb(top, bottom)
    return table


def rank_exponents(exponents: np.ndarray) -> np.ndarray:
    """Vectorised ``monomial_index`` over the rows of an exponent array."""
    count, width = exponents.shape
    n = width - 1
    index = np.zeros(count, dtype=np.int64)
    if count == 0:
        return index
    remaining = exponents.sum(axis=1)
    table = _binomials(int(remaining.max()) + n + 1)
    for i in range(n):
        top = remaining - exponents[:, i] - 1 + (n - i)
        index += table[top, n - i]
        remaining = remaining - exponents[:, i]
    return index


@lru_cache(maxsize=None)
def shift_indices(n: int, t: int, variable: int) -> np.ndarray:
    """Positions in S_{t+1} of x_variable times each monomial of S_t."""
    shifted = _exponent_array(n, t).copy()
    shifted[:, variable] += 1
    indices = rank_exponents(shifted)
    indices.setflags(write=False)
    return indices


@dataclass(frozen=True, eq=False)
class PolyVec:
    """A form of degree ``degree`` as a coefficient vector over ``monomial_basis``."""

    field: FieldSpec
    n: int
    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=np.int64, copy=True).reshape(-1)
        expected = comb(self.n + self.degree, self.n)
        if coeffs.shape[0] != expected:
            raise PreconditionError(
                f"degree {self.degree} form needs {expected} coefficients, got {coeffs.shape[0]}"
            )
        coeffs %= self.field.prime
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls, field: FieldSpec, n: int, degree: int) -> "PolyVec":
        return cls(field, n, degree, np.zeros(comb(n + degree, n), dtype=np.int64))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyVec):
            return NotImplemented
        return (
            self.field == other.field
            and self.n == other.n
            and self.degree == other.degree
            and bool(np.array_equal(self.coeffs, other.coeffs))
        )

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def __add__(self, other: "PolyVec") -> "PolyVec":
        _check_compatible(self, other)
        if self.degree != other.degree:
            raise PreconditionError("cannot add forms of different degrees")
        return PolyVec(self.field, self.n, self.degree, self.coeffs + other.coeffs)

    def scale(self, scalar: int) -> "PolyVec":
        return PolyVec(
            self.field, self.n, self.degree, (self.coeffs * (int(scalar) % self.field.prime))
        )

    def normalized(self) -> "PolyVec":
        """Scaled so the first nonzero coefficient is 1."""
        nonzero = np.flatnonzero(self.coeffs)
        if nonzero.size == 0:
            return self
        return self.scale(self.field.inverse(int(self.coeffs[nonzero[0]])))

    def terms(self) -> list[tuple[int, tuple[int, ...]]]:
        basis = monomial_basis(self.n, self.degree)
        return [
            (int(self.coeffs[j]), basis.monomials[j]) for j in np.flatnonzero(self.coeffs)
        ]

    def __str__(self) -> str:
        parts = []
        for coefficient, exponents in self.terms():
            factors = [
                f"x{i}" if power == 1 else f"x{i}^{power}"
                for i, power in enumerate(exponents)
                if power
            ]
            monomial = "*".join(factors)
            if not monomial:
                parts.append(str(coefficient))
            elif coefficient == 1:
                parts.append(monomial)
            else:
                parts.append(f"{coefficient}*{monomial}")
        return " + ".join(parts) if parts else "0"


def _check_compatible(f: PolyVec, g: PolyVec):
    if f.field != g.field or f.n != g.n:
        raise PreconditionError("forms live in different polynomial rings")


def variable(field: FieldSpec, n: int, i: int) -> PolyVec:
    """The coordinate form x_i."""
    if not 0 <= i <= n:
        raise PreconditionError(f"no variable x{i} in {n + 1} variables")
    coeffs = np.zeros(n + 1, dtype=np.int64)
    coeffs[i] = 1
    return PolyVec(field, n, 1, coeffs)


def linear_form(field: FieldSpec, n: int, coefficients: Sequence[int]) -> PolyVec:
    """sum_i coefficients[i] * x_i."""
    return PolyVec(field, n, 1, field.reduce(list(coefficients)))


def mult_by_linear(f: PolyVec, linear: PolyVec) -> PolyVec:
    """The product L·f in degree f.degree + 1."""
    _check_compatible(f, linear)
    if linear.degree != 1:
        raise PreconditionError(f"expected a linear form, got degree {linear.degree}")
    prime = f.field.prime
    out = np.zeros(comb(f.n + f.degree + 1, f.n), dtype=np.int64)
    for i in np.flatnonzero(linear.coeffs):
        out[shift_indices(f.n, f.degree, int(i))] += (f.coeffs * int(linear.coeffs[i])) % prime
        out %= prime
    return PolyVec(f.field, f.n, f.degree + 1, out)


def multiplication_matrix(f: PolyVec, s: int) -> Matrix:
    """Matrix of g ↦ f·g from S_s to S_{s + deg f}."""
    if s < 0:
        raise PreconditionError(f"negative degree {s}")
    prime = f.field.prime
    source = _exponent_array(f.n, s)
    entries = np.zeros((comb(f.n + s + f.degree, f.n), source.shape[0]), dtype=np.int64)
    columns = np.arange(source.shape[0])
    exponents = _exponent_array(f.n, f.degree)
    for j in np.flatnonzero(f.coeffs):
        rows = rank_exponents(source + exponents[j])
        entries[rows, columns] = (entries[rows, columns] + int(f.coeffs[j])) % prime
    return Matrix(f.field, entries)


def multiply(f: PolyVec, g: PolyVec) -> PolyVec:
    _check_compatible(f, g)
    prime = f.field.prime
    out = np.zeros(comb(f.n + f.degree + g.degree, f.n), dtype=np.int64)
    source = _exponent_array(g.n, g.degree)
    exponents = _exponent_array(f.n, f.degree)
    for j in np.flatnonzero(f.coeffs):
        rows = rank_exponents(source + exponents[j])
        out[rows] = (out[rows] + g.coeffs * int(f.coeffs[j])) % prime
    return PolyVec(f.field, f.n, f.degree + g.degree, out)


def power_table(field: FieldSpec, coordinates: np.ndarray, t: int) -> np.ndarray:
    """powers[e, ...] = coordinates ** e mod p for e = 0..t."""
    prime = field.prime
    coordinates = np.asarray(coordinates, dtype=np.int64) % prime
    powers = np.empty((t + 1, *coordinates.shape), dtype=np.int64)
    powers[0] = 1
    for e in range(1, t + 1):
        powers[e] = (powers[e - 1] * coordinates) % prime
    return powers


def monomial_values(field: FieldSpec, coordinates: np.ndarray, t: int) -> np.ndarray:
    """
    Values of every monomial of S_t at each row of ``coordinates``.

    Returns an array of shape (points, C(n+t, n)).
    """
    coordinates = np.atleast_2d(np.asarray(coordinates, dtype=np.int64))
    n = coordinates.shape[1] - 1
    exponents = _exponent_array(n, t)
    powers = power_table(field, coordinates, t)
    values = np.ones((coordinates.shape[0], exponents.shape[0]), dtype=np.int64)
    for i in range(n + 1):
        values = (values * powers[exponents[:, i], :, i].T) % field.prime
    return values


def evaluate(f: PolyVec, point: Sequence[int]) -> int:
    if len(point) != f.n + 1:
        raise PreconditionError(f"point {tuple(point)} has the wrong number of coordinates")
    values = monomial_values(f.field, np.array([list(point)]), f.degree)[0]
    return int(np.sum((values * f.coeffs) % f.field.prime) % f.field.prime)


def partial(f: PolyVec, i: int) -> PolyVec:
    """The derivative ∂f/∂x_i."""
    if not 0 <= i <= f.n:
        raise PreconditionError(f"no variable x{i} in {f.n + 1} variables")
    if f.degree == 0:
        raise PreconditionError("the derivative of a constant has no degree")
    exponents = _exponent_array(f.n, f.degree)
    mask = exponents[:, i] > 0
    lowered = exponents[mask].copy()
    lowered[:, i] -= 1
    out = np.zeros(comb(f.n + f.degree - 1, f.n), dtype=np.int64)
    out[rank_exponents(lowered)] = (f.coeffs[mask] * exponents[mask, i]) % f.field.prime
    return PolyVec(f.field, f.n, f.degree - 1, out)
