"""
Prime field arithmetic and dense exact linear algebra over GF(p).

Matrices are carried as read-only ``numpy.int64`` arrays with entries in
``[0, p)``. Since ``p < 2**31`` every product of two residues fits in a
machine word, so row operations never overflow.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np
from sympy import isprime

from subset_syzygy.config import DEFAULT_PRIME, MAX_PRIME, RANK_PANEL_WIDTH, WORKERS
from subset_syzygy.errors import InvalidFieldError, PreconditionError

logger = logging.getLogger(__name__)

_FLOAT_EXACT = 2**53
_INT_EXACT = 2**63 - 1


@dataclass(frozen=True)
class FieldSpec:
    """The prime field GF(prime)."""

    prime: int = DEFAULT_PRIME

    def __post_init__(self):
        if not isinstance(self.prime, int) or isinstance(self.prime, bool):
            raise InvalidFieldError(f"modulus {self.prime!r} is not an integer")
        if self.prime < 3:
            raise InvalidFieldError(
                f"modulus {self.prime} rejected: characteristic 2 and below are not supported"
            )
        if self.prime > MAX_PRIME:
            raise InvalidFieldError(
                f"modulus {self.prime} exceeds the single word bound {MAX_PRIME}"
            )
        if not isprime(self.prime):
            raise InvalidFieldError(f"modulus {self.prime} is not prime")

    def reduce(self, values) -> np.ndarray:
        """Reduce integers (or an array of them) into ``[0, prime)``."""
        return np.asarray(
            np.mod(np.asarray(values, dtype=object), self.prime), dtype=np.int64
        )

    def inverse(self, value: int) -> int:
        value = int(value) % self.prime
        if value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(value, -1, self.prime)


@dataclass(frozen=True, eq=False)
class Matrix:
    """A dense matrix over ``field``; ``entries`` has shape (rows, cols)."""

    field: FieldSpec
    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=np.int64, copy=True)
        if entries.ndim != 2:
            raise PreconditionError(f"matrix entries must be 2-dimensional, got {entries.ndim}")
        entries %= self.field.prime
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(
        cls, field: FieldSpec, rows: Iterable[Sequence[int]], cols: Optional[int] = None
    ) -> "Matrix":
        data = [list(row) for row in rows]
        if not data:
            return cls.zeros(field, 0, cols or 0)
        widths = {len(row) for row in data}
        if len(widths) != 1:
            raise PreconditionError("rows have different lengths")
        return cls(field, field.reduce(data).reshape(len(data), widths.pop()))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __len__(self) -> int:
        return self.rows

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.entries.shape == other.entries.shape
            and bool(np.array_equal(self.entries, other.entries))
        )

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.entries.T)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise PreconditionError("matrices live over different fields")
        if self.cols != other.rows:
            raise PreconditionError(
                f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}"
            )
        return Matrix(
            self.field, matmul_mod(self.entries, other.entries, self.field.prime)
        )

    def is_zero(self) -> bool:
        return not self.entries.any()


def matmul_mod(left: np.ndarray, right: np.ndarray, prime: int) -> np.ndarray:
    """
    Exact product of two reduced integer arrays modulo ``prime``.

    The inner dimension is cut into chunks small enough that every partial
    sum is exact: in float64 (BLAS) while the chunk sum stays below 2**53,
    otherwise in int64.
    """
    inner = left.shape[1]
    out = np.zeros((left.shape[0], right.shape[1]), dtype=np.int64)
    if inner == 0 or out.size == 0:
        return out
    bound = (prime - 1) ** 2
    float_step = _FLOAT_EXACT // bound if bound else inner
    use_float = float_step >= 1
    step = float_step if use_float else max(1, _INT_EXACT // bound)
    for start in range(0, inner, step):
        a = left[:, start : start + step]
        b = right[start : start + step]
        if use_float:
            block = (a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
        else:
            block = a @ b
        out = (out + block % prime) % prime
    return out


def _factor_panel(panel: np.ndarray, prime: int):
    """
    Unblocked elimination of one column panel with row pivoting.

    Returns the pivot count, the row permutation and the panel after
    elimination with multipliers stored below each pivot.
    """
    panel = panel.copy()
    height, width = panel.shape
    perm = np.arange(height)
    pivots: list[int] = []
    k = 0
    for j in range(width):
        if k == height:
            break
        nonzero = np.flatnonzero(panel[k:, j])
        if nonzero.size == 0:
            continue
        row = k + int(nonzero[0])
        if row != k:
            panel[[k, row]] = panel[[row, k]]
            perm[[k, row]] = perm[[row, k]]
        inverse = pow(int(panel[k, j]), -1, prime)
        multipliers = (panel[k + 1 :, j] * inverse) % prime
        if j + 1 < width and multipliers.any():
            panel[k + 1 :, j + 1 :] = (
                panel[k + 1 :, j + 1 :] - np.outer(multipliers, panel[k, j + 1 :]) % prime
            ) % prime
        panel[k + 1 :, j] = multipliers
        pivots.append(j)
        k += 1
    return k, perm, panel, pivots


def rank(matrix: Matrix, panel_width: int = RANK_PANEL_WIDTH) -> int:
    """
    Rank of ``matrix`` over its field.

    Blocked right-looking elimination: each column panel is factored
    unblocked, then the rows below its pivots are updated with a single
    exact product ``trailing -= L21 @ U12``. Deterministic.
    """
    prime = matrix.field.prime
    work = np.array(matrix.entries, dtype=np.int64)
    total = 0
    limit = min(work.shape)
    while work.shape[0] and work.shape[1] and total < limit:
        width = min(panel_width, work.shape[1])
        k, perm, panel, pivots = _factor_panel(work[:, :width], prime)
        trailing = work[perm, width:]
        if k == 0:
            work = trailing
            continue
        lower = panel[:, pivots]
        upper = trailing[:k].copy()
        for i in range(1, k):
            coeffs = lower[i, :i]
            if coeffs.any():
                upper[i] = (upper[i] - matmul_mod(coeffs[None, :], upper[:i], prime)[0]) % prime
        work = (trailing[k:] - matmul_mod(lower[k:], upper, prime)) % prime
        total += k
    logger.debug("rank rows=%s cols=%s rank=%s", matrix.rows, matrix.cols, total)
    return total


def rref(matrix: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and its pivot columns."""
    prime = matrix.field.prime
    work = np.array(matrix.entries, dtype=np.int64)
    rows, cols = work.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.flatnonzero(work[r:, c])
        if nonzero.size == 0:
            continue
        row = r + int(nonzero[0])
        if row != r:
            work[[r, row]] = work[[row, r]]
        work[r] = (work[r] * pow(int(work[r, c]), -1, prime)) % prime
        factors = work[:, c].copy()
        factors[r] = 0
        targets = np.flatnonzero(factors)
        if targets.size:
            work[targets] = (
                work[targets] - np.outer(factors[targets], work[r]) % prime
            ) % prime
        pivots.append(c)
        r += 1
    return Matrix(matrix.field, work), tuple(pivots)


def nullspace(matrix: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """
    Right null space basis (as rows) together with the free columns.

    Each basis vector is 1 at its own free column and 0 at every other free
    column, so the coordinates of any element of the span are its entries at
    the free columns.
    """
    reduced, pivots = rref(matrix)
    pivot_set = set(pivots)
    free = tuple(c for c in range(matrix.cols) if c not in pivot_set)
    prime = matrix.field.prime
    basis = np.zeros((len(free), matrix.cols), dtype=np.int64)
    if free:
        basis[np.arange(len(free)), list(free)] = 1
        if pivots:
            block = reduced.entries[: len(pivots)][:, list(free)]
            basis[:, list(pivots)] = (-block.T) % prime
    return Matrix(matrix.field, basis), free


def kernel_basis(matrix: Matrix) -> Matrix:
    """Basis of the right null space, one vector per row, echelon normalized."""
    return nullspace(matrix)[0]


def rank_all(matrices: Sequence[Matrix], workers: Optional[int] = None) -> list[int]:
    """Ranks of independent matrices on a thread pool, in input order."""
    if not matrices:
        return []
    with ThreadPoolExecutor(max_workers=max(1, workers or WORKERS)) as pool:
        return list(pool.map(rank, matrices))
