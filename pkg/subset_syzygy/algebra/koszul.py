"""
Koszul differentials d_{p,q}: Λ^p S_1 ⊗ I_q → Λ^{p-1} S_1 ⊗ I_{q+1} of a
point ideal and the graded Betti numbers they compute:

    β_{p,p+q} = dim ker d_{p,q} - rank d_{p+1,q-1},   d_{0,·} = 0.
"""

import logging
import threading
import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Optional

import numpy as np

from subset_syzygy.algebra.exactfield import FieldSpec, Matrix, rank, rank_all
from subset_syzygy.algebra.pointideal import (
    GradedBasis,
    HilbertTable,
    PointSet,
    hilbert,
    ideal_basis,
)
from subset_syzygy.algebra.polyspace import shift_indices
from subset_syzygy.config import WORKERS

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WedgeBasis:
    """Strictly increasing index tuples of Λ^p S_1 in lexicographic order."""

    n: int
    p: int
    tuples: tuple[tuple[int, ...], ...]
    positions: dict = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.tuples)

    def index(self, indices: tuple[int, ...]) -> int:
        return self.positions[indices]


@lru_cache(maxsize=None)
def wedge_basis(n: int, p: int) -> WedgeBasis:
    tuples = tuple(combinations(range(n + 1), p)) if p >= 0 else ()
    return WedgeBasis(n, p, tuples, {t: i for i, t in enumerate(tuples)})


@dataclass(frozen=True)
class KoszulSlice:
    """One differential d_{p,q} with its rank."""

    p: int
    q: int
    matrix: Matrix
    source_dim: int
    target_dim: int
    rank: int

    @property
    def kernel_dim(self) -> int:
        return self.source_dim - self.rank


def koszul_matrix(
    field: FieldSpec, n: int, p: int, source: GradedBasis, target: GradedBasis
) -> Matrix:
    """
    Matrix of d_{p,q} in the bases Λ^p ⊗ source and Λ^{p-1} ⊗ target.

    Columns are (wedge tuple, source element) pairs in lexicographic product
    order, rows likewise. d(e_{i_1}∧…∧e_{i_p} ⊗ f) = Σ_k (-1)^{p-k}
    e_{…î_k…} ⊗ x_{i_k}·f with k counted from 1.
    """
    prime = field.prime
    upper, lower = wedge_basis(n, p), wedge_basis(n, p - 1)
    width, height = len(source), len(target)
    entries = np.zeros((len(lower) * height, len(upper) * width), dtype=np.int64)
    if width == 0 or height == 0:
        return Matrix(field, entries)
    q = source.t
    blocks = []
    for i in range(n + 1):
        shifted = np.zeros((width, comb(n + q + 1, n)), dtype=np.int64)
        shifted[:, shift_indices(n, q, i)] = source.vectors.entries
        blocks.append(np.ascontiguousarray(target.coordinates(shifted).T))
    negated = [(-block) % prime for block in blocks]
    for column, indices in enumerate(upper.tuples):
        for k, variable in enumerate(indices, start=1):
            row = lower.index(indices[: k - 1] + indices[k:])
            block = blocks[variable] if (p - k) % 2 == 0 else negated[variable]
            entries[
                row * height : (row + 1) * height, column * width : (column + 1) * width
            ] = block
    return Matrix(field, entries)


class KoszulComplex:
    """
    Koszul cohomology of one point set, with cached ideal bases and ranks.

    Rows q >= l + 2 (l the stabilization degree) are exact because I(X) is
    (l+1)-regular; kernels there are derived from the neighbouring image
    instead of building the large matrices.
    """

    def __init__(self, X: PointSet, workers: Optional[int] = None):
        self.points = X
        self.n = X.n
        self.field = X.field
        self.hilbert: HilbertTable = hilbert(X)
        self.regularity = self.hilbert.stabilization + 1
        self.workers = workers or WORKERS
        self._ideals: dict[int, GradedBasis] = {}
        self._ranks: dict[tuple[int, int], int] = {}
        self._lock = threading.Lock()

    def ideal_dim(self, t: int) -> int:
        return self.hilbert.ideal_dim(t)

    def source_dim(self, p: int, q: int) -> int:
        if p < 0 or p > self.n + 1 or q < 0:
            return 0
        return comb(self.n + 1, p) * self.ideal_dim(q)

    def target_dim(self, p: int, q: int) -> int:
        return self.source_dim(p - 1, q + 1)

    def ideal(self, t: int) -> GradedBasis:
        with self._lock:
            if t not in self._ideals:
                self._ideals[t] = ideal_basis(self.points, t)
            return self._ideals[t]

    def matrix(self, p: int, q: int) -> Matrix:
        return koszul_matrix(self.field, self.n, p, self.ideal(q), self.ideal(q + 1))

    def slice(self, p: int, q: int) -> KoszulSlice:
        matrix = self.matrix(p, q)
        return KoszulSlice(
            p, q, matrix, self.source_dim(p, q), self.target_dim(p, q), self.rank(p, q)
        )

    def _is_trivial(self, p: int, q: int) -> bool:
        return p < 1 or self.source_dim(p, q) == 0 or self.target_dim(p, q) == 0

    def rank(self, p: int, q: int) -> int:
        """rank d_{p,q}, always computed from the matrix."""
        if self._is_trivial(p, q):
            return 0
        with self._lock:
            cached = self._ranks.get((p, q))
        if cached is not None:
            return cached
        started = time.perf_counter()
        matrix = self.matrix(p, q)
        value = rank(matrix)
        logger.info(
            "koszul rank p=%s q=%s rows=%s cols=%s rank=%s seconds=%.3f",
            p,
            q,
            matrix.rows,
            matrix.cols,
            value,
            time.perf_counter() - started,
        )
        with self._lock:
            self._ranks[(p, q)] = value
        return value

    def exact_rank(self, p: int, q: int) -> int:
        """rank d_{p,q}, derived from exactness for q >= l + 2."""
        if self._is_trivial(p, q):
            return 0
        if q >= self.regularity + 1:
            return self.source_dim(p, q) - self.kernel_dim(p, q)
        return self.rank(p, q)

    def kernel_dim(self, p: int, q: int) -> int:
        if p == 0:
            return self.ideal_dim(q)
        if q >= self.regularity + 1:
            return self.exact_rank(p + 1, q - 1)
        return self.source_dim(p, q) - self.rank(p, q)

    def compute_ranks(self, pairs: Iterable[tuple[int, int]]):
        """Compute the missing ranks of ``pairs`` concurrently."""
        with self._lock:
            known = set(self._ranks)
        missing = sorted({pair for pair in pairs if not self._is_trivial(*pair)} - known)
        if not missing:
            return
        started = time.perf_counter()
        matrices = [self.matrix(p, q) for p, q in missing]
        values = rank_all(matrices, self.workers)
        with self._lock:
            self._ranks.update(zip(missing, values))
        logger.info(
            "koszul ranks pairs=%s seconds=%.3f", missing, time.perf_counter() - started
        )


def koszul_differential(X: PointSet, p: int, q: int) -> KoszulSlice:
    return KoszulComplex(X).slice(p, q)


@dataclass(frozen=True)
class BettiTable:
    """Nonzero graded Betti numbers β_{p,j} of I(X)."""

    n: int
    d: int
    entries: dict[tuple[int, int], int]

    def get(self, p: int, twist: int) -> int:
        return self.entries.get((p, twist), 0)

    def sorted_entries(self) -> list[tuple[int, int, int]]:
        return [(p, j, beta) for (p, j), beta in sorted(self.entries.items())]

    def generator_twists(self) -> list[int]:
        return _twists(self, 0)

    def syzygy_twists(self) -> list[int]:
        return _twists(self, 1)

    def homological_degrees(self) -> list[int]:
        return sorted({p for p, _ in self.entries})

    def diagram(self) -> str:
        """Betti diagram: columns p, rows j - p, "." for zero."""
        if not self.entries:
            return "total: 0"
        columns = range(max(p for p, _ in self.entries) + 1)
        rows = sorted({j - p for p, j in self.entries})
        totals = [sum(b for (p, _), b in self.entries.items() if p == c) for c in columns]
        cells = [[str(c) for c in columns], [str(t) for t in totals]]
        cells += [[str(self.get(c, r + c) or ".") for c in columns] for r in rows]
        width = max(len(cell) for line in cells for cell in line)
        labels = [""] + ["total:"] + [f"{r}:" for r in rows]
        label_width = max(len(label) for label in labels)
        return "\n".join(
            label.rjust(label_width) + " " + " ".join(cell.rjust(width) for cell in line)
            for label, line in zip(labels, cells)
        )


def _twists(table: BettiTable, p: int) -> list[int]:
    twists: list[int] = []
    for (q, j), beta in sorted(table.entries.items()):
        if q == p:
            twists += [j] * beta
    return sorted(twists, reverse=True)


def graded_betti(
    X: PointSet,
    twists: Optional[Iterable[int]] = None,
    complex: Optional[KoszulComplex] = None,
) -> BettiTable:
    """
    Betti table of I(X) for q in [initial degree, l + 1]; restricted to the
    given twists j = p + q when ``twists`` is set.
    """
    complex = complex or KoszulComplex(X)
    wanted = None if twists is None else set(twists)
    start = complex.hilbert.initial_degree
    cells = [
        (p, q)
        for q in range(start, complex.regularity + 1)
        for p in range(complex.n)
        if wanted is None or p + q in wanted
    ]
    complex.compute_ranks([pair for p, q in cells for pair in ((p, q), (p + 1, q - 1))])
    entries = {}
    for p, q in cells:
        beta = complex.kernel_dim(p, q) - complex.rank(p + 1, q - 1)
        if beta:
            entries[(p, p + q)] = beta
    return BettiTable(X.n, len(X), entries)


def mu_rank(X: PointSet, s: int, complex: Optional[KoszulComplex] = None) -> int:
    """rank of μ_s: S_1 ⊗ I(X)_s → I(X)_{s+1}, which is d_{1,s}."""
    return (complex or KoszulComplex(X)).rank(1, s)


def ideal_dim_from_betti(table: BettiTable, t: int) -> int:
    """Σ_p (-1)^p Σ_j β_{p,j}·C(n+t-j, n): equals dim I(X)_t for a full table."""
    n = table.n
    return sum(
        (-1) ** p * beta * (comb(n + t - j, n) if t - j >= 0 else 0)
        for (p, j), beta in table.entries.items()
    )
