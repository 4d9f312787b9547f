"""
Subsets that realise predictions: greedy subsets with truncated Hilbert
function, chained single point removals in P^2 that keep every
multiplication map at its predicted rank, and exhaustive enumeration.
"""

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional, Sequence

import numpy as np

from subset_syzygy.algebra.exactfield import matmul_mod
from subset_syzygy.algebra.koszul import KoszulComplex
from subset_syzygy.algebra.pointideal import HilbertTable, PointSet, hilbert, ideal_basis
from subset_syzygy.algebra.polyspace import monomial_values
from subset_syzygy.config import ENUMERATE_BUDGET, WORKERS
from subset_syzygy.errors import BudgetExceededError, InvariantError, PreconditionError

logger = logging.getLogger(__name__)


class SubsetOracle:
    """Per-subset Koszul data of one point set, keyed by sorted indices."""

    def __init__(self, X: PointSet, workers: Optional[int] = None):
        self.points = X
        self.workers = workers or WORKERS
        self._complexes: dict[tuple[int, ...], KoszulComplex] = {}
        self._lock = threading.Lock()

    def complex(self, indices: Sequence[int]) -> KoszulComplex:
        key = tuple(sorted(indices))
        with self._lock:
            found = self._complexes.get(key)
        if found is None:
            found = KoszulComplex(self.points.subset(key), workers=1)
            with self._lock:
                found = self._complexes.setdefault(key, found)
        return found

    def hilbert(self, indices: Sequence[int]) -> HilbertTable:
        return self.complex(indices).hilbert

    def mu_rank(self, indices: Sequence[int], s: int) -> int:
        return self.complex(indices).rank(1, s)


def critical_degree(X: PointSet, table: Optional[HilbertTable] = None) -> int:
    """The smallest positive t with h_X(t) = |X|."""
    table = table or hilbert(X)
    return max(1, table.stabilization)


def is_truncated(table: HilbertTable, original: HilbertTable) -> bool:
    """True when ``table`` equals min{original, size} in every degree."""
    through = max(len(table.values), len(original.values))
    return all(
        table.value(t) == min(original.value(t), table.degree) for t in range(through)
    )


def _base_locus_escapees(X: PointSet, chosen: Sequence[int], t: int) -> list[int]:
    """Points of X outside the base locus of I(chosen)_t, in index order."""
    basis = ideal_basis(X.subset(chosen), t)
    if len(basis) == 0:
        return []
    values = monomial_values(X.field, X.coordinates, t)
    evaluations = matmul_mod(values, basis.vectors.entries.T, X.field.prime)
    return [int(i) for i in np.flatnonzero(evaluations.any(axis=1))]


def greedy_truncated_order(
    X: PointSet, e: int, order: Optional[Sequence[int]] = None
) -> tuple[int, ...]:
    """
    Indices of a subset of size e with Hilbert function min{h_X, e}.

    Builds up point by point: with t the first degree in which the current
    subset imposes fewer conditions than X, the next point is the first one
    (in ``order``) where some form of I(current)_t does not vanish.
    """
    if not 1 <= e <= len(X):
        raise PreconditionError(f"subset size {e} must satisfy 1 <= e <= {len(X)}")
    order = list(range(len(X))) if order is None else list(order)
    if sorted(order) != list(range(len(X))):
        raise PreconditionError("order must be a permutation of the point indices")
    target = hilbert(X)
    chosen = [order[0]]
    while len(chosen) < e:
        current = hilbert(X.subset(chosen))
        t = next(t for t in range(target.stabilization + 1) if current.value(t) < target.value(t))
        escapees = set(_base_locus_escapees(X, chosen, t))
        candidate = next((i for i in order if i in escapees and i not in chosen), None)
        if candidate is None:
            raise InvariantError(
                f"no point of X escapes the base locus of I(Y)_{t} for |Y| = {len(chosen)}"
            )
        chosen.append(candidate)
    return tuple(chosen)


def greedy_truncated_subset(
    X: PointSet, e: int, order: Optional[Sequence[int]] = None
) -> PointSet:
    return X.subset(greedy_truncated_order(X, e, order))


def is_truncated_sequence(X: PointSet, order: Sequence[int]) -> bool:
    """True when every prefix of ``order`` has the truncated Hilbert function."""
    original = hilbert(X)
    return all(
        is_truncated(hilbert(X.subset(order[:size])), original)
        for size in range(1, len(order) + 1)
    )


def min_gens(X: PointSet, t: int, complex: Optional[KoszulComplex] = None) -> int:
    """Minimal generators of I(X) in degree t: dim I_t - rank μ_{t-1}."""
    if t < 1:
        raise PreconditionError(f"generator degree {t} must be positive")
    complex = complex or KoszulComplex(X)
    return complex.ideal_dim(t) - complex.rank(1, t - 1)


@dataclass(frozen=True)
class CaseLabel:
    l: int  # noqa: E741
    gens_at_lplus1: int
    case: int


def classify_case(X: PointSet, complex: Optional[KoszulComplex] = None) -> CaseLabel:
    """Case 1, 2, 3 or 4 for 0, 1, 2 or at least 3 generators in degree l + 1."""
    if X.n != 2:
        raise PreconditionError(f"case classification is for P^2, not P^{X.n}")
    complex = complex or KoszulComplex(X)
    l = critical_degree(X, complex.hilbert)  # noqa: E741
    gens = min_gens(X, l + 1, complex)
    return CaseLabel(l, gens, min(gens, 3) + 1)


def artinian_drop(X: PointSet, index: int) -> int:
    """The degree j0 where Δh drops by one when the point ``index`` is removed."""
    before = hilbert(X)
    after = hilbert(X.without(index))
    differences = [
        before.delta(t) - after.delta(t) for t in range(len(before.values) + 1)
    ]
    drops = [t for t, value in enumerate(differences) if value]
    if len(drops) != 1 or differences[drops[0]] != 1:
        raise InvariantError(
            f"removing points[{index}] changed Δh by {differences}, expected a single 1"
        )
    return drops[0]


@dataclass(frozen=True)
class RankCheck:
    s: int
    predicted: int
    actual: int

    @property
    def match(self) -> bool:
        return self.predicted == self.actual


@dataclass(frozen=True)
class ChainStep:
    removed: int
    subset: tuple[int, ...]
    truncated: bool
    checks: tuple[RankCheck, ...]
    original_checks: tuple[RankCheck, ...]

    @property
    def ok(self) -> bool:
        return self.truncated and all(
            check.match for check in self.checks + self.original_checks
        )


@dataclass(frozen=True)
class SubsetChain:
    m: int
    found: bool
    steps: tuple[ChainStep, ...]
    subset: tuple[int, ...]
    explored: int
    verification: tuple[RankCheck, ...]


def _predicted_rank(
    parent: KoszulComplex, child: KoszulComplex, s: int
) -> int:
    return min(
        child.ideal_dim(s + 1),
        parent.rank(1, s) + 3 * child.ideal_dim(s) - 3 * parent.ideal_dim(s),
    )


def _rank_checks(
    parent: KoszulComplex, child: KoszulComplex, through: int
) -> tuple[RankCheck, ...]:
    start = child.hilbert.initial_degree
    return tuple(
        RankCheck(s, _predicted_rank(parent, child, s), child.rank(1, s))
        for s in range(start, through + 1)
    )


def find_subset(
    X: PointSet, m: int, budget: Optional[int] = None, workers: Optional[int] = None
) -> SubsetChain:
    """
    Remove points one at a time, in file order with backtracking, until m
    remain, keeping every link at its predicted multiplication map ranks.

    Each link Z ⊂ Z' is checked for s from the initial degree of I(Z) to
    l(Z') + 1, where l is the critical degree, both relative to Z' and
    relative to X; the final subset is then re-verified against X.
    ``found`` is False when every removal order fails.
    """
    if X.n != 2:
        raise PreconditionError(f"the subset search is for P^2, not P^{X.n}")
    if not 1 <= m < len(X):
        raise PreconditionError(f"subset size {m} must satisfy 1 <= m < {len(X)}")
    oracle = SubsetOracle(X, workers)
    full = oracle.complex(range(len(X)))
    original = full.hilbert
    original_through = critical_degree(X, original) + 1
    steps: list[ChainStep] = []
    failed: set[tuple[int, ...]] = set()
    explored = 0

    def descend(current: tuple[int, ...]) -> bool:
        nonlocal explored
        if len(current) == m:
            return True
        parent = oracle.complex(current)
        through = critical_degree(parent.points, parent.hilbert) + 1
        for index in current:
            candidate = tuple(i for i in current if i != index)
            if candidate in failed:
                continue
            if budget is not None and explored >= budget:
                raise BudgetExceededError(
                    f"subset search explored {explored} candidates without finishing"
                )
            explored += 1
            child = oracle.complex(candidate)
            step = ChainStep(
                index,
                candidate,
                is_truncated(child.hilbert, original),
                _rank_checks(parent, child, through),
                _rank_checks(full, child, original_through),
            )
            if step.ok:
                steps.append(step)
                if descend(candidate):
                    return True
                steps.pop()
                failed.add(candidate)
                logger.info("subset search backtrack removed=%s size=%s", index, len(current))
        return False

    found = descend(tuple(range(len(X))))
    subset = steps[-1].subset if found and steps else tuple(range(len(X)))
    verification: tuple[RankCheck, ...] = ()
    if found:
        verification = _rank_checks(full, oracle.complex(subset), original_through)
        if not all(check.match for check in verification):
            raise InvariantError(
                f"chain ending in {subset} passed every link but fails against X"
            )
    else:
        logger.warning("subset search exhausted every removal order m=%s d=%s", m, len(X))
    return SubsetChain(m, found, tuple(steps), subset, explored, verification)


@dataclass(frozen=True)
class SubsetRecord:
    subset: tuple[int, ...]
    truncated: bool
    ranks: dict[int, int]
    gens_at_lplus1: int
    matches_prediction: Optional[bool]


def enumerate_subsets(
    X: PointSet, m: int, budget: int = ENUMERATE_BUDGET, workers: Optional[int] = None
) -> list[SubsetRecord]:
    """
    Every m-subset with its μ-ranks for s in [initial degree, l + 1] of X,
    its Hilbert function status and, in P^2, whether the ranks equal the
    predicted ones.
    """
    if not 1 <= m < len(X):
        raise PreconditionError(f"subset size {m} must satisfy 1 <= m < {len(X)}")
    total = comb(len(X), m)
    if total > budget:
        raise BudgetExceededError(
            f"C({len(X)}, {m}) = {total} subsets exceed the budget of {budget}"
        )
    oracle = SubsetOracle(X, workers)
    full = oracle.complex(range(len(X)))
    l = critical_degree(X, full.hilbert)  # noqa: E741

    def record(indices: tuple[int, ...]) -> SubsetRecord:
        child = oracle.complex(indices)
        start = child.hilbert.initial_degree
        ranks = {s: child.rank(1, s) for s in range(start, l + 2)}
        truncated = is_truncated(child.hilbert, full.hilbert)
        matches = None
        if X.n == 2:
            matches = truncated and all(
                ranks[s] == _predicted_rank(full, child, s) for s in ranks
            )
        return SubsetRecord(
            indices, truncated, ranks, min_gens(child.points, l + 1, child), matches
        )

    with ThreadPoolExecutor(max_workers=oracle.workers) as pool:
        return list(pool.map(record, combinations(range(len(X)), m)))
