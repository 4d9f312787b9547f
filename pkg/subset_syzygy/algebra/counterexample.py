"""
The 11-from-22 points of P^6 where the generic subset guess fails, and a
seeded batch harness that tests the guess on random instances.
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Optional, Sequence

from subset_syzygy.algebra.exactfield import FieldSpec
from subset_syzygy.algebra.koszul import BettiTable, KoszulComplex, graded_betti
from subset_syzygy.algebra.pointideal import PointSet, sample_generic_points
from subset_syzygy.algebra.predictor import guess_ranks
from subset_syzygy.algebra.subsetsearch import find_subset
from subset_syzygy.config import DEFAULT_PRIME, DEFAULT_SEED, EXPERIMENT_BUDGET
from subset_syzygy.errors import SyzygyError

logger = logging.getLogger(__name__)

PROJECTIVE_DIM = 6
FULL_SIZE = 22
SUBSET_SIZE = 11
TWIST = 5

# (p, q) of the maps in 0 -> Λ^3 ⊗ I_2 -> Λ^2 ⊗ I_3 -> Λ^1 ⊗ I_4 -> I_5 -> 0
WINDOW = ((3, 2), (2, 3), (1, 4))

REFERENCE_DIMS22 = (210, 1302, 1316, 440)
REFERENCE_RANKS22 = (210, 876, 440)
REFERENCE_DIMS11 = (595, 1533, 1393, 451)
REFERENCE_PREDICTED11 = (0, 4)
REFERENCE_ACTUAL11 = (1, 5)
REFERENCE_MRC11 = {
    (0, 2): 17,
    (1, 3): 46,
    (2, 4): 45,
    (3, 5): 4,
    (3, 6): 25,
    (4, 7): 18,
    (5, 8): 4,
}
REFERENCE_BETTI11 = {
    (0, 2): 17,
    (1, 3): 46,
    (2, 4): 45,
    (2, 5): 1,
    (3, 5): 5,
    (3, 6): 25,
    (4, 7): 18,
    (5, 8): 4,
}
REFERENCE_BETTI22 = {
    (0, 2): 6,
    (0, 3): 20,
    (1, 4): 120,
    (2, 5): 216,
    (3, 6): 190,
    (4, 7): 84,
    (5, 8): 15,
}


@dataclass(frozen=True)
class CounterexampleReport:
    """
    Computed values of the twist 5 window next to the reference values.

    ``agreement`` flags each comparison; a False flag is data, not an error.
    """

    seed: int
    prime: int
    resamples: int
    dims22: tuple[int, ...]
    ranks22: tuple[int, ...]
    beta25_22: int
    dims11: tuple[int, ...]
    predicted_ranks11: tuple[int, ...]
    actual_ranks11: tuple[int, ...]
    bindings11: tuple[str, ...]
    predicted_betti11: tuple[int, int]
    actual_betti11: tuple[int, int]
    agreement: dict[str, bool]
    full22: Optional[BettiTable] = None
    full11: Optional[BettiTable] = None

    @property
    def guess_fails(self) -> bool:
        return self.predicted_betti11 != self.actual_betti11


def _window_dims(complex: KoszulComplex) -> tuple[int, ...]:
    return tuple(complex.source_dim(p, q) for p, q in WINDOW) + (complex.ideal_dim(TWIST),)


def _window_ranks(complex: KoszulComplex) -> tuple[int, ...]:
    return tuple(complex.exact_rank(p, q) for p, q in WINDOW)


def run_counterexample(
    seed: int = DEFAULT_SEED,
    prime: int = DEFAULT_PRIME,
    full: bool = False,
    workers: Optional[int] = None,
) -> CounterexampleReport:
    """
    Sample 22 certified generic points of P^6, take the first 11 as the
    subset and compare the guess with the actual resolution at twist 5.
    """
    X, resamples = sample_generic_points(PROJECTIVE_DIM, FULL_SIZE, FieldSpec(prime), seed)
    Y = X.subset(range(SUBSET_SIZE))
    big = KoszulComplex(X, workers)
    small = KoszulComplex(Y, workers)
    big.compute_ranks(WINDOW[:2])
    small.compute_ranks(WINDOW[:2])

    guess = guess_ranks(X, SUBSET_SIZE, twists=[TWIST], complex=big)
    actual = graded_betti(Y, twists=[TWIST], complex=small)
    beta25_22 = graded_betti(X, twists=[TWIST], complex=big).get(2, TWIST)

    predicted_betti = (guess.derived_betti.get(2, TWIST), guess.derived_betti.get(3, TWIST))
    actual_betti = (actual.get(2, TWIST), actual.get(3, TWIST))
    dims22, ranks22 = _window_dims(big), _window_ranks(big)
    dims11 = _window_dims(small)
    agreement = {
        "dims22": dims22 == REFERENCE_DIMS22,
        "ranks22": ranks22 == REFERENCE_RANKS22,
        "beta25_22": beta25_22 == REFERENCE_BETTI22[(2, TWIST)],
        "dims11": dims11 == REFERENCE_DIMS11,
        "predicted_betti11": predicted_betti == REFERENCE_PREDICTED11,
        "actual_betti11": actual_betti == REFERENCE_ACTUAL11,
        "guess_equals_mrc": predicted_betti
        == (REFERENCE_MRC11.get((2, TWIST), 0), REFERENCE_MRC11.get((3, TWIST), 0)),
    }
    full22 = full11 = None
    if full:
        full22 = graded_betti(X, complex=big)
        full11 = graded_betti(Y, complex=small)
        agreement["full22"] = full22.entries == REFERENCE_BETTI22
        agreement["full11"] = full11.entries == REFERENCE_BETTI11
    report = CounterexampleReport(
        seed=seed,
        prime=prime,
        resamples=resamples,
        dims22=dims22,
        ranks22=ranks22,
        beta25_22=beta25_22,
        dims11=dims11,
        predicted_ranks11=tuple(guess.entries[pair].rank for pair in WINDOW),
        actual_ranks11=_window_ranks(small),
        bindings11=tuple(guess.entries[pair].binding for pair in WINDOW),
        predicted_betti11=predicted_betti,
        actual_betti11=actual_betti,
        agreement=agreement,
        full22=full22,
        full11=full11,
    )
    disagreements = [name for name, ok in agreement.items() if not ok]
    if disagreements:
        logger.warning(
            "counterexample seed=%s prime=%s disagrees=%s", seed, prime, disagreements
        )
    return report


@dataclass(frozen=True)
class ExperimentInstance:
    """One (n, d, seed, e) comparison; failures are recorded in ``status``/``error``."""

    n: int
    d: int
    seed: int
    e: Optional[int]
    status: str = "ok"
    error: Optional[str] = None
    generators_match: Optional[bool] = None
    top_degree_match: Optional[bool] = None
    table_match: Optional[bool] = None
    subset_found: Optional[bool] = None
    mismatches: list[tuple[int, int, int, int]] = field(default_factory=list)


def _row(table: BettiTable, p: int) -> dict[int, int]:
    return {j: beta for (q, j), beta in table.entries.items() if q == p}


def _compare(
    X: PointSet, full: KoszulComplex, n: int, d: int, seed: int, e: int, budget: int
) -> ExperimentInstance:
    Y = X.subset(range(e))
    guess = guess_ranks(X, e, complex=full)
    actual = graded_betti(Y, complex=KoszulComplex(Y, workers=full.workers))
    predicted = guess.derived_betti
    cells = sorted(set(predicted.entries) | set(actual.entries))
    mismatches = [
        (p, j, predicted.get(p, j), actual.get(p, j))
        for p, j in cells
        if predicted.get(p, j) != actual.get(p, j)
    ]
    subset_found = None
    status, error = "ok", None
    if n == 2:
        try:
            subset_found = find_subset(X, e, budget=budget, workers=full.workers).found
        except SyzygyError as exc:
            status, error = type(exc).__name__, str(exc)
    return ExperimentInstance(
        n,
        d,
        seed,
        e,
        status=status,
        error=error,
        generators_match=_row(predicted, 0) == _row(actual, 0),
        top_degree_match=_row(predicted, n - 1) == _row(actual, n - 1),
        table_match=not mismatches,
        subset_found=subset_found,
        mismatches=mismatches,
    )


def run_experiment(
    n_range: tuple[int, int],
    d_range: tuple[int, int],
    seed_range: tuple[int, int],
    prime: int = DEFAULT_PRIME,
    sizes: Optional[Sequence[int]] = None,
    budget: int = EXPERIMENT_BUDGET,
    workers: Optional[int] = None,
) -> list[ExperimentInstance]:
    """
    Compare the guess with the first e points of seeded generic samples for
    every n, d and seed in the inclusive ranges and every 1 <= e < d (or the
    given ``sizes``). In P^2 also record whether a chained subset exists.
    """
    field_spec = FieldSpec(prime)
    instances: list[ExperimentInstance] = []
    for n, d, seed in product(
        range(n_range[0], n_range[1] + 1),
        range(d_range[0], d_range[1] + 1),
        range(seed_range[0], seed_range[1] + 1),
    ):
        try:
            X, _ = sample_generic_points(n, d, field_spec, seed)
        except SyzygyError as exc:
            instances.append(ExperimentInstance(n, d, seed, None, type(exc).__name__, str(exc)))
            continue
        full = KoszulComplex(X, workers)
        for e in sizes if sizes is not None else range(1, d):
            if not 1 <= e < d:
                instances.append(
                    ExperimentInstance(
                        n, d, seed, e, "PreconditionError", f"subset size {e} needs 1 <= e < {d}"
                    )
                )
                continue
            try:
                instance = _compare(X, full, n, d, seed, e, budget)
            except SyzygyError as exc:
                instance = ExperimentInstance(n, d, seed, e, type(exc).__name__, str(exc))
            logger.info(
                "experiment n=%s d=%s seed=%s e=%s status=%s table_match=%s",
                n,
                d,
                seed,
                e,
                instance.status,
                instance.table_match,
            )
            instances.append(instance)
    return instances
