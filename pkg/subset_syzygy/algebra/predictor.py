"""
Predictions for subsets of a point set: truncated Hilbert functions, the
generic subset rank recursion, the P^2 multiplication map formula and the
maximal rank Betti table of general points in the plane.
"""

import logging
from dataclasses import dataclass
from math import comb
from typing import Iterable, Literal, Optional

from subset_syzygy.algebra.koszul import BettiTable, KoszulComplex
from subset_syzygy.algebra.pointideal import HilbertTable, PointSet, hilbert
from subset_syzygy.errors import PreconditionError

logger = logging.getLogger(__name__)

Binding = Literal["zero", "containment", "complex"]


def truncated_hf(X: PointSet, e: int, table: Optional[HilbertTable] = None) -> HilbertTable:
    """h(t) = min{h_X(t), e}: the Hilbert function a generic e-subset has."""
    if not 1 <= e < len(X):
        raise PreconditionError(f"subset size {e} must satisfy 1 <= e < {len(X)}")
    table = table or hilbert(X)
    values = []
    t = 0
    while not values or values[-1] != e:
        values.append(min(table.value(t), e))
        t += 1
    values.append(e)
    return HilbertTable.from_values(values, e, X.n)


@dataclass(frozen=True)
class GuessEntry:
    """
    Predicted map e_{p,q}: Λ^p S_1 ⊗ I(Y)_q → Λ^{p-1} S_1 ⊗ I(Y)_{q+1}.

    ``binding`` names the bound that decided the rank: ``containment`` when
    ker e must contain the kernel of X's differential, ``complex`` when the
    image must lie in the kernel of the previous map, ``zero`` for e_{0,·}.
    """

    p: int
    q: int
    source_dim: int
    rank: int
    kernel_dim: int
    binding: Binding


@dataclass(frozen=True)
class GuessRankTable:
    e: int
    entries: dict[tuple[int, int], GuessEntry]
    derived_betti: BettiTable

    @property
    def ranks(self) -> dict[tuple[int, int], int]:
        return {key: entry.rank for key, entry in self.entries.items()}

    @property
    def kernel_dims(self) -> dict[tuple[int, int], int]:
        return {key: entry.kernel_dim for key, entry in self.entries.items()}


def guess_twists(n: int, truncated: HilbertTable) -> range:
    """Twists in which a subset with this Hilbert function can have syzygies."""
    return range(truncated.initial_degree, n + truncated.stabilization + 2)


def guess_ranks(
    X: PointSet,
    e: int,
    twists: Optional[Iterable[int]] = None,
    complex: Optional[KoszulComplex] = None,
) -> GuessRankTable:
    """
    Rank of every e_{p,q} "as large as possible" for a generic e-subset Y.

    Along each anti-diagonal p + q = t, starting from the zero map e_{0,t},
    rank e_{i+1} is the smaller of
      (i')  dim Λ^{i+1}S_1 ⊗ I(Y)_{t-i-1} - dim ker d_{i+1,t-i-1}(X)
      (ii') dim ker e_{i,t-i}
    and the predicted β_{i,t} is dim ker e_i - rank e_{i+1}.
    """
    complex = complex or KoszulComplex(X)
    truncated = truncated_hf(X, e, complex.hilbert)
    n = X.n
    entries: dict[tuple[int, int], GuessEntry] = {}
    betti: dict[tuple[int, int], int] = {}
    for t in sorted(set(twists)) if twists is not None else guess_twists(n, truncated):
        kernel = truncated.ideal_dim(t)
        entries[(0, t)] = GuessEntry(0, t, kernel, 0, kernel, "zero")
        i = 0
        while True:
            q = t - i - 1
            source = comb(n + 1, i + 1) * truncated.ideal_dim(q) if q >= 0 else 0
            value = 0
            if source:
                containment = source - complex.kernel_dim(i + 1, q)
                value = min(containment, kernel)
            if kernel - value:
                betti[(i, t)] = kernel - value
            if not source:
                break
            binding: Binding = "containment" if containment <= kernel else "complex"
            entries[(i + 1, q)] = GuessEntry(i + 1, q, source, value, source - value, binding)
            kernel = source - value
            i += 1
    logger.info("guess ranks e=%s entries=%s", e, len(entries))
    return GuessRankTable(e, entries, BettiTable(n, e, betti))


def subset_mu_rank(
    X: PointSet, m: int, s: int, complex: Optional[KoszulComplex] = None
) -> int:
    """
    Rank of μ_{s,Z} for the subset Z of size m that exists in P^2:
    min{dim I(Z)_{s+1}, rank μ_{s,X} + 3·dim I(Z)_s - 3·dim I(X)_s}.
    """
    if X.n != 2:
        raise PreconditionError(f"the subset rank formula holds in P^2, not P^{X.n}")
    complex = complex or KoszulComplex(X)
    truncated = truncated_hf(X, m, complex.hilbert)
    return min(
        truncated.ideal_dim(s + 1),
        complex.rank(1, s) + 3 * truncated.ideal_dim(s) - 3 * complex.ideal_dim(s),
    )


def mrc_predicted_betti(n: int, d: int) -> BettiTable:
    """
    Betti table of d general points of P^2 when every μ_s has maximal rank.

    Generators: β_{0,t} = dim I_t - min{dim I_t, 3·dim I_{t-1}}; syzygies
    follow from the Hilbert series, β_{1,t} = β_{0,t} + Δ³h(t).
    """
    if n != 2:
        raise PreconditionError(f"maximal rank predictions are implemented for P^2, not P^{n}")
    if d < 1:
        raise PreconditionError("a point set needs at least one point")

    def h(t: int) -> int:
        return min(comb(t + 2, 2), d) if t >= 0 else 0

    def ideal_dim(t: int) -> int:
        return comb(t + 2, 2) - h(t) if t >= 0 else 0

    def third_difference(t: int) -> int:
        return h(t) - 3 * h(t - 1) + 3 * h(t - 2) - h(t - 3)

    critical = next(t for t in range(1, d + 2) if h(t) == d)
    entries = {}
    for t in range(1, critical + 3):
        generators = ideal_dim(t) - min(ideal_dim(t), 3 * ideal_dim(t - 1))
        syzygies = generators + third_difference(t)
        if generators:
            entries[(0, t)] = generators
        if syzygies:
            entries[(1, t)] = syzygies
    return BettiTable(2, d, entries)


@dataclass(frozen=True)
class PredictionEntry:
    p: int
    twist: int
    predicted: int
    actual: int
    binding: Optional[Binding]

    @property
    def match(self) -> bool:
        return self.predicted == self.actual


@dataclass(frozen=True)
class RankComparison:
    p: int
    q: int
    predicted: int
    actual: int
    binding: Binding

    @property
    def match(self) -> bool:
        return self.predicted == self.actual


@dataclass(frozen=True)
class PredictionReport:
    e: int
    betti: list[PredictionEntry]
    ranks: list[RankComparison]

    @property
    def all_match(self) -> bool:
        return all(entry.match for entry in self.betti) and all(r.match for r in self.ranks)


def prediction_report(
    guess: GuessRankTable,
    actual: BettiTable,
    subset_complex: Optional[KoszulComplex] = None,
) -> PredictionReport:
    """
    Predicted against actual Betti numbers on every twist the guess covers,
    plus predicted against actual ranks when the subset's complex is given.
    """
    twists = sorted({q for p, q in guess.entries if p == 0})
    cells = sorted(
        {(p, j) for (p, j) in guess.derived_betti.entries if j in twists}
        | {(p, j) for (p, j) in actual.entries if j in twists}
    )
    betti = []
    for p, j in cells:
        incoming = guess.entries.get((p + 1, j - p - 1))
        betti.append(
            PredictionEntry(
                p,
                j,
                guess.derived_betti.get(p, j),
                actual.get(p, j),
                incoming.binding if incoming else None,
            )
        )
    ranks = []
    if subset_complex is not None:
        for (p, q), entry in sorted(guess.entries.items()):
            if p == 0:
                continue
            ranks.append(
                RankComparison(p, q, entry.rank, subset_complex.exact_rank(p, q), entry.binding)
            )
    return PredictionReport(guess.e, betti, ranks)
