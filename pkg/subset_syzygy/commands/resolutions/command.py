from subset_syzygy.algebra.koszul import KoszulComplex, graded_betti
from subset_syzygy.algebra.pointideal import hilbert
from subset_syzygy.algebra.predictor import guess_ranks, prediction_report, truncated_hf
from subset_syzygy.algebra.subsetsearch import greedy_truncated_order
from subset_syzygy.commands.resolutions.resolutions_models import (
    PredictedBettiModel,
    PredictionReportModel,
    RankComparisonModel,
)
from subset_syzygy.commands.utilities import (
    betti_table_model,
    hilbert_table_model,
    labels,
    resolve_points,
)
from subset_syzygy.models import BettiTableModel, CommandConfig, HilbertTableModel
from subset_syzygy.routing import CommandRouter

router = CommandRouter()


@router.command("hilbert", response_model=HilbertTableModel)
def hilbert_function(config: CommandConfig) -> HilbertTableModel:
    """
    Hilbert function of the point set and its first differences.
    """

    return hilbert_table_model(hilbert(resolve_points(config)))


@router.command("betti", response_model=BettiTableModel)
def betti_numbers(config: CommandConfig) -> BettiTableModel:
    """
    Graded Betti numbers of I(X), optionally only on the --window twists.
    """

    X = resolve_points(config)
    complex = KoszulComplex(X, config.workers)
    return betti_table_model(graded_betti(X, config.twists, complex))


@router.command("predict", response_model=PredictionReportModel)
def predict(config: CommandConfig) -> PredictionReportModel:
    """
    Generic subset guess for --m points against a subset with truncated
    Hilbert function.

    The subset is built greedily in file order; predicted Betti numbers and
    map ranks are compared with the ones computed for that subset.
    """

    X = resolve_points(config)
    assert config.m is not None
    complex = KoszulComplex(X, config.workers)
    guess = guess_ranks(X, config.m, config.twists, complex)
    order = greedy_truncated_order(X, config.m)
    Y = X.subset(order)
    subset_complex = KoszulComplex(Y, config.workers)
    actual = graded_betti(Y, config.twists, subset_complex)
    report = prediction_report(guess, actual, subset_complex)

    return PredictionReportModel(
        e=report.e,
        subset=labels(order),
        truncated_hilbert=hilbert_table_model(truncated_hf(X, config.m, complex.hilbert)),
        betti=[
            PredictedBettiModel(
                p=entry.p,
                twist=entry.twist,
                predicted=entry.predicted,
                actual=entry.actual,
                binding=entry.binding,
                match=entry.match,
            )
            for entry in report.betti
        ],
        ranks=[
            RankComparisonModel(
                p=rank.p,
                q=rank.q,
                predicted=rank.predicted,
                actual=rank.actual,
                binding=rank.binding,
                match=rank.match,
            )
            for rank in report.ranks
        ],
        all_match=report.all_match,
    )
