from dataclasses import asdict

from subset_syzygy.algebra.counterexample import run_counterexample, run_experiment
from subset_syzygy.commands.experiments.experiments_models import (
    CounterexampleReportModel,
    ExperimentInstanceModel,
    ExperimentReportModel,
    ExperimentSummaryModel,
)
from subset_syzygy.commands.utilities import betti_table_model
from subset_syzygy.config import DEFAULT_SEED, EXPERIMENT_BUDGET
from subset_syzygy.models import CommandConfig
from subset_syzygy.routing import CommandRouter

router = CommandRouter()


@router.command("counterexample", response_model=CounterexampleReportModel)
def counterexample(config: CommandConfig) -> CounterexampleReportModel:
    """
    11 of 22 generic points in P^6: guess against actual resolution at twist 5.

    --full adds both complete Betti tables.
    """

    report = run_counterexample(
        seed=config.seed if config.seed is not None else DEFAULT_SEED,
        prime=config.prime,
        full=config.full,
        workers=config.workers,
    )

    return CounterexampleReportModel(
        seed=report.seed,
        prime=report.prime,
        resamples=report.resamples,
        dims22=list(report.dims22),
        ranks22=list(report.ranks22),
        beta25_22=report.beta25_22,
        dims11=list(report.dims11),
        predicted_ranks11=list(report.predicted_ranks11),
        actual_ranks11=list(report.actual_ranks11),
        bindings11=list(report.bindings11),
        predicted_betti11=list(report.predicted_betti11),
        actual_betti11=list(report.actual_betti11),
        guess_fails=report.guess_fails,
        agreement=report.agreement,
        full22=betti_table_model(report.full22) if report.full22 else None,
        full11=betti_table_model(report.full11) if report.full11 else None,
    )


@router.command("experiment", response_model=ExperimentReportModel)
def experiment(config: CommandConfig) -> ExperimentReportModel:
    """
    Batch comparison of the guess on seeded generic samples over n, d and seed
    ranges, every subset size unless --m is given.
    """

    assert config.random is not None
    instances = run_experiment(
        config.random.n,
        config.random.d,
        config.random.seed,
        prime=config.prime,
        sizes=[config.m] if config.m is not None else None,
        budget=config.budget or EXPERIMENT_BUDGET,
        workers=config.workers,
    )
    computed = [i for i in instances if i.table_match is not None]
    searched = [i for i in instances if i.subset_found is not None]

    return ExperimentReportModel(
        prime=config.prime,
        summary=ExperimentSummaryModel(
            instances=len(instances),
            computed=len(computed),
            errors=sum(1 for i in instances if i.status != "ok"),
            generators_match=sum(1 for i in computed if i.generators_match),
            top_degree_match=sum(1 for i in computed if i.top_degree_match),
            table_match=sum(1 for i in computed if i.table_match),
            subset_found=sum(1 for i in searched if i.subset_found),
            subset_searched=len(searched),
        ),
        instances=[ExperimentInstanceModel(**asdict(i)) for i in instances],
    )
