from subset_syzygy.algebra.koszul import KoszulComplex
from subset_syzygy.algebra.liaison import base_locus_gcd, split_on_curve
from subset_syzygy.algebra.subsetsearch import (
    RankCheck,
    classify_case,
    critical_degree,
    enumerate_subsets,
    find_subset,
)
from subset_syzygy.commands.subsets.subsets_models import (
    CaseLabelModel,
    ChainStepModel,
    EnumerationModel,
    RankCheckModel,
    SubsetChainModel,
    SubsetRankModel,
    SubsetRecordModel,
)
from subset_syzygy.commands.utilities import labels, resolve_points
from subset_syzygy.config import ENUMERATE_BUDGET
from subset_syzygy.models import CommandConfig
from subset_syzygy.routing import CommandRouter

router = CommandRouter()


def _checks(checks: tuple[RankCheck, ...]) -> list[RankCheckModel]:
    return [
        RankCheckModel(s=c.s, predicted=c.predicted, actual=c.actual, match=c.match)
        for c in checks
    ]


@router.command("find-subset", response_model=SubsetChainModel)
def find(config: CommandConfig) -> SubsetChainModel:
    """
    Chain of point removals in P^2 down to --m points keeping every
    multiplication map at its predicted rank.
    """

    X = resolve_points(config)
    assert config.m is not None
    chain = find_subset(X, config.m, budget=config.budget, workers=config.workers)

    return SubsetChainModel(
        m=chain.m,
        found=chain.found,
        subset=labels(chain.subset) if chain.found else [],
        removed=labels(step.removed for step in chain.steps),
        explored=chain.explored,
        steps=[
            ChainStepModel(
                removed=step.removed + 1,
                subset=labels(step.subset),
                truncated=step.truncated,
                checks=_checks(step.checks),
                original_checks=_checks(step.original_checks),
            )
            for step in chain.steps
        ],
        verification=_checks(chain.verification),
    )


@router.command("enumerate", response_model=EnumerationModel)
def enumerate_all(config: CommandConfig) -> EnumerationModel:
    """
    Every --m subset with its μ-ranks, Hilbert function status and
    generators in degree l + 1.
    """

    X = resolve_points(config)
    assert config.m is not None
    records = enumerate_subsets(
        X, config.m, budget=config.budget or ENUMERATE_BUDGET, workers=config.workers
    )
    l = critical_degree(X)  # noqa: E741

    return EnumerationModel(
        m=config.m,
        l=l,
        total=len(records),
        matching=sum(1 for record in records if record.matches_prediction),
        without_generators_at_lplus1=[
            labels(record.subset) for record in records if record.gens_at_lplus1 == 0
        ],
        records=[
            SubsetRecordModel(
                subset=labels(record.subset),
                truncated=record.truncated,
                ranks=[
                    SubsetRankModel(s=s, rank=rank) for s, rank in sorted(record.ranks.items())
                ],
                gens_at_lplus1=record.gens_at_lplus1,
                matches_prediction=record.matches_prediction,
            )
            for record in records
        ],
    )


@router.command("classify", response_model=CaseLabelModel)
def classify(config: CommandConfig) -> CaseLabelModel:
    """
    Case 1 to 4 of a P^2 point set, with the base locus test on I(X)_l.
    """

    X = resolve_points(config)
    complex = KoszulComplex(X, config.workers)
    label = classify_case(X, complex)
    response = CaseLabelModel(
        l=label.l,
        gens_at_lplus1=label.gens_at_lplus1,
        case=label.case,
        deltas=list(complex.hilbert.trimmed_deltas()),
    )
    if complex.ideal_dim(label.l) > 0:
        k, factor = base_locus_gcd(X, label.l)
        response.gcd_degree = k
        if factor is not None:
            on, _ = split_on_curve(X, factor)
            response.gcd_factor = str(factor)
            response.on_curve = labels(on)
    return response
