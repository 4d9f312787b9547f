from subset_syzygy.algebra.koszul import KoszulComplex, graded_betti
from subset_syzygy.algebra.liaison import (
    choose_complete_intersection,
    ci_delta,
    degree_matrix,
    is_transversal,
    link_hf,
    residual_deltas,
    shared_support,
)
from subset_syzygy.commands.liaison.liaison_models import DegreeMatrixModel, LinkageModel
from subset_syzygy.commands.utilities import resolve_points
from subset_syzygy.config import DEFAULT_SEED
from subset_syzygy.errors import LinkageError
from subset_syzygy.models import CommandConfig
from subset_syzygy.routing import CommandRouter

router = CommandRouter()


@router.command("link", response_model=LinkageModel)
def link(config: CommandConfig) -> LinkageModel:
    """
    Link a P^2 point set by a complete intersection of type --ci a,b.

    The residual's Δh is computed twice, from the Δh of X and from the
    colon ideal. Residuals meeting X are refused.
    """

    X = resolve_points(config)
    assert config.ci is not None
    a, b = config.ci
    H, K = choose_complete_intersection(X, a, b, config.seed or DEFAULT_SEED)
    shared = shared_support(H, K, X)
    if shared:
        raise LinkageError(
            "the residual scheme contains this point of X, so the union is not reduced",
            location=f"points[{shared[0]}]",
        )

    complex = KoszulComplex(X, config.workers)
    delta_X = list(complex.hilbert.trimmed_deltas())
    predicted = link_hf(delta_X, a, b)
    computed = residual_deltas(H, K, X)
    padded = tuple((delta_X + [0] * (a + b))[: a + b - 1])
    matrix = degree_matrix(graded_betti(X, complex=complex))

    return LinkageModel(
        ci=(a, b),
        H=str(H),
        K=str(K),
        transversal=is_transversal(H, K, X),
        delta_X=delta_X,
        delta_ci=list(ci_delta(a, b)),
        predicted_residual=list(predicted),
        computed_residual=list(computed),
        residual_degree=sum(computed),
        agree=predicted == computed,
        double_link=link_hf(predicted, a, b) == padded,
        degree_matrix=DegreeMatrixModel(
            syzygy_twists=list(matrix.syzygy_twists),
            generator_twists=list(matrix.generator_twists),
            entries=[list(row) for row in matrix.entries],
        ),
    )
