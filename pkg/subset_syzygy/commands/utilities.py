import logging
from typing import Iterable

from subset_syzygy.algebra.exactfield import FieldSpec
from subset_syzygy.algebra.koszul import BettiTable
from subset_syzygy.algebra.pointideal import HilbertTable, PointSet, load_points, random_points
from subset_syzygy.models import (
    BettiEntry,
    BettiTableModel,
    CommandConfig,
    HilbertTableModel,
)

logger = logging.getLogger(__name__)


def resolve_points(config: CommandConfig) -> PointSet:
    """
    Point set of a command: the ``--input`` file, or a seeded generic
    sample for ``--random``.
    """
    if config.input is not None:
        X = load_points(config.input)
        logger.info("loaded points path=%s n=%s d=%s", config.input, X.n, len(X))
        return X
    assert config.random is not None
    n, d, seed = config.random.n[0], config.random.d[0], config.random.seed[0]
    return random_points(n, d, FieldSpec(config.prime), seed)


def labels(indices: Iterable[int]) -> list[int]:
    """Point labels as printed: 1-based positions in the input."""
    return [i + 1 for i in indices]


def hilbert_table_model(table: HilbertTable) -> HilbertTableModel:
    return HilbertTableModel(
        projective_dim=table.projective_dim,
        degree=table.degree,
        stabilization=table.stabilization,
        values=list(table.values),
        deltas=list(table.deltas),
    )


def betti_table_model(table: BettiTable) -> BettiTableModel:
    return BettiTableModel(
        projective_dim=table.n,
        degree=table.d,
        entries=[BettiEntry(p=p, twist=j, beta=beta) for p, j, beta in table.sorted_entries()],
        diagram=table.diagram(),
    )
