from typing import Optional

from pydantic import BaseModel

from subset_syzygy.models import HilbertTableModel, ResponseModel


class PredictedBettiModel(BaseModel):
    """Predicted against actual β_{p,twist}"""

    p: int
    twist: int
    predicted: int
    actual: int
    binding: Optional[str]
    match: bool


class RankComparisonModel(BaseModel):
    """Predicted against actual rank of one map e_{p,q}"""

    p: int
    q: int
    predicted: int
    actual: int
    binding: str
    match: bool


class PredictionReportModel(ResponseModel):
    """Response model for the predict command"""

    e: int
    subset: list[int]
    truncated_hilbert: HilbertTableModel
    betti: list[PredictedBettiModel]
    ranks: list[RankComparisonModel]
    all_match: bool

    def to_text(self) -> str:
        lines = [
            f"subset of size {self.e}: {' '.join(str(i) for i in self.subset)}",
            "truncated Hilbert function",
            self.truncated_hilbert.to_text(),
            "p twist predicted actual binding",
        ]
        for entry in self.betti:
            flag = "" if entry.match else "  MISMATCH"
            lines.append(
                f"{entry.p} {entry.twist} {entry.predicted} {entry.actual} "
                f"{entry.binding or '-'}{flag}"
            )
        lines.append("p q predicted-rank actual-rank binding")
        for rank in self.ranks:
            flag = "" if rank.match else "  MISMATCH"
            lines.append(
                f"{rank.p} {rank.q} {rank.predicted} {rank.actual} {rank.binding}{flag}"
            )
        lines.append("all match" if self.all_match else "prediction fails")
        return "\n".join(lines)
