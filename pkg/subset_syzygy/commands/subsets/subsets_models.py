from typing import Optional

from pydantic import BaseModel

from subset_syzygy.models import ResponseModel


class RankCheckModel(BaseModel):
    """rank μ_s of a subset against its predicted value"""

    s: int
    predicted: int
    actual: int
    match: bool


class ChainStepModel(BaseModel):
    """One point removal"""

    removed: int
    subset: list[int]
    truncated: bool
    checks: list[RankCheckModel]
    original_checks: list[RankCheckModel]


class SubsetChainModel(ResponseModel):
    """Response model for the find-subset command"""

    m: int
    found: bool
    subset: list[int]
    removed: list[int]
    explored: int
    steps: list[ChainStepModel]
    verification: list[RankCheckModel]

    @property
    def exit_code(self) -> int:
        return 0 if self.found else 3

    def to_text(self) -> str:
        if not self.found:
            return (
                f"no chain down to {self.m} points after {self.explored} candidates: "
                "every removal order fails"
            )

        def checks(items: list[RankCheckModel]) -> str:
            return " ".join(f"s={c.s}:{c.predicted}/{c.actual}" for c in items)

        lines = [
            f"subset {' '.join(str(i) for i in self.subset)}",
            f"removed {' '.join(str(i) for i in self.removed)} to reach {self.m} points",
            "ranks of μ_s as predicted/actual, against the parent and against X",
        ]
        for step in self.steps:
            lines.append(
                f"remove {step.removed} -> {' '.join(map(str, step.subset))}  "
                f"truncated={step.truncated}  {checks(step.checks)} | "
                f"{checks(step.original_checks)}"
            )
        lines.append(f"verification {checks(self.verification)}")
        lines.append(f"explored {self.explored}")
        return "\n".join(lines)


class SubsetRankModel(BaseModel):
    s: int
    rank: int


class SubsetRecordModel(BaseModel):
    """One m-subset with its invariants"""

    subset: list[int]
    truncated: bool
    ranks: list[SubsetRankModel]
    gens_at_lplus1: int
    matches_prediction: Optional[bool]


class EnumerationModel(ResponseModel):
    """Response model for the enumerate command"""

    m: int
    l: int  # noqa: E741
    total: int
    matching: int
    without_generators_at_lplus1: list[list[int]]
    records: list[SubsetRecordModel]

    def to_text(self) -> str:
        lines = [f"{self.total} subsets of size {self.m}, l = {self.l}"]
        for record in self.records:
            ranks = " ".join(f"s={r.s}:{r.rank}" for r in record.ranks)
            flag = {True: "match", False: "differs", None: "-"}[record.matches_prediction]
            lines.append(
                f"{' '.join(map(str, record.subset))}  truncated={record.truncated} "
                f"gens={record.gens_at_lplus1} {ranks} {flag}"
            )
        lines.append(f"{self.matching} subsets match the prediction")
        return "\n".join(lines)


class CaseLabelModel(ResponseModel):
    """Response model for the classify command"""

    l: int  # noqa: E741
    gens_at_lplus1: int
    case: int
    deltas: list[int]
    gcd_degree: Optional[int] = None
    gcd_factor: Optional[str] = None
    on_curve: Optional[list[int]] = None

    def to_text(self) -> str:
        lines = [
            f"case {self.case}: l = {self.l}, {self.gens_at_lplus1} generators in degree {self.l + 1}",
            f"Δh {' '.join(map(str, self.deltas))}",
        ]
        if self.gcd_degree is not None:
            lines.append(f"gcd of I_{self.l} has degree {self.gcd_degree}")
        if self.gcd_factor is not None and self.on_curve is not None:
            lines.append(f"F = {self.gcd_factor} contains {' '.join(map(str, self.on_curve))}")
        return "\n".join(lines)
