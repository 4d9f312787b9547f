from typing import Optional

from pydantic import BaseModel

from subset_syzygy.models import BettiTableModel, ResponseModel


class CounterexampleReportModel(ResponseModel):
    """Response model for the counterexample command"""

    seed: int
    prime: int
    resamples: int
    dims22: list[int]
    ranks22: list[int]
    beta25_22: int
    dims11: list[int]
    predicted_ranks11: list[int]
    actual_ranks11: list[int]
    bindings11: list[str]
    predicted_betti11: list[int]
    actual_betti11: list[int]
    guess_fails: bool
    agreement: dict[str, bool]
    full22: Optional[BettiTableModel] = None
    full11: Optional[BettiTableModel] = None

    def to_text(self) -> str:
        def row(values: list[int]) -> str:
            return " -> ".join(str(v) for v in values)

        lines = [
            f"22 points in P^6, seed {self.seed}, GF({self.prime}), {self.resamples} resamples",
            f"  0 -> {row(self.dims22)} -> 0",
            f"  ranks {' '.join(map(str, self.ranks22))}, β_2,5 = {self.beta25_22}",
            "11 points",
            f"  0 -> {row(self.dims11)} -> 0",
            f"  guess ranks  {' '.join(map(str, self.predicted_ranks11))}"
            f" ({' '.join(self.bindings11)})",
            f"  actual ranks {' '.join(map(str, self.actual_ranks11))}",
            f"  (β_2,5, β_3,5) predicted {tuple(self.predicted_betti11)}"
            f" actual {tuple(self.actual_betti11)}",
            "guess fails" if self.guess_fails else "guess holds",
        ]
        lines += [
            f"  {name}: {'agrees' if ok else 'differs'}" for name, ok in self.agreement.items()
        ]
        for title, table in (("22 points", self.full22), ("11 points", self.full11)):
            if table is not None:
                lines += [title, table.to_text()]
        return "\n".join(lines)


class ExperimentInstanceModel(BaseModel):
    """One comparison of the guess with a subset"""

    n: int
    d: int
    seed: int
    e: Optional[int]
    status: str
    error: Optional[str]
    generators_match: Optional[bool]
    top_degree_match: Optional[bool]
    table_match: Optional[bool]
    subset_found: Optional[bool]
    mismatches: list[tuple[int, int, int, int]]


class ExperimentSummaryModel(BaseModel):
    instances: int
    computed: int
    errors: int
    generators_match: int
    top_degree_match: int
    table_match: int
    subset_found: int
    subset_searched: int


class ExperimentReportModel(ResponseModel):
    """Response model for the experiment command"""

    prime: int
    summary: ExperimentSummaryModel
    instances: list[ExperimentInstanceModel]

    def to_text(self) -> str:
        s = self.summary
        lines = [f"GF({self.prime})", "n d seed e status generators top table subset"]
        for i in self.instances:
            lines.append(
                f"{i.n} {i.d} {i.seed} {i.e if i.e is not None else '-'} {i.status} "
                f"{i.generators_match} {i.top_degree_match} {i.table_match} {i.subset_found}"
            )
            if i.error:
                lines.append(f"  {i.error}")
            for p, twist, predicted, actual in i.mismatches:
                lines.append(f"  β_{p},{twist} predicted {predicted} actual {actual}")
        lines.append(
            f"{s.computed}/{s.instances} computed, {s.errors} with errors: "
            f"generators {s.generators_match}, top degree {s.top_degree_match}, "
            f"tables {s.table_match}"
        )
        lines.append(f"subsets found {s.subset_found}/{s.subset_searched}")
        return "\n".join(lines)
