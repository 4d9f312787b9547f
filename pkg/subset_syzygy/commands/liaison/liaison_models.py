from pydantic import BaseModel

from subset_syzygy.models import ResponseModel


class DegreeMatrixModel(BaseModel):
    """Entry degrees max{0, m_i - d_j} of the Hilbert–Burch matrix"""

    syzygy_twists: list[int]
    generator_twists: list[int]
    entries: list[list[int]]


class LinkageModel(ResponseModel):
    """Response model for the link command"""

    ci: tuple[int, int]
    H: str
    K: str
    transversal: bool
    delta_X: list[int]
    delta_ci: list[int]
    predicted_residual: list[int]
    computed_residual: list[int]
    residual_degree: int
    agree: bool
    double_link: bool
    degree_matrix: DegreeMatrixModel

    def to_text(self) -> str:
        a, b = self.ci
        rows = "\n".join(" ".join(str(u) for u in row) for row in self.degree_matrix.entries)
        return "\n".join(
            [
                f"CI({a}, {b}): H = {self.H}",
                f"          K = {self.K}",
                f"transversal {self.transversal}",
                f"Δh_X  {' '.join(map(str, self.delta_X))}",
                f"Δh_CI {' '.join(map(str, self.delta_ci))}",
                f"Δh_D  {' '.join(map(str, self.computed_residual))} "
                f"(predicted {' '.join(map(str, self.predicted_residual))})",
                f"residual of degree {self.residual_degree}, "
                f"{'agrees' if self.agree else 'DISAGREES'}, double link {self.double_link}",
                "degree matrix, syzygy twists "
                f"{' '.join(map(str, self.degree_matrix.syzygy_twists))} by generator twists "
                f"{' '.join(map(str, self.degree_matrix.generator_twists))}",
                rows,
            ]
        )
