"""
Models
"""

from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator
from sympy import isprime

from subset_syzygy import config
from subset_syzygy.config import DEFAULT_PRIME, DEFAULT_SEED, MAX_PRIME

Command = Literal[
    "hilbert",
    "betti",
    "predict",
    "find-subset",
    "enumerate",
    "classify",
    "link",
    "counterexample",
    "experiment",
]
POINT_COMMANDS = {"hilbert", "betti", "predict", "find-subset", "enumerate", "classify", "link"}


def _check_prime(prime: int) -> int:
    if prime < 3 or prime > MAX_PRIME or not isprime(prime):
        raise ValueError(f"{prime} is not a prime in [3, {MAX_PRIME}]")
    return prime


class PointSetFile(BaseModel):
    """Point-set file"""

    prime: int = DEFAULT_PRIME
    projective_dim: int = Field(ge=1)
    points: list[list[int]] = Field(min_length=1)

    @field_validator("prime")
    @classmethod
    def prime_is_prime(cls, value: int) -> int:
        return _check_prime(value)

    @model_validator(mode="after")
    def coordinates_match_dimension(self):
        for position, point in enumerate(self.points):
            if len(point) != self.projective_dim + 1:
                raise ValueError(
                    f"points[{position}] has {len(point)} coordinates, "
                    f"expected {self.projective_dim + 1}"
                )
        return self


class ResponseModel(BaseModel):
    """Response model"""

    @property
    def exit_code(self) -> int:
        return 0

    def to_text(self) -> str:
        return self.model_dump_json(indent=2)


class HilbertTableModel(ResponseModel):
    """Hilbert function with first differences"""

    projective_dim: int
    degree: int
    stabilization: int
    values: list[int]
    deltas: list[int]

    def to_text(self) -> str:
        width = max(len(str(v)) for v in self.values + self.deltas)
        header = "t     " + " ".join(str(t).rjust(width) for t in range(len(self.values)))
        values = "h(t)  " + " ".join(str(v).rjust(width) for v in self.values)
        deltas = "Δh(t) " + " ".join(str(v).rjust(width) for v in self.deltas)
        footer = (
            f"stabilization {self.stabilization}, "
            f"{self.degree} points in P^{self.projective_dim}"
        )
        return "\n".join([header, values, deltas, footer])


class BettiEntry(BaseModel):
    """One graded Betti number"""

    p: int
    twist: int
    beta: int


class BettiTableModel(ResponseModel):
    """Graded Betti numbers of I(X)"""

    projective_dim: int
    degree: int
    entries: list[BettiEntry]
    diagram: str

    def to_text(self) -> str:
        lines = [self.diagram, f"{self.degree} points in P^{self.projective_dim}"]
        lines += [f"β_{e.p},{e.twist} = {e.beta}" for e in self.entries]
        return "\n".join(lines)


class RandomSpec(BaseModel):
    """Seeded random input: ``n=6,d=22,seed=42``; experiments accept ``a:b`` ranges"""

    n: tuple[int, int]
    d: tuple[int, int]
    seed: tuple[int, int] = (DEFAULT_SEED, DEFAULT_SEED)

    @field_validator("n", "d", "seed", mode="before")
    @classmethod
    def parse_range(cls, value):
        if isinstance(value, int):
            return (value, value)
        if isinstance(value, str):
            low, _, high = value.partition(":")
            return (int(low), int(high or low))
        return value

    @model_validator(mode="after")
    def ranges_are_ordered(self):
        for name in ("n", "d", "seed"):
            low, high = getattr(self, name)
            if low > high:
                raise ValueError(f"{name} range {low}:{high} is empty")
        if self.n[0] < 1 or self.d[0] < 1:
            raise ValueError("n and d must be positive")
        return self

    @staticmethod
    def fields(text: str) -> dict[str, str]:
        fields = {}
        for item in text.split(","):
            key, separator, value = item.partition("=")
            if not separator:
                raise ValueError(f"expected key=value, got {item!r}")
            fields[key.strip()] = value.strip()
        return fields

    @classmethod
    def parse(cls, text: str) -> "RandomSpec":
        return cls.model_validate(cls.fields(text))

    @property
    def is_single(self) -> bool:
        return all(low == high for low, high in (self.n, self.d, self.seed))


class CommandConfig(BaseModel):
    """Validated command line"""

    command: Command
    input: Optional[Path] = None
    random: Optional[RandomSpec] = None
    prime: int = DEFAULT_PRIME
    m: Optional[int] = Field(default=None, ge=1)
    twists: Optional[list[int]] = None
    ci: Optional[tuple[int, int]] = None
    seed: Optional[int] = None
    output: Optional[Path] = None
    format: Literal["json", "text"] = "json"
    budget: Optional[int] = Field(default=None, ge=1)
    full: bool = False
    workers: Optional[int] = Field(default=None, ge=1)

    @field_validator("prime")
    @classmethod
    def prime_is_prime(cls, value: int) -> int:
        return _check_prime(value)

    @field_validator("random", mode="before")
    @classmethod
    def parse_random(cls, value):
        if isinstance(value, str):
            return RandomSpec.fields(value)
        return value

    @field_validator("twists", mode="before")
    @classmethod
    def parse_window(cls, value):
        """``twist=5``, ``5`` or an inclusive range ``3:6``."""
        if isinstance(value, str):
            _, _, text = value.rpartition("=")
            low, _, high = text.partition(":")
            return list(range(int(low), int(high or low) + 1))
        return value

    @field_validator("ci", mode="before")
    @classmethod
    def parse_ci(cls, value):
        if isinstance(value, str):
            return tuple(int(part) for part in value.split(","))
        return value

    @field_validator("ci")
    @classmethod
    def ci_degrees_positive(cls, value):
        if value is not None and min(value) < 1:
            raise ValueError("complete intersection degrees must be positive")
        return value

    @field_validator("workers")
    @classmethod
    def workers_within_limit(cls, value: Optional[int]) -> Optional[int]:
        """SUBSET_SYZYGY_THREADS caps --workers."""
        if value is None:
            return value
        return min(value, config.WORKERS)

    @model_validator(mode="after")
    def one_input_source(self):
        if self.command in POINT_COMMANDS:
            if (self.input is None) == (self.random is None):
                raise ValueError("give exactly one of --input or --random")
            if self.random is not None and not self.random.is_single:
                raise ValueError("ranges in --random are only accepted by experiment")
        if self.command == "experiment" and self.random is None:
            raise ValueError("experiment needs --random with n, d and seed ranges")
        if self.random is not None and self.m is not None and self.m >= self.random.d[0]:
            raise ValueError(f"m={self.m} must be smaller than d={self.random.d[0]}")
        if self.command in {"find-subset", "enumerate", "predict"} and self.m is None:
            raise ValueError(f"{self.command} needs --m")
        if self.command == "link" and self.ci is None:
            raise ValueError("link needs --ci a,b")
        return self
