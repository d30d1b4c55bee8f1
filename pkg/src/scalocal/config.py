"""Analysis configuration shared by the CLI and the recipe runner."""

from __future__ import annotations

from dataclasses import dataclass, field, asdict

from .entropy import ScaleGrid
from .partition import validate_rank

__all__ = ["AnalysisConfig"]

REFERENCE_CHOICES = ("brud", "bud", "file")
FORMAT_CHOICES = ("csv", "json")
LOG_BASE_CHOICES = ("natural", "base10")


@dataclass
class AnalysisConfig:
    """Everything a sweep needs: ranks, scale grid, dithering, and output."""

    qs: list[float] = field(default_factory=lambda: [0.0])
    e_min: float = 1e-3
    e_max: float = 3.0
    per_decade: int = 8
    dithers: int = 16
    seed: int = 0
    reference: str | None = None
    reference_path: str | None = None
    out_format: str = "csv"
    log_base: str = "natural"

    def validate(self) -> "AnalysisConfig":
        if not self.qs:
            raise ValueError("at least one rank q is required")
        self.qs = [validate_rank(q) for q in self.qs]
        self.e_min = float(self.e_min)
        self.e_max = float(self.e_max)
        if not (self.e_min > 0 and self.e_max > 0):
            raise ValueError("scale bounds must be positive")
        if not self.e_min < self.e_max:
            raise ValueError(f"e_min must be < e_max, got {self.e_min} >= {self.e_max}")
        self.per_decade = int(self.per_decade)
        if self.per_decade < 1:
            raise ValueError("points per decade must be >= 1")
        self.dithers = int(self.dithers)
        if self.dithers < 1:
            raise ValueError("dither count must be >= 1")
        self.seed = int(self.seed)
        if self.reference is not None and self.reference not in REFERENCE_CHOICES:
            raise ValueError(
                f"reference must be one of {REFERENCE_CHOICES} or omitted, got {self.reference!r}"
            )
        if self.reference == "file" and not self.reference_path:
            raise ValueError("reference 'file' needs a reference point-set path")
        if self.out_format not in FORMAT_CHOICES:
            raise ValueError(f"output format must be one of {FORMAT_CHOICES}")
        if self.log_base not in LOG_BASE_CHOICES:
            raise ValueError(f"log base must be one of {LOG_BASE_CHOICES}")
        return self

    def grid(self) -> ScaleGrid:
        return ScaleGrid.logspaced(self.e_min, self.e_max, self.per_decade)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "AnalysisConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown analysis config fields: {sorted(unknown)}")
        return cls(**data).validate()
