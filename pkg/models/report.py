"""JSON reports printed by the command-line tools."""

from typing import Any

from pydantic import BaseModel, ConfigDict, model_validator

from locality.correlation import LOCALITY_BOUND, max_chsh_for_g

CHSH_CONSISTENCY = 1e-6


class Report(BaseModel):
    """Result of one command; absent fields are omitted from the JSON."""

    model_config = ConfigDict(extra="forbid")

    command: str
    g: float
    local: bool
    runtime_ms: int
    method: str | None = None
    stderr: float | None = None
    seed: int | None = None
    chsh_at_settings: float | None = None
    chsh_max: float | None = None
    exceeds_classical: bool | None = None
    lhv_feasible: bool | None = None
    chsh_facet: float | None = None
    critical_g: float | None = None
    witness_path: str | None = None
    bound: float | None = None
    threshold: float | None = None
    overall_status: str | None = None
    checks: list[dict[str, Any]] | None = None

    @model_validator(mode="after")
    def _consistent(self) -> "Report":
        if self.local != (self.g <= LOCALITY_BOUND):
            raise ValueError(f"local={self.local} contradicts g={self.g}")
        if self.chsh_max is not None and abs(self.chsh_max - max_chsh_for_g(self.g)) > CHSH_CONSISTENCY:
            raise ValueError(f"chsh_max={self.chsh_max} differs from 2√2·g={max_chsh_for_g(self.g)}")
        return self

    def to_json(self) -> str:
        return self.model_dump_json(exclude_none=True)


class ScanSummary(BaseModel):
    """Summary printed after a scan table is written."""

    model_config = ConfigDict(extra="forbid")

    command: str = "scan"
    param: str
    rows: int
    out: str
    crossing: tuple[float, float] | None
    runtime_ms: int


class WitnessEntry(BaseModel):
    """One strategy of an LHV witness file."""

    signs_a: list[int]
    signs_b: list[int]
    weight: float
