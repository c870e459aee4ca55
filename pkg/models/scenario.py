"""Scenario file schema.

Lengths in a scenario file are measured in units of the packet width 1/m, so
a file describes the same physical situation for every m. JSON has no
comments; a top-level ``"$comment"`` string plays the role of a file header.
"""

from pydantic import BaseModel, ConfigDict, Field, model_validator

from locality.correlation import CHSHSettings, Scenario
from locality.spatial import GaussianPacket, ProductWaveFunction
from models.geometry import BoxRegion, UnitVector3, make_unit

Triple = tuple[float, float, float]


def _scaled(v: Triple, m: float) -> Triple:
    return (v[0] / m, v[1] / m, v[2] / m)


class RegionSpec(BaseModel):
    """Detector box corners."""

    model_config = ConfigDict(extra="forbid")

    lo: Triple
    hi: Triple

    @model_validator(mode="after")
    def _positive_volume(self) -> "RegionSpec":
        BoxRegion(lo=self.lo, hi=self.hi)
        return self


class SettingsSpec(BaseModel):
    """The four CHSH directions, normalized on load."""

    model_config = ConfigDict(extra="forbid")

    a: Triple
    a_prime: Triple
    b: Triple
    b_prime: Triple

    @model_validator(mode="after")
    def _nonzero(self) -> "SettingsSpec":
        self.to_settings()
        return self

    def to_settings(self) -> CHSHSettings:
        return CHSHSettings(
            a=make_unit(*self.a),
            a_prime=make_unit(*self.a_prime),
            b=make_unit(*self.b),
            b_prime=make_unit(*self.b_prime),
        )


class ScenarioFile(BaseModel):
    """Contents of a scenario JSON file."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    comment: str | None = Field(default=None, alias="$comment")
    inverse_width: float = Field(gt=0)
    mean1: Triple
    mean2: Triple
    region1: RegionSpec
    region2: RegionSpec
    settings: SettingsSpec | None = None
    settings_a: list[Triple] | None = None
    settings_b: list[Triple] | None = None

    @model_validator(mode="after")
    def _setting_lists(self) -> "ScenarioFile":
        if (self.settings_a is None) != (self.settings_b is None):
            raise ValueError("settings_a and settings_b must be given together")
        for vectors in (self.settings_a or [], self.settings_b or []):
            for v in vectors:
                make_unit(*v)
        return self

    def to_scenario(self) -> Scenario:
        m = self.inverse_width
        return Scenario(
            wave=ProductWaveFunction(
                packet1=GaussianPacket(mean=_scaled(self.mean1, m), m=m),
                packet2=GaussianPacket(mean=_scaled(self.mean2, m), m=m),
            ),
            region1=BoxRegion(lo=_scaled(self.region1.lo, m), hi=_scaled(self.region1.hi, m)),
            region2=BoxRegion(lo=_scaled(self.region2.lo, m), hi=_scaled(self.region2.hi, m)),
        )

    def chsh_settings(self) -> CHSHSettings | None:
        return None if self.settings is None else self.settings.to_settings()

    def setting_lists(self) -> tuple[list[UnitVector3], list[UnitVector3]] | None:
        if self.settings_a is None or self.settings_b is None:
            return None
        return [make_unit(*v) for v in self.settings_a], [make_unit(*v) for v in self.settings_b]
