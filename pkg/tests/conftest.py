"""Shared fixtures: scenario files written to a temporary directory."""

import json
from collections.abc import Callable
from pathlib import Path
from typing import Any

import pytest

TSIRELSON = {
    "a": [1.0, 0.0, 0.0],
    "a_prime": [0.0, 1.0, 0.0],
    "b": [1.0, 1.0, 0.0],
    "b_prime": [-1.0, 1.0, 0.0],
}


def paper_scenario(**overrides: Any) -> dict[str, Any]:
    """Gaussian packets 10/m apart with unit boxes, in units of 1/m."""
    data: dict[str, Any] = {
        "$comment": "packets at 0 and l, boxes |r_i - mean_i| < 1/m",
        "inverse_width": 1.0,
        "mean1": [0.0, 0.0, 0.0],
        "mean2": [10.0, 0.0, 0.0],
        "region1": {"lo": [-1.0, -1.0, -1.0], "hi": [1.0, 1.0, 1.0]},
        "region2": {"lo": [9.0, -1.0, -1.0], "hi": [11.0, 1.0, 1.0]},
        "settings": TSIRELSON,
        "settings_a": [TSIRELSON["a"], TSIRELSON["a_prime"]],
        "settings_b": [TSIRELSON["b"], TSIRELSON["b_prime"]],
    }
    data.update(overrides)
    return data


@pytest.fixture
def write_scenario(tmp_path: Path) -> Callable[..., Path]:
    """Write a scenario (the Gaussian one, with overrides) and return its path."""

    def _write(name: str = "scenario.json", **overrides: Any) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(paper_scenario(**overrides)), encoding="utf-8")
        return path

    return _write
