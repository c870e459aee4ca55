"""Scenario file loading with proper error handling."""

import json
import logging
from pathlib import Path

from pydantic import ValidationError

from models.scenario import ScenarioFile

logger = logging.getLogger(__name__)


class ScenarioLoadError(Exception):
    """Raised when a scenario file cannot be loaded."""

    pass


def load_scenario(file_path: str | Path) -> ScenarioFile:
    """
    Load and validate a UTF-8 JSON scenario file.

    Args:
        file_path: Path to the scenario file

    Returns:
        Validated ScenarioFile

    Raises:
        ScenarioLoadError: If the file is missing, unreadable, not JSON, or
            violates the schema; the message names the line/column or field
    """
    path = Path(file_path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError as e:
        raise ScenarioLoadError(f"{path} not found") from e
    except UnicodeDecodeError as e:
        raise ScenarioLoadError(f"{path} is not valid UTF-8") from e
    except OSError as e:
        raise ScenarioLoadError(f"Failed to read {path}: {e}") from e

    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioLoadError(f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from e

    try:
        scenario = ScenarioFile.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"]) or "<root>"
        raise ScenarioLoadError(f"{path}: field '{field}': {first['msg']}") from e

    logger.debug("loaded scenario %s (m=%g)", path, scenario.inverse_width)
    return scenario
