"""Unit tests for scenario file loading."""

import pytest

from locality.correlation import Scenario
from utils.loader import ScenarioLoadError, load_scenario


class TestLoadScenario:
    """Test parsing and validation of scenario files."""

    def test_paper_scenario(self, write_scenario):
        scenario_file = load_scenario(write_scenario())

        assert scenario_file.comment.startswith("packets")
        assert scenario_file.to_scenario().g() == pytest.approx(Scenario.paper().g(), abs=1e-15)

    def test_lengths_scale_with_width(self, write_scenario):
        scenario = load_scenario(write_scenario(inverse_width=4.0)).to_scenario()

        assert scenario.wave.packet2.mean == (2.5, 0.0, 0.0)
        assert scenario.region1.hi == (0.25, 0.25, 0.25)
        assert scenario.g() == pytest.approx(Scenario.paper().g(), abs=1e-15)

    def test_settings_normalized(self, write_scenario):
        scenario_file = load_scenario(write_scenario())
        settings = scenario_file.chsh_settings()
        lists = scenario_file.setting_lists()

        assert settings.b.x == pytest.approx(settings.b.y)
        assert len(lists[0]) == 2 and len(lists[1]) == 2

    def test_optional_settings(self, write_scenario):
        scenario_file = load_scenario(write_scenario(settings=None, settings_a=None, settings_b=None))

        assert scenario_file.chsh_settings() is None
        assert scenario_file.setting_lists() is None

    def test_missing_file(self, tmp_path):
        with pytest.raises(ScenarioLoadError, match="not found"):
            load_scenario(tmp_path / "absent.json")

    def test_invalid_utf8(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_bytes(b"\xff\xfe{}")

        with pytest.raises(ScenarioLoadError, match="not valid UTF-8"):
            load_scenario(path)

    def test_invalid_json_names_position(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{\n  "inverse_width": 1.0,\n  oops\n}', encoding="utf-8")

        with pytest.raises(ScenarioLoadError, match="line 3, column 3"):
            load_scenario(path)

    def test_nonpositive_width(self, write_scenario):
        with pytest.raises(ScenarioLoadError, match="field 'inverse_width'"):
            load_scenario(write_scenario(inverse_width=0.0))

    def test_empty_region(self, write_scenario):
        with pytest.raises(ScenarioLoadError, match="region1"):
            load_scenario(write_scenario(region1={"lo": [1.0, 0.0, 0.0], "hi": [1.0, 1.0, 1.0]}))

    def test_zero_setting_vector(self, write_scenario):
        with pytest.raises(ScenarioLoadError, match="degenerate direction"):
            load_scenario(write_scenario(settings_a=[[0.0, 0.0, 0.0]]))

    def test_lists_must_come_together(self, write_scenario):
        with pytest.raises(ScenarioLoadError, match="together"):
            load_scenario(write_scenario(settings_b=None))

    def test_unknown_field(self, write_scenario):
        with pytest.raises(ScenarioLoadError, match="field 'detector'"):
            load_scenario(write_scenario(detector="x"))
