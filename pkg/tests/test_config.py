"""
Tests for configuration loading.
"""

import json

from vk.config import Config


def test_defaults(config):
    """Test default values."""
    assert config.get("seed") == 0
    assert config.get("vankampen.coordinate_range") == 10000
    assert config.get("nilpotent.max_class") == 6
    assert config.get("pgroup.max_order") == 10_000_000
    assert config.get("octa.max_minor_vertices") == 40
    assert config.get("missing.key", "fallback") == "fallback"


def test_environment_overrides(monkeypatch):
    """Test VK_ variables with double-underscore nesting."""
    monkeypatch.setenv("VK_VANKAMPEN__COORDINATE_RANGE", "500")
    monkeypatch.setenv("VK_LOGGING__LEVEL", "DEBUG")
    config = Config()
    assert config.get("vankampen.coordinate_range") == 500
    assert config.get("logging.level") == "DEBUG"
    assert config.get("vankampen.max_retries") == 8


def test_file_overrides(tmp_path, monkeypatch):
    """Test that a JSON file overrides defaults and the environment."""
    monkeypatch.setenv("VK_PGROUP__MAX_ORDER", "1000")
    path = tmp_path / "vk.json"
    path.write_text(json.dumps({"pgroup": {"max_order": 50}, "seed": 7}))
    config = Config(str(path))
    assert config.get("pgroup.max_order") == 50
    assert config.get("seed") == 7
    assert config.get("spatial.max_attempts") == 200


def test_missing_or_broken_file(tmp_path):
    """Test that unreadable files leave the defaults in place."""
    assert Config(str(tmp_path / "absent.json")).get("seed") == 0
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert Config(str(broken)).get("seed") == 0


def test_set_and_save(tmp_path, config):
    """Test dotted assignment and saving."""
    config.set("octa.max_minor_vertices", 12)
    config["complexes.max_collars"] = 2
    assert config["octa.max_minor_vertices"] == 12
    path = tmp_path / "out" / "vk.json"
    config.save(str(path))
    again = Config(str(path))
    assert again.get("complexes.max_collars") == 2
    assert again.to_dict() == config.to_dict()
