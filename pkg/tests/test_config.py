"""Unit tests for configuration loading and validation."""

from core.settings import load_config, setting
from scripts.validate_config import ConfigFile, main


def test_shipped_config_validates(capsys):
    """Test that config/cdl_config.yaml passes validation."""
    config = ConfigFile.model_validate(load_config())
    assert config.quantum.degree == 8
    assert config.scatter.degree == 12
    assert main() == 0
    assert "[OK]" in capsys.readouterr().out


def test_setting_defaults():
    """Test that missing keys fall back to the given default."""
    assert setting("cli", "schema", "x") == "cdl/1"
    assert setting("nowhere", "nothing", 5) == 5
