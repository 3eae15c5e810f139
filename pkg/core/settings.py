"""
ClusterDilog — Configuration Loader

Reads config/cdl_config.yaml once per process. The CDL_CONFIG environment
variable (also picked up from a local .env file) points at an alternative file.
"""

import logging
import os
from functools import lru_cache
from pathlib import Path

import yaml
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).parent.parent / "config" / "cdl_config.yaml"


def config_path() -> Path:
    """Resolve the configuration file, honouring CDL_CONFIG."""
    load_dotenv()
    override = os.getenv("CDL_CONFIG")
    return Path(override) if override else DEFAULT_CONFIG_PATH


@lru_cache(maxsize=1)
def load_config() -> dict:
    """Load configuration from cdl_config.yaml. Missing file means all defaults."""
    path = config_path()
    if not path.exists():
        logger.warning("Config file %s not found, using built-in defaults", path)
        return {}
    with open(path) as f:
        return yaml.safe_load(f) or {}


def setting(section: str, key: str, default):
    """Return config[section][key] or the default."""
    return load_config().get(section, {}).get(key, default)
