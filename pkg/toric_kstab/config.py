"""
Tool defaults persisted as JSON.
"""

import json
import logging
from pathlib import Path

logger = logging.getLogger(__name__)

CONFIG_FILE = Path("toric_kstab.json")

DEFAULTS = {
    "convention": "sup",
    "n": 2,
    "digits": 8,
    "format": "text",
    "max_terms": 4,
    "denominator_bound": 6,
    "rounding": "nearest",
}

_CHOICES = {
    "convention": ("euclidean", "sup", "lattice", "all"),
    "format": ("text", "json"),
    "rounding": ("nearest", "truncate"),
}
_POSITIVE_INTS = ("n", "digits", "max_terms", "denominator_bound")


class ConfigError(ValueError):
    """A config value is present but invalid."""


def validate_config(config):
    """Raise ConfigError for values outside their allowed range."""
    for key, choices in _CHOICES.items():
        if config[key] not in choices:
            raise ConfigError(f"config '{key}' must be one of {', '.join(choices)}, got {config[key]!r}")
    for key in _POSITIVE_INTS:
        value = config[key]
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise ConfigError(f"config '{key}' must be a positive integer, got {value!r}")
    return config


def load_config(config_file=None):
    """Load tool defaults, filling missing keys.

    Args:
        config_file: Path to the JSON file. Defaults to toric_kstab.json in
            the working directory.

    Returns:
        Config dict. Built-in defaults if the file is missing or corrupt.

    Raises:
        ConfigError: if a value is invalid.
    """
    if config_file is None:
        config_file = CONFIG_FILE

    config_path = Path(config_file)
    config = {}
    if config_path.exists():
        try:
            with open(config_path, 'r', encoding='utf-8') as f:
                config = json.load(f)
            if not isinstance(config, dict):
                logger.warning("%s does not hold a JSON object, using defaults", config_path)
                config = {}
        except json.JSONDecodeError as e:
            logger.warning("%s is corrupted (%s), using defaults", config_path, e)
            config = {}
        except OSError as e:
            logger.warning("cannot read %s (%s), using defaults", config_path, e)
            config = {}

    unknown = sorted(set(config) - set(DEFAULTS))
    if unknown:
        logger.warning("ignoring unknown config keys: %s", ", ".join(unknown))
        for key in unknown:
            del config[key]

    for key, value in DEFAULTS.items():
        config.setdefault(key, value)
    return validate_config(config)


def save_config(config, config_file=None):
    """Save tool defaults to file.

    Args:
        config: Config dict to save.
        config_file: Path to config file. Defaults to toric_kstab.json.
    """
    if config_file is None:
        config_file = CONFIG_FILE

    validate_config(config)
    with open(config_file, 'w', encoding='utf-8') as f:
        json.dump({key: config[key] for key in DEFAULTS}, f, indent=2, sort_keys=True)
