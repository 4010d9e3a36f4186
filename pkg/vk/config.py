"""
Configuration module for the vk toolkit.
"""

import copy
import json
import os
from pathlib import Path
from typing import Any, Dict, Optional

from vk.utils.logger import get_logger


class Config:
    """Configuration class for the vk toolkit."""

    # Default configuration values
    DEFAULTS = {
        "version": "0.1.0",
        "seed": 0,
        "logging": {
            "level": "INFO",
            "file": None,
        },
        "vankampen": {
            "coordinate_range": 10000,
            "max_retries": 8,
            "seeds": 5,
        },
        "complexes": {
            "boundary_subdivision": 3,
            "max_collars": 4,
        },
        "nilpotent": {
            "max_class": 6,
        },
        "pgroup": {
            "max_order": 10_000_000,
        },
        "spatial": {
            "coordinate_range": 1000,
            "max_attempts": 200,
        },
        "octa": {
            "max_minor_vertices": 40,
        },
    }

    ENV_PREFIX = "VK_"

    def __init__(self, config_path: Optional[str] = None):
        """
        Initialize configuration.

        Args:
            config_path: Optional JSON file whose values override defaults
                and environment variables.
        """
        self.logger = get_logger(__name__)
        self._config = copy.deepcopy(self.DEFAULTS)
        self._update_from_env()

        if config_path:
            self._load_from_file(config_path)

        self.logger.debug("Configuration initialized")

    def _update_from_env(self) -> None:
        """Update configuration from ``VK_`` environment variables.

        Nesting levels are separated by a double underscore, e.g.
        ``VK_VANKAMPEN__COORDINATE_RANGE=500``.
        """
        for key in os.environ:
            if key.startswith(self.ENV_PREFIX):
                config_key = key[len(self.ENV_PREFIX):].lower()
                value: Any = os.environ[key]
                try:
                    value = json.loads(value)
                except json.JSONDecodeError:
                    pass
                self._set_nested_value(config_key.split("__"), value)

    def _load_from_file(self, config_path: str) -> None:
        """Load configuration from file."""
        path = Path(config_path)
        if not path.exists():
            self.logger.warning(f"Configuration file not found: {path}")
            return

        try:
            with open(path) as f:
                file_config = json.load(f)
            self._update_recursive(self._config, file_config)
            self.logger.info(f"Loaded configuration from {path}")
        except (OSError, json.JSONDecodeError) as e:
            self.logger.error(f"Failed to load configuration file: {str(e)}")

    def _update_recursive(self, base: Dict, update: Dict) -> None:
        """Recursively update nested dictionary."""
        for key, value in update.items():
            if key in base and isinstance(base[key], dict) and isinstance(value, dict):
                self._update_recursive(base[key], value)
            else:
                base[key] = value

    def _set_nested_value(self, keys: list, value: Any) -> None:
        """Set value in nested dictionary using key path."""
        current = self._config
        for key in keys[:-1]:
            if key not in current or not isinstance(current[key], dict):
                current[key] = {}
            current = current[key]
        current[keys[-1]] = value

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value by dotted key."""
        try:
            value = self._config
            for k in key.split("."):
                value = value[k]
            return value
        except (KeyError, TypeError):
            return default

    def set(self, key: str, value: Any) -> None:
        """Set configuration value by dotted key."""
        self._set_nested_value(key.split("."), value)

    def to_dict(self) -> Dict[str, Any]:
        """Convert configuration to dictionary."""
        return copy.deepcopy(self._config)

    def save(self, config_path: str) -> None:
        """Save configuration to file."""
        path = Path(config_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as f:
            json.dump(self._config, f, indent=4)
        self.logger.info(f"Saved configuration to {path}")

    def __getitem__(self, key: str) -> Any:
        """Dictionary-style access to configuration values."""
        return self.get(key)

    def __setitem__(self, key: str, value: Any) -> None:
        """Dictionary-style setting of configuration values."""
        self.set(key, value)
