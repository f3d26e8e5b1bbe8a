"""Configuration management with environment variable support."""

import copy
import json
import os
from pathlib import Path
from typing import Any, Dict, Optional

from .core.exceptions import ConfigError


class Config:
    """Configuration manager with environment variable override support."""

    DEFAULT_CONFIG = {
        "specfun": {
            "x_switch": 0.75,  # series below, connection expansion above
            "eps_abs": 1e-16,
            "n_terms_max": 10000,
            "delta_pole": 1e-13,
            "consecutive_small": 3
        },
        "adiabatic": {
            "scan_points": 64,
            "scan_delta": 1e-10,
            "xtol": 1e-13,
            "residual_rtol": 1e-9,
            "max_bracket_expansions": 6
        },
        "matrix": {
            "extra_nodes": 8,
            "max_size": 256
        },
        "phase": {
            "rho_min": 0.75,
            "rho_switch": 1000.0,
            "points_per_decade": 16,
            "k_rho_max": 20.0,
            "max_step": 0.005,
            "steps_per_unit_phase": 40,
            "max_retries": 3,
            "consistency_tol": 1e-4
        },
        "output": {
            "format": "csv",
            "digits": 12,
            "pretty_print": True
        },
        "reference": {
            "path": None  # Set via HYPERADIA_REF_DATA env var
        },
        "runtime": {
            "jobs": 1
        },
        "logging": {
            "level": "INFO",
            "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            "file": None  # Set via HYPERADIA_LOG_FILE env var
        }
    }

    ENV_VAR_MAPPING = {
        "HYPERADIA_REF_DATA": "reference.path",
        "HYPERADIA_X_SWITCH": "specfun.x_switch",
        "HYPERADIA_JOBS": "runtime.jobs",
        "HYPERADIA_OUTPUT_FORMAT": "output.format",
        "HYPERADIA_LOG_LEVEL": "logging.level",
        "HYPERADIA_LOG_FILE": "logging.file"
    }

    def __init__(self, config_file: Optional[str] = None):
        """Initialize configuration.

        Args:
            config_file: Optional path to a JSON configuration file
        """
        self.config = copy.deepcopy(self.DEFAULT_CONFIG)

        if config_file:
            self.load_from_file(config_file)

        self.load_from_env()

    def load_from_file(self, config_file: str):
        """Load configuration from JSON file.

        Args:
            config_file: Path to configuration file
        """
        path = Path(config_file)
        if not path.exists():
            raise FileNotFoundError(f"Configuration file not found: {config_file}")
        if path.suffix != '.json':
            raise ConfigError(f"Unsupported config file format: {path.suffix}. Use .json files.")

        with open(path, 'r') as f:
            file_config = json.load(f)

        self.config = self._deep_merge(self.config, file_config)

    def load_from_env(self):
        """Load configuration from environment variables."""
        for env_var, config_path in self.ENV_VAR_MAPPING.items():
            value = os.environ.get(env_var)
            if value is not None:
                self._set_nested(config_path, value)

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value by dot-notation key.

        Args:
            key: Dot-notation key (e.g., 'phase.rho_switch')
            default: Default value if key not found

        Returns:
            Configuration value
        """
        value: Any = self.config
        for k in key.split('.'):
            if isinstance(value, dict):
                value = value.get(k)
                if value is None:
                    return default
            else:
                return default
        return value

    def set(self, key: str, value: Any):
        """Set configuration value by dot-notation key.

        Args:
            key: Dot-notation key
            value: Value to set; strings are coerced like environment values
        """
        self._set_nested(key, value)

    def apply_overrides(self, overrides):
        """Apply ``KEY=VAL`` strings (the CLI ``--tol-override`` option)."""
        for item in overrides or ():
            if '=' not in item:
                raise ConfigError(f"Override must look like KEY=VAL, got {item!r}")
            key, value = item.split('=', 1)
            key = key.strip()
            if not self._has_key(key):
                raise ConfigError(f"Unknown configuration key in override: {key}")
            self._set_nested(key, value.strip())

    def _has_key(self, key: str) -> bool:
        current: Any = self.config
        for k in key.split('.'):
            if not isinstance(current, dict) or k not in current:
                return False
            current = current[k]
        return not isinstance(current, dict)

    def _set_nested(self, key: str, value: Any):
        """Set nested configuration value."""
        keys = key.split('.')
        current = self.config
        for k in keys[:-1]:
            if k not in current:
                current[k] = {}
            current = current[k]

        current[keys[-1]] = self._coerce(value)

    @staticmethod
    def _coerce(value: Any) -> Any:
        if not isinstance(value, str):
            return value
        lowered = value.lower()
        if lowered in ['true', 'false']:
            return lowered == 'true'
        if lowered in ['none', 'null']:
            return None
        if value.lstrip('-').isdigit():
            return int(value)
        if ',' in value:
            return [v.strip() for v in value.split(',')]
        try:
            return float(value)
        except ValueError:
            return value

    def _deep_merge(self, base: Dict, override: Dict) -> Dict:
        """Deep merge two dictionaries."""
        result = base.copy()

        for key, value in override.items():
            if key in result and isinstance(result[key], dict) and isinstance(value, dict):
                result[key] = self._deep_merge(result[key], value)
            else:
                result[key] = value

        return result

    def to_dict(self) -> Dict[str, Any]:
        """Get configuration as dictionary."""
        return copy.deepcopy(self.config)

    def save(self, file_path: str):
        """Save configuration to file.

        Args:
            file_path: Path to save configuration
        """
        with open(Path(file_path), 'w') as f:
            json.dump(self.config, f, indent=2, sort_keys=True)
