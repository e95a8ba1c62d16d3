#!/usr/bin/env python3
"""
Configuration Management Module
===============================
Flexible config with precedence: ENV > YAML > JSON > defaults

Usage:
    from config import Config

    # Load with auto-detection
    config = Config.load()  # Tries anterial.yaml, anterial.yml, then .anterial.json

    # Explicit loading
    config = Config.from_env()
    config = Config.from_yaml("anterial.yaml")
    config = Config.load_with_env("anterial.yaml")  # YAML with ENV overrides
"""

import os
import json
from pathlib import Path
from typing import Dict, Any, List, Optional
from dataclasses import dataclass, field, asdict

try:
    import yaml
    YAML_AVAILABLE = True
except ImportError:
    YAML_AVAILABLE = False

try:
    from dotenv import load_dotenv
    DOTENV_AVAILABLE = True
except ImportError:
    DOTENV_AVAILABLE = False


# Environment variable prefix
ENV_PREFIX = "ANTERIAL_"

YAML_FILES = ("anterial.yaml", "anterial.yml")
JSON_FILES = (".anterial.json",)


def get_env(name: str, default: str = "") -> str:
    """Get environment variable with prefix."""
    return os.environ.get(f"{ENV_PREFIX}{name}", os.environ.get(name, default))


def get_env_bool(name: str, default: bool = False) -> bool:
    """Get boolean environment variable."""
    val = get_env(name, "").lower()
    if val in ("1", "true", "yes", "on"):
        return True
    if val in ("0", "false", "no", "off"):
        return False
    return default


def get_env_int(name: str, default: Optional[int] = None) -> Optional[int]:
    val = get_env(name, "")
    if val:
        try:
            return int(val)
        except ValueError:
            pass
    return default


def get_env_float(name: str, default: Optional[float] = None) -> Optional[float]:
    val = get_env(name, "")
    if val:
        try:
            return float(val)
        except ValueError:
            pass
    return default


class ConfigError(Exception):
    """Base exception for configuration errors."""
    pass


class ConfigNotFoundError(ConfigError):
    """Raised when config file is not found."""
    pass


@dataclass
class SeparationConfig:
    """Guards for exponential checks."""
    bruteforce_max_nodes: int = 10
    equivalence_max_nodes: int = 12
    minimality_max_free: int = 20


@dataclass
class GaussianConfig:
    """Tolerances and simulation sizes."""
    zero_tol: float = 1e-9  # precision entries and parent coefficients
    ci_tol: float = 1e-8  # exact partial correlations
    alpha: float = 0.01
    samples: int = 10000
    gibbs_samples: int = 1000
    burn_in: int = 10000


@dataclass
class OutputConfig:
    float_digits: int = 17
    indent: int = 2


# (section, field, env name, parser)
_ENV_FIELDS = [
    ("separation", "bruteforce_max_nodes", "BRUTEFORCE_MAX_NODES", get_env_int),
    ("separation", "equivalence_max_nodes", "EQUIVALENCE_MAX_NODES", get_env_int),
    ("separation", "minimality_max_free", "MINIMALITY_MAX_FREE", get_env_int),
    ("gaussian", "zero_tol", "ZERO_TOL", get_env_float),
    ("gaussian", "ci_tol", "CI_TOL", get_env_float),
    ("gaussian", "alpha", "ALPHA", get_env_float),
    ("gaussian", "samples", "SAMPLES", get_env_int),
    ("gaussian", "gibbs_samples", "GIBBS_SAMPLES", get_env_int),
    ("gaussian", "burn_in", "BURN_IN", get_env_int),
    ("output", "float_digits", "FLOAT_DIGITS", get_env_int),
    ("output", "indent", "INDENT", get_env_int),
]


@dataclass
class Config:
    """
    Main configuration for the anterial command line.

    Supports loading from:
    - Environment variables (ANTERIAL_* prefix)
    - YAML files (anterial.yaml)
    - JSON files (.anterial.json)

    Precedence: ENV > YAML > JSON > defaults
    """

    seed: int = 7

    separation: SeparationConfig = field(default_factory=SeparationConfig)
    gaussian: GaussianConfig = field(default_factory=GaussianConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    # Logging
    log_level: str = "WARNING"
    verbose: bool = False

    def __post_init__(self):
        self.log_level = self.log_level.upper()

    @classmethod
    def load(cls, config_path: str = None) -> "Config":
        """
        Auto-detect and load configuration.

        Tries in order:
        1. Provided config_path
        2. anterial.yaml / anterial.yml in current directory
        3. .anterial.json
        Environment variables override whatever was found.
        """
        if DOTENV_AVAILABLE:
            load_dotenv()

        if config_path:
            return cls.load_with_env(config_path)

        for candidate in YAML_FILES + JSON_FILES:
            if Path(candidate).exists():
                return cls.load_with_env(candidate)

        return cls.from_env()

    @classmethod
    def from_env(cls) -> "Config":
        """
        Load configuration from environment variables.

        Supported variables (with ANTERIAL_ prefix or without):
            SEED: default RNG seed
            ZERO_TOL, CI_TOL, ALPHA: Gaussian tolerances
            SAMPLES, GIBBS_SAMPLES, BURN_IN: simulation sizes
            BRUTEFORCE_MAX_NODES, EQUIVALENCE_MAX_NODES, MINIMALITY_MAX_FREE
            FLOAT_DIGITS, INDENT: output format
            LOG_LEVEL, VERBOSE
        """
        return cls()._apply_env()

    def _apply_env(self) -> "Config":
        seed = get_env_int("SEED")
        if seed is not None:
            self.seed = seed

        for section, name, env, parse in _ENV_FIELDS:
            value = parse(env)
            if value is not None:
                setattr(getattr(self, section), name, value)

        log_level = get_env("LOG_LEVEL", "")
        if log_level:
            self.log_level = log_level.upper()

        self.verbose = get_env_bool("VERBOSE", self.verbose)
        return self

    @classmethod
    def from_yaml(cls, filepath: str) -> "Config":
        """Load configuration from YAML file."""
        if not YAML_AVAILABLE:
            raise ConfigError("PyYAML not installed. Run: pip install pyyaml")

        path = Path(filepath)
        if not path.exists():
            raise ConfigNotFoundError(f"Config file not found: {filepath}")

        with open(path, 'r') as f:
            data = yaml.safe_load(f) or {}

        return cls.from_dict(data)

    @classmethod
    def from_json(cls, filepath: str) -> "Config":
        """Load configuration from JSON file."""
        path = Path(filepath)
        if not path.exists():
            raise ConfigNotFoundError(f"Config file not found: {filepath}")

        with open(path, 'r') as f:
            try:
                data = json.load(f)
            except json.JSONDecodeError as e:
                raise ConfigError(f"Invalid JSON in {filepath}: {e}") from e

        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Config":
        """Create Config from dictionary; unknown keys are ignored."""
        config = cls()

        for section, section_cls in (("separation", SeparationConfig),
                                     ("gaussian", GaussianConfig),
                                     ("output", OutputConfig)):
            if section in data:
                current = asdict(getattr(config, section))
                current.update({k: v for k, v in (data[section] or {}).items() if k in current})
                setattr(config, section, section_cls(**current))

        config.seed = int(data.get("seed", config.seed))
        config.log_level = str(data.get("log_level", config.log_level)).upper()
        config.verbose = bool(data.get("verbose", config.verbose))

        return config

    @classmethod
    def load_with_env(cls, filepath: str) -> "Config":
        """
        Load from file with environment variable overrides.

        Precedence: ENV > File > defaults
        """
        if DOTENV_AVAILABLE:
            load_dotenv()

        path = Path(filepath)
        if path.suffix in ('.yaml', '.yml'):
            config = cls.from_yaml(filepath)
        elif path.suffix == '.json':
            config = cls.from_json(filepath)
        else:
            raise ConfigError(f"Unsupported config format: {filepath}")

        return config._apply_env()

    def validate(self) -> List[str]:
        """
        Validate configuration.

        Returns:
            List of validation errors (empty if valid)
        """
        errors = []

        if self.gaussian.zero_tol <= 0:
            errors.append("gaussian.zero_tol must be positive")

        if self.gaussian.ci_tol <= 0:
            errors.append("gaussian.ci_tol must be positive")

        if not 0 < self.gaussian.alpha < 1:
            errors.append("gaussian.alpha must be between 0 and 1")

        if self.gaussian.burn_in < 0:
            errors.append("gaussian.burn_in must be non-negative")

        if self.gaussian.samples < 1 or self.gaussian.gibbs_samples < 1:
            errors.append("sample sizes must be at least 1")

        for name, value in asdict(self.separation).items():
            if value < 2:
                errors.append(f"separation.{name} must be at least 2")

        if self.log_level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            errors.append(f"unknown log_level {self.log_level}")

        return errors

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "separation": asdict(self.separation),
            "gaussian": asdict(self.gaussian),
            "output": asdict(self.output),
            "log_level": self.log_level,
            "verbose": self.verbose,
        }

    def save_yaml(self, filepath: str) -> None:
        """Save configuration to YAML file."""
        if not YAML_AVAILABLE:
            raise ConfigError("PyYAML not installed")

        path = Path(filepath)
        path.parent.mkdir(parents=True, exist_ok=True)

        with open(path, 'w') as f:
            yaml.dump(self.to_dict(), f, default_flow_style=False, indent=2)

    def __repr__(self) -> str:
        return f"Config(seed={self.seed}, log_level={self.log_level})"


# Convenience function
def load_config(path: str = None) -> Config:
    """Load config with auto-detection."""
    return Config.load(path)


if __name__ == "__main__":
    config = Config.load()
    print(json.dumps(config.to_dict(), indent=2))

    errors = config.validate()
    if errors:
        print(f"\nValidation errors: {errors}")
    else:
        print("\n✓ Configuration valid!")
