"""
Configuration loader for s2leval.

Functions for loading YAML configuration files into validated models:
- load_yaml_file: Load a YAML mapping from disk
- load_filter_config: FilterConfig for `s2leval filter --config`
- load_stratify_config: StratifyConfig for `s2leval stratify --config`
- load_eval_config: EvalConfig for `s2leval evaluate --config`
- apply_overrides: Merge CLI flag values over a loaded config
"""

from pathlib import Path
from typing import Any, TypeVar

import yaml
from pydantic import BaseModel, ValidationError

from s2leval.config.models import EvalConfig, FilterConfig, StratifyConfig
from s2leval.utils.errors import ConfigNotFoundError, InvalidConfigError

ModelT = TypeVar("ModelT", bound=BaseModel)


def expand_path(path: str | Path) -> Path:
    """
    Expand user home directory and resolve path.

    Args:
        path: Path that may contain ~ or relative components

    Returns:
        Resolved absolute Path
    """
    return Path(path).expanduser().resolve()


def load_yaml_file(path: Path) -> dict[str, Any]:
    """
    Load and parse a YAML file.

    Args:
        path: Path to YAML file

    Returns:
        Parsed YAML as dictionary (empty for an empty document)

    Raises:
        ConfigNotFoundError: If file doesn't exist
        InvalidConfigError: If YAML is invalid or not a mapping
    """
    if not path.exists():
        raise ConfigNotFoundError(
            message=f"Configuration file not found: {path}",
            suggestion=f"Create a config file at {path} or omit --config to use defaults",
        )

    try:
        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise InvalidConfigError(
            message=f"Failed to parse YAML in {path}: {e}",
            suggestion="Check the YAML syntax and ensure it's valid",
        ) from e
    except OSError as e:
        raise InvalidConfigError(
            message=f"Failed to read config file {path}: {e}",
            suggestion="Check file permissions and ensure the file is readable",
        ) from e

    if data is None:
        return {}
    if not isinstance(data, dict):
        raise InvalidConfigError(
            message=f"Invalid YAML in {path}: expected a dictionary",
            suggestion="Ensure the YAML file contains a mapping of option names to values",
        )
    return data


def _load_model(path: Path | None, model_cls: type[ModelT], label: str) -> ModelT:
    """Validate a YAML file (or nothing) into the given model."""
    data = load_yaml_file(expand_path(path)) if path is not None else {}
    try:
        return model_cls(**data)
    except ValidationError as e:
        raise InvalidConfigError(
            message=f"Invalid {label} configuration in {path}",
            suggestion=f"Fix the validation errors:\n{e}",
        ) from e


def load_filter_config(path: Path | None = None) -> FilterConfig:
    """
    Load filtering thresholds.

    Args:
        path: YAML file, or None for defaults

    Returns:
        FilterConfig instance

    Raises:
        ConfigNotFoundError: If the file doesn't exist
        InvalidConfigError: If the file is invalid
    """
    return _load_model(path, FilterConfig, "filter")


def load_stratify_config(path: Path | None = None) -> StratifyConfig:
    """Load stratification bucket edges (defaults when path is None)."""
    return _load_model(path, StratifyConfig, "stratify")


def load_eval_config(path: Path | None = None, **overrides: Any) -> EvalConfig:
    """
    Load an evaluation config and apply CLI overrides.

    Args:
        path: YAML file, or None for defaults
        **overrides: Field values from CLI flags; None values are ignored

    Returns:
        EvalConfig instance

    Raises:
        ConfigNotFoundError: If the file doesn't exist
        InvalidConfigError: If the file or an override is invalid
    """
    config = _load_model(path, EvalConfig, "evaluation")
    return apply_overrides(config, overrides)


def apply_overrides(config: ModelT, overrides: dict[str, Any]) -> ModelT:
    """
    Return a copy of config with non-None overrides applied and re-validated.

    Args:
        config: Loaded configuration
        overrides: Mapping of field name to value (None means "not given")

    Returns:
        New validated model instance

    Raises:
        InvalidConfigError: If an override fails validation
    """
    updates = {k: v for k, v in overrides.items() if v is not None}
    if not updates:
        return config

    data = config.model_dump()
    data.update(updates)
    try:
        return type(config)(**data)
    except ValidationError as e:
        raise InvalidConfigError(
            message="Invalid command-line option value",
            suggestion=f"Fix the validation errors:\n{e}",
        ) from e
