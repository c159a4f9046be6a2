"""Configuration manager for localamp runs."""

import argparse
import logging
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from .exceptions import ArgumentError

logger = logging.getLogger(__name__)

OUTPUT_DIR_ENV = "LOCALAMP_OUTPUT_DIR"


@dataclass
class InterferenceOptions:
    """Defaults for the two-photon interference pattern."""
    k: float = 1.0
    alpha: float = 1.0
    x0: float = 0.0


@dataclass
class RunConfig:
    """Options shared by the CLI subcommands."""
    output_dir: str = "."
    points: int = 360
    seed: int = 42
    radians: bool = False
    plot: bool = False
    events: int = 1_000_000
    workers: int = 1
    chunk_size: int = 1 << 16
    chsh_grid: int = 9
    interference: InterferenceOptions = None

    def __post_init__(self):
        if self.interference is None:
            self.interference = InterferenceOptions()

    def resolve_output(self, path: str) -> Path:
        """Resolve a relative output path against the output directory."""
        candidate = Path(path).expanduser()
        if candidate.is_absolute():
            return candidate
        return Path(self.output_dir).expanduser() / candidate


class ConfigManager:
    """Loads and validates run configuration.

    Precedence: built-in defaults, then the YAML file, then command-line flags.
    """

    def __init__(self, config_path: Optional[str] = None):
        """Initialize the configuration manager.

        Args:
            config_path: Path to an optional YAML configuration file
        """
        self.config_path = config_path
        self.config = RunConfig(output_dir=os.environ.get(OUTPUT_DIR_ENV, "."))

        if config_path:
            self._load_config()

    def _load_config(self) -> None:
        """Load key-value settings from the YAML file."""
        try:
            with open(self.config_path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
        except (OSError, yaml.YAMLError) as e:
            logger.error(f"Error loading configuration: {e}")
            raise ArgumentError(f"Cannot read configuration {self.config_path}: {e}") from e

        if not isinstance(data, dict):
            raise ArgumentError(f"Configuration {self.config_path} must be a mapping")

        known = {f.name for f in fields(RunConfig)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ArgumentError(f"Unknown configuration keys: {', '.join(unknown)}")

        interference = data.pop("interference", None) or {}
        if not isinstance(interference, dict):
            raise ArgumentError("'interference' must be a mapping with k, alpha and x0")
        try:
            options = replace(self.config.interference, **interference)
        except TypeError as e:
            raise ArgumentError(f"Invalid interference options: {e}") from e
        for key, value in interference.items():
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ArgumentError(f"Interference option '{key}' must be a number, got {value!r}")

        for key, value in data.items():
            expected = type(getattr(self.config, key))
            if not isinstance(value, expected) or (expected is int and isinstance(value, bool)):
                raise ArgumentError(
                    f"Configuration key '{key}' must be {expected.__name__}, got {value!r}"
                )

        self.config = replace(self.config, interference=options, **data)
        logger.info(f"Loaded configuration from {self.config_path}")
        logger.debug(f"Configuration: {self.config}")

    def apply_overrides(self, args: argparse.Namespace) -> RunConfig:
        """Merge command-line flags over the loaded configuration.

        Flags left at ``None`` keep the configured value.
        """
        overrides: Dict[str, Any] = {}
        for name in (
            "points", "seed", "events", "workers", "chunk_size", "chsh_grid", "radians", "plot"
        ):
            value = getattr(args, name, None)
            if value is not None:
                overrides[name] = value
        if getattr(args, "output_dir", None):
            overrides["output_dir"] = args.output_dir

        interference = {
            name: getattr(args, name)
            for name in ("k", "alpha", "x0")
            if getattr(args, name, None) is not None
        }
        if interference:
            overrides["interference"] = replace(self.config.interference, **interference)

        self.config = replace(self.config, **overrides)
        self.validate()
        return self.config

    def validate(self) -> None:
        """Validate the merged configuration."""
        config = self.config
        if config.points < 2:
            raise ArgumentError(f"points must be at least 2, got {config.points}")
        if config.events < 1:
            raise ArgumentError(f"events must be at least 1, got {config.events}")
        if config.workers < 1:
            raise ArgumentError(f"workers must be at least 1, got {config.workers}")
        if config.chunk_size < 1:
            raise ArgumentError(f"chunk_size must be at least 1, got {config.chunk_size}")
        if config.chsh_grid < 2:
            raise ArgumentError(f"chsh_grid must be at least 2, got {config.chsh_grid}")
        if not 0 <= config.seed < 1 << 64:
            raise ArgumentError(f"seed must be an unsigned 64-bit integer, got {config.seed}")
        if config.interference.k <= 0:
            raise ArgumentError(f"interference k must be positive, got {config.interference.k}")
