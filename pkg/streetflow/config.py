"""
Configuration management for Streetflow.

This module provides the Config class for loading, validating,
and saving run configuration from JSON or YAML files. Search bounds can
also be overridden from the environment (``STREETFLOW_MAX_DEPTH``), with a
local ``.env`` file read first.
"""

import enum
import json
import os
from enum import Enum
from pathlib import Path
from typing import Optional, Union

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, model_validator

from streetflow.errors import ConfigValidationError

CONFIG_CANDIDATES = (
    "streetflow.config.json",
    "streetflow.config.yaml",
    "streetflow.config.yml",
)
MAX_DEPTH_ENV = "STREETFLOW_MAX_DEPTH"


class OutputFormat(str, Enum):
    """
    Output format of the CLI commands that can draw.
    """

    JSON = "json"
    SVG = "svg"


class OracleConfig(BaseModel):
    """
    Configuration for the geometric oracle.
    """

    max_doublings: int = Field(40, description="Doublings of the flow-cost bound before a ray search gives up")
    sample_points: int = Field(200, description="Sample points used by simulate")

    @model_validator(mode="after")
    def check_positive(self):
        if self.max_doublings < 1 or self.sample_points < 1:
            raise ConfigValidationError("oracle bounds must be positive")
        return self


class TimeProfileConfig(BaseModel):
    """
    Saddle constants of the passage-time profiles.
    """

    c1: float = Field(1.0, description="Log constant at the first street boundary")
    c2: float = Field(1.0, description="Log constant at the second street boundary")
    t0: float = Field(0.0, description="Constant offset of every profile")

    @model_validator(mode="after")
    def check_constants(self):
        if self.c1 <= 0 or self.c2 <= 0:
            raise ConfigValidationError(f"c1 and c2 must be positive, got {self.c1} and {self.c2}")
        return self


class Config(BaseModel):
    """
    Handles loading, validating, and saving Streetflow configuration files using Pydantic.

    Usage:
        config = Config.load()
        print(config.oracle.max_doublings)
    """

    max_depth: int = Field(16, description="Longest semigroup word enumerated")
    hard_depth_limit: int = Field(64, description="Upper limit for max_depth")
    max_steps: int = Field(100000, description="Longest orbit coded")
    seed: int = Field(0, description="Seed of sampled oracle checks")
    output_format: OutputFormat = Field(OutputFormat.JSON, description="Default output format")
    oracle: OracleConfig = Field(default_factory=OracleConfig, description="Oracle configuration")
    time_profile: TimeProfileConfig = Field(default_factory=TimeProfileConfig, description="Passage-time constants")
    config_path: Optional[str] = Field(default=None, description="Path to the configuration file")

    @model_validator(mode="after")
    def check_bounds(self):
        """
        Validates the search bounds.
        """
        if self.max_depth < 1 or self.max_steps < 1:
            raise ConfigValidationError("max_depth and max_steps must be positive")
        if self.max_depth > self.hard_depth_limit:
            raise ConfigValidationError(
                f"max_depth {self.max_depth} exceeds hard_depth_limit {self.hard_depth_limit}"
            )
        return self

    @classmethod
    def load(cls, config_path: Optional[Union[str, Path]] = None) -> "Config":
        """
        Load configuration from file (JSON or YAML) or use defaults, then
        apply environment overrides.
        """
        path = str(config_path) if config_path else None
        if not path:
            path = next((c for c in CONFIG_CANDIDATES if os.path.exists(c)), None)
        data = {}
        if path:
            try:
                with open(path, "r") as f:
                    if path.endswith(".yaml") or path.endswith(".yml"):
                        data = yaml.safe_load(f) or {}
                    else:
                        data = json.load(f)
            except FileNotFoundError:
                data = {}
            except (json.JSONDecodeError, yaml.YAMLError) as e:
                raise ConfigValidationError(f"cannot read {path}: {e}")
        load_dotenv()
        env_depth = os.getenv(MAX_DEPTH_ENV)
        if env_depth:
            try:
                data["max_depth"] = int(env_depth)
            except ValueError:
                raise ConfigValidationError(f"{MAX_DEPTH_ENV} must be an integer, got {env_depth!r}")
        try:
            obj = cls(**data)
            obj.config_path = path
            return obj
        except ValidationError as e:
            raise ConfigValidationError(str(e))

    def save(self, path: Optional[str] = None, format: str = "json") -> None:
        """
        Save configuration to file.
        """
        save_path = path or self.config_path or CONFIG_CANDIDATES[0]

        def enum_to_value(obj):
            if isinstance(obj, dict):
                return {k: enum_to_value(v) for k, v in obj.items()}
            elif isinstance(obj, list):
                return [enum_to_value(i) for i in obj]
            elif isinstance(obj, enum.Enum):
                return obj.value
            return obj

        data = enum_to_value(self.model_dump(exclude={"config_path"}))
        with open(save_path, "w") as f:
            if format.lower() == "yaml":
                yaml.dump(data, f)
            else:
                json.dump(data, f, indent=2)
