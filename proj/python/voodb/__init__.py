"""Discrete-event simulator for object-oriented database performance."""

from ._core import (
    Config,
    ConfigError,
    DeadlockError,
    Error,
    ModelError,
    config_keys,
    generate_database,
    half_width,
    presets,
    replay_buffer,
    required_replications,
    run,
    t_cdf,
    t_quantile,
)

__all__ = [
    "Config",
    "ConfigError",
    "DeadlockError",
    "Error",
    "ModelError",
    "config_keys",
    "generate_database",
    "half_width",
    "presets",
    "replay_buffer",
    "required_replications",
    "run",
    "t_cdf",
    "t_quantile",
]
