"""Pipeline orchestration: configuration, manifests, stages, figures."""

from .config import ConfigError, RunConfig, STRATEGIES
from .manifest import (
    DependencyError,
    Manifest,
    ManifestError,
    StageConflictError,
    StaleInputError,
    file_digest,
)

__all__ = [
    "ConfigError",
    "DependencyError",
    "Manifest",
    "ManifestError",
    "RunConfig",
    "STRATEGIES",
    "StageConflictError",
    "StaleInputError",
    "file_digest",
]
