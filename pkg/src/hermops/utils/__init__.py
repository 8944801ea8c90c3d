"""Utility modules for hermops."""

from hermops.utils.config import ConfigManager, precision_from_env
from hermops.utils.validator import ParameterValidator, ValidationResult

__all__ = [
    "ConfigManager",
    "ParameterValidator",
    "ValidationResult",
    "precision_from_env",
]
