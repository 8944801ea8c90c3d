"""Configuration management for hermops."""

import json
import os
from pathlib import Path

from hermops.errors import InvalidPrecision
from hermops.models import Config
from hermops.scalar import check_precision

PRECISION_ENV = "HERMOPS_PRECISION"


class ConfigManager:
    """Manages configuration persistence."""

    CONFIG_PATH = Path.home() / ".config" / "hermops" / "config.json"

    def __init__(self, config_path: Path | None = None):
        """Initialize ConfigManager with optional custom path."""
        self.config_path = config_path or self.CONFIG_PATH

    def load(self) -> Config:
        """Load configuration from file, returning defaults if not found."""
        if not self.config_path.exists():
            return Config.default()

        defaults = Config.default()
        try:
            with open(self.config_path, "r") as f:
                data = json.load(f)
            return Config(
                precision=int(data.get("precision", defaults.precision)),
                tolerance_small=str(data.get("tolerance_small", defaults.tolerance_small)),
                tolerance_medium=str(data.get("tolerance_medium", defaults.tolerance_medium)),
                tolerance_large=str(data.get("tolerance_large", defaults.tolerance_large)),
                output_format=data.get("output_format", defaults.output_format),
                convention=data.get("convention", defaults.convention),
                lambda_samples=list(data.get("lambda_samples", defaults.lambda_samples)),
            )
        except (json.JSONDecodeError, KeyError, TypeError, ValueError, AttributeError):
            return Config.default()

    def save(self, config: Config) -> None:
        """Save configuration to file."""
        self.config_path.parent.mkdir(parents=True, exist_ok=True)

        data = {
            "precision": config.precision,
            "tolerance_small": config.tolerance_small,
            "tolerance_medium": config.tolerance_medium,
            "tolerance_large": config.tolerance_large,
            "output_format": config.output_format,
            "convention": config.convention,
            "lambda_samples": config.lambda_samples,
        }

        with open(self.config_path, "w") as f:
            json.dump(data, f, indent=2)


def precision_from_env(default: int, environ: dict[str, str] | None = None) -> int:
    """Apply the HERMOPS_PRECISION override.

    Raises:
        InvalidPrecision: If the variable is set to anything but an integer >= 15.
    """
    environ = os.environ if environ is None else environ
    raw = environ.get(PRECISION_ENV)
    if raw is None or not raw.strip():
        return default
    try:
        digits = int(raw)
    except ValueError:
        raise InvalidPrecision(raw) from None
    return check_precision(digits)
