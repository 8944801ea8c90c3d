"""Shared fixtures."""

from pathlib import Path

import pytest

from hermops.utils.config import PRECISION_ENV, ConfigManager


@pytest.fixture(autouse=True)
def isolated_config(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    """Point the default config file at an empty temp dir and clear the precision override."""
    path = tmp_path / "hermops" / "config.json"
    monkeypatch.setattr(ConfigManager, "CONFIG_PATH", path)
    monkeypatch.delenv(PRECISION_ENV, raising=False)
    return path
