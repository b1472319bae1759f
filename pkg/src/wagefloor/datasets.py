"""Paths to the bundled annual fixtures."""

from __future__ import annotations

from pathlib import Path

_DATA_DIR = Path(__file__).parent / "data"


def us_annual_path() -> Path:
    """1938-2019 stylized United States series."""
    return _DATA_DIR / "us_annual.csv"


def hungary_annual_path() -> Path:
    """1999-2003 stylized Hungary series around the 2000-2002 doubling."""
    return _DATA_DIR / "hungary_annual.csv"
