"""Bundled lexicon fixtures."""

from importlib import resources
from pathlib import Path


def bundled_lexicon_path(polarity: str) -> Path:
    if polarity not in ("negative", "positive"):
        raise ValueError(f"unknown polarity {polarity!r}")
    return Path(resources.files(__package__) / f"{polarity}_words.txt")
