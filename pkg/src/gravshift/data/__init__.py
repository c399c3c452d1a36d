"""Packaged default registries (bodies, experiments) and their lookup rule."""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

ENV_DATA_DIR = "GRAVSHIFT_DATA_DIR"


def data_file(name: str) -> Path:
    """Resolve a registry file: $GRAVSHIFT_DATA_DIR/<name> if set, else packaged."""
    override = os.environ.get(ENV_DATA_DIR)
    if override:
        return Path(override) / name
    with resources.as_file(resources.files(__package__) / name) as p:
        return Path(p)
