"""Shared fixtures: the shipped baseline design and solver settings."""

from pathlib import Path

import pytest

from snapgrip.config import build_design, build_solver_settings, load_config

REPO_ROOT = Path(__file__).resolve().parents[1]
BASELINE_CFG = REPO_ROOT / "configs" / "baseline.cfg"


@pytest.fixture(scope="session")
def baseline_doc():
    return load_config(BASELINE_CFG)


@pytest.fixture(scope="session")
def baseline(baseline_doc):
    return build_design(baseline_doc)


@pytest.fixture(scope="session")
def settings(baseline_doc):
    return build_solver_settings(baseline_doc)
