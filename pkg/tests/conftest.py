"""Shared fixtures for the localamp tests."""

import math

import numpy as np
import pytest

from localamp.formalism.models import SPIN_HALF, PairConfig


@pytest.fixture
def rng():
    """Seeded generator for randomized property checks."""
    return np.random.default_rng(20240601)


@pytest.fixture
def separation_grid():
    """360 uniformly spaced separations over [0, 2 pi)."""
    return [2 * math.pi * j / 360 for j in range(360)]


@pytest.fixture
def singlet_sixty_degrees():
    """Singlet pair with analyzers pi/3 apart (P = -1/2)."""
    return PairConfig(spin=SPIN_HALF, phi0=math.pi, theta1=0.0, theta2=math.pi / 3)


@pytest.fixture
def no_env_output_dir(monkeypatch):
    """Remove the output directory override from the environment."""
    monkeypatch.delenv("LOCALAMP_OUTPUT_DIR", raising=False)
