"""Two-photon position correlations mapped onto the spin-1/2 pair."""

import logging
import math
from typing import Sequence

import numpy as np

from ..exceptions import ArgumentError
from .model import PAIR_NORMALIZATION, joint_probabilities, local_amplitude
from .models import SPIN_HALF, InterferenceConfig

logger = logging.getLogger(__name__)

MIN_VISIBILITY_SAMPLES = 8


def _detector_amplitude(cfg: InterferenceConfig, x: float):
    # (1/sqrt 2) exp(i alpha k (x - x0) / 2): the spin-1/2 amplitude at angle alpha k x
    # with the internal phase alpha k x0.
    return local_amplitude(cfg.alpha * cfg.k * x, cfg.alpha * cfg.k * cfg.x0, SPIN_HALF, 1)


def coincidence_probability(cfg: InterferenceConfig, x1: float, x2: float) -> float:
    """Coincidence probability for detectors at x1 and x2.

    Equals (1 + cos k alpha (x1 - x2)) / 2 and does not depend on x0.
    """
    c1 = _detector_amplitude(cfg, x1)
    c2 = _detector_amplitude(cfg, x2)
    u = PAIR_NORMALIZATION * (c1.value * c2.conjugate().value).real
    return joint_probabilities(max(-1.0, min(1.0, u))).coincidence


def fringe_period(cfg: InterferenceConfig) -> float:
    """Detector separation over which the pattern repeats: 2 pi / (k |alpha|)."""
    if cfg.alpha == 0:
        return math.inf
    return 2 * math.pi / (cfg.k * abs(cfg.alpha))


def scan(cfg: InterferenceConfig, x1: float, x2_values: Sequence[float]) -> np.ndarray:
    """Coincidence probability with detector 1 fixed and detector 2 scanned."""
    return np.array([coincidence_probability(cfg, x1, x2) for x2 in x2_values], dtype=float)


def fringe_offsets(cfg: InterferenceConfig, samples: int) -> np.ndarray:
    """Sample separations x1 - x2 over one fringe period.

    The grid always contains 0 and half a period, so both the bright and the
    first dark fringe are sampled.
    """
    if samples < MIN_VISIBILITY_SAMPLES:
        raise ArgumentError(f"Need at least {MIN_VISIBILITY_SAMPLES} samples, got {samples}")
    period = fringe_period(cfg)
    if not math.isfinite(period):
        raise ArgumentError("alpha = 0 gives a flat pattern with no fringe period")
    half = samples // 2
    return period * np.arange(samples) / (2 * half)


def visibility(cfg: InterferenceConfig, samples: int = 256, offset: float = 0.0) -> float:
    """Fringe visibility (max - min) / (max + min) over one period.

    Args:
        cfg: Interference configuration
        samples: Number of sample points (at least 8)
        offset: Common translation applied to both detectors

    Returns:
        Visibility, 1.0 for the full-contrast pattern
    """
    separations = fringe_offsets(cfg, samples)
    pattern = np.array(
        [coincidence_probability(cfg, offset + d, offset) for d in separations], dtype=float
    )
    high, low = float(pattern.max()), float(pattern.min())
    logger.debug(f"Fringe scan over {samples} samples: max={high:.6f} min={low:.3e}")
    return (high - low) / (high + low)
