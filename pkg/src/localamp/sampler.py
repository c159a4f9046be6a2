"""Seeded Monte Carlo generation of pair measurement events.

Events are drawn from the joint outcome distribution of the local-amplitude
model; no per-particle outcome rule is assumed. The run is split into
fixed-size chunks and chunk ``i`` draws from a Philox generator keyed by
``SeedSequence(seed, spawn_key=(i,))``, so the tallies depend only on
(config, n_events, seed, chunk_size) and never on the number of workers.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np
from joblib import Parallel, delayed
from tqdm import tqdm

from .exceptions import ArgumentError
from .formalism.model import (
    correlation_from_internal_phases,
    pair_correlation,
)
from .formalism.models import PairConfig

logger = logging.getLogger(__name__)

GENERATOR_NAME = "numpy Philox4x64-10"
DEFAULT_CHUNK_SIZE = 1 << 16
MAX_SEED = (1 << 64) - 1


@dataclass(frozen=True)
class OutcomeCounts:
    """Tallies of the four joint outcomes."""
    n_pp: int = 0
    n_mm: int = 0
    n_pm: int = 0
    n_mp: int = 0

    def __post_init__(self):
        for name in ("n_pp", "n_mm", "n_pm", "n_mp"):
            value = getattr(self, name)
            if int(value) != value or value < 0:
                raise ArgumentError(f"{name} must be a non-negative integer, got {value!r}")
            object.__setattr__(self, name, int(value))

    @property
    def n_total(self) -> int:
        return self.n_pp + self.n_mm + self.n_pm + self.n_mp

    @property
    def plus_first(self) -> int:
        """Events with + at analyzer 1."""
        return self.n_pp + self.n_pm

    @property
    def plus_second(self) -> int:
        """Events with + at analyzer 2."""
        return self.n_pp + self.n_mp

    def __add__(self, other: "OutcomeCounts") -> "OutcomeCounts":
        return OutcomeCounts(
            self.n_pp + other.n_pp,
            self.n_mm + other.n_mm,
            self.n_pm + other.n_pm,
            self.n_mp + other.n_mp,
        )

    def to_dict(self) -> Dict[str, int]:
        return {
            "n_pp": self.n_pp,
            "n_mm": self.n_mm,
            "n_pm": self.n_pm,
            "n_mp": self.n_mp,
            "n_total": self.n_total,
        }


@dataclass(frozen=True)
class SamplerRun:
    """One reproducible sampling job.

    With ``random_internal_phase`` every pair gets its own uniformly drawn
    internal phase and U is recomputed from the amplitudes for that pair.
    """
    config: PairConfig
    n_events: int
    seed: int
    chunk_size: int = DEFAULT_CHUNK_SIZE
    random_internal_phase: bool = False

    def __post_init__(self):
        if self.n_events < 1:
            raise ArgumentError(f"n_events must be at least 1, got {self.n_events}")
        if not 0 <= self.seed <= MAX_SEED:
            raise ArgumentError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.chunk_size < 1:
            raise ArgumentError(f"chunk_size must be at least 1, got {self.chunk_size}")

    def chunks(self) -> List[Tuple[int, int]]:
        """(chunk index, events in chunk) for the whole run."""
        full, rest = divmod(self.n_events, self.chunk_size)
        sizes = [self.chunk_size] * full + ([rest] if rest else [])
        return list(enumerate(sizes))


def chunk_generator(seed: int, chunk_index: int) -> np.random.Generator:
    """Generator for one chunk, independent of every other chunk."""
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(chunk_index,))
    return np.random.Generator(np.random.Philox(sequence))


def _sample_chunk(run: SamplerRun, chunk_index: int, size: int) -> OutcomeCounts:
    rng = chunk_generator(run.seed, chunk_index)
    config = run.config
    if not run.random_internal_phase:
        distribution = pair_correlation(config.spin, config.phi0, config.theta1, config.theta2)
        return OutcomeCounts(*(int(n) for n in rng.multinomial(size, distribution.probabilities)))

    phi = rng.uniform(0.0, 2 * math.pi, size)
    u = correlation_from_internal_phases(
        config.spin, config.theta1, config.theta2, phi, phi + config.phi0
    )
    coincidence = u * u
    r = rng.random(size)
    n_pp = int(np.count_nonzero(r < coincidence / 2))
    n_mm = int(np.count_nonzero((r >= coincidence / 2) & (r < coincidence)))
    n_pm = int(np.count_nonzero((r >= coincidence) & (r < (1 + coincidence) / 2)))
    return OutcomeCounts(n_pp, n_mm, n_pm, size - n_pp - n_mm - n_pm)


def sample_events(run: SamplerRun, workers: int = 1, progress: bool = False) -> OutcomeCounts:
    """Draw ``run.n_events`` joint outcomes.

    Args:
        run: Sampling job
        workers: Number of threads evaluating chunks
        progress: Show a progress bar over chunks

    Returns:
        Outcome tallies, bit-identical for any number of workers
    """
    chunks = run.chunks()
    logger.debug(f"Sampling {run.n_events} events in {len(chunks)} chunk(s), {workers} worker(s)")
    results = Parallel(n_jobs=workers, prefer="threads")(
        delayed(_sample_chunk)(run, index, size)
        for index, size in tqdm(chunks, desc="Sampling", disable=not progress)
    )
    total = OutcomeCounts()
    for counts in results:
        total = total + counts
    return total


def estimate_correlation(counts: OutcomeCounts) -> float:
    """(coincidences - anticoincidences) / events."""
    if counts.n_total < 1:
        raise ArgumentError("Cannot estimate a correlation from empty counts")
    return (counts.n_pp + counts.n_mm - counts.n_pm - counts.n_mp) / counts.n_total


def standard_error(p: float, n_events: int) -> float:
    """Binomial standard error sqrt((1 - P^2) / n) of the correlation estimate."""
    if n_events < 1:
        raise ArgumentError("n_events must be positive")
    return math.sqrt(max(0.0, 1 - p * p) / n_events)


def analytic_correlation(config: PairConfig) -> float:
    """P predicted by the model for the run's configuration."""
    return pair_correlation(config.spin, config.phi0, config.theta1, config.theta2).p
