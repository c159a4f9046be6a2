"""Tests for the Monte Carlo event sampler."""

import math

import numpy as np
import pytest

from localamp.exceptions import ArgumentError
from localamp.formalism.models import SPIN_HALF, SPIN_ONE, PairConfig
from localamp.sampler import (
    OutcomeCounts,
    SamplerRun,
    analytic_correlation,
    chunk_generator,
    estimate_correlation,
    sample_events,
    standard_error,
)


def test_equal_singlet_settings_give_no_coincidences():
    config = PairConfig(SPIN_HALF, math.pi, 0.5, 0.5)
    for seed in (0, 1, 2**63):
        counts = sample_events(SamplerRun(config, 10_000, seed))
        assert counts.n_pp == 0
        assert counts.n_mm == 0
        assert counts.n_total == 10_000


def test_perfect_correlation_gives_no_anticoincidences():
    config = PairConfig(SPIN_ONE, 0.0, 0.3, 0.3)
    for seed in (0, 7, 12345):
        counts = sample_events(SamplerRun(config, 10_000, seed))
        assert counts.n_pm == 0
        assert counts.n_mp == 0


def test_singlet_estimate_at_sixty_degrees(singlet_sixty_degrees):
    """Test the estimate at one million events."""
    counts = sample_events(SamplerRun(singlet_sixty_degrees, 1_000_000, 42))
    assert counts.n_total == 1_000_000
    assert abs(estimate_correlation(counts) + 0.5) <= 5e-3
    assert analytic_correlation(singlet_sixty_degrees) == pytest.approx(-0.5, abs=1e-12)


def test_counts_do_not_depend_on_workers(singlet_sixty_degrees):
    """Test bit-identical tallies for different thread counts."""
    run = SamplerRun(singlet_sixty_degrees, 300_001, 99, chunk_size=10_000)
    serial = sample_events(run, workers=1)
    assert sample_events(run, workers=4) == serial
    assert sample_events(run, workers=2) == serial


def test_same_arguments_same_counts(singlet_sixty_degrees):
    run = SamplerRun(singlet_sixty_degrees, 50_000, 5)
    assert sample_events(run) == sample_events(run)
    other = sample_events(SamplerRun(singlet_sixty_degrees, 50_000, 6))
    assert other != sample_events(run)


def test_convergence_over_seeds(singlet_sixty_degrees):
    """Test that the spread of estimates matches the binomial standard error."""
    n = 100_000
    estimates = [
        estimate_correlation(sample_events(SamplerRun(singlet_sixty_degrees, n, seed)))
        for seed in range(100)
    ]
    expected = standard_error(-0.5, n)
    spread = float(np.std(estimates, ddof=1))
    assert expected / 1.5 <= spread <= expected * 1.5


def test_marginals_are_balanced(singlet_sixty_degrees):
    counts = sample_events(SamplerRun(singlet_sixty_degrees, 200_000, 3))
    tolerance = 5 / math.sqrt(counts.n_total)
    assert abs(counts.plus_first / counts.n_total - 0.5) < tolerance
    assert abs(counts.plus_second / counts.n_total - 0.5) < tolerance


def test_random_internal_phase_mode(singlet_sixty_degrees):
    """Test that per-pair internal phases leave the statistics unchanged."""
    run = SamplerRun(singlet_sixty_degrees, 200_000, 11, random_internal_phase=True)
    counts = sample_events(run)
    assert counts.n_total == 200_000
    assert abs(estimate_correlation(counts) + 0.5) <= 5 / math.sqrt(200_000)
    assert sample_events(run, workers=3) == counts


def test_chunks_partition_the_run():
    config = PairConfig(SPIN_HALF, math.pi, 0.0, 0.0)
    run = SamplerRun(config, 25, 0, chunk_size=10)
    assert run.chunks() == [(0, 10), (1, 10), (2, 5)]


def test_chunk_generators_are_independent():
    first = chunk_generator(42, 0).random(4)
    again = chunk_generator(42, 0).random(4)
    second = chunk_generator(42, 1).random(4)
    assert np.array_equal(first, again)
    assert not np.array_equal(first, second)


def test_run_validation():
    config = PairConfig(SPIN_HALF, math.pi, 0.0, 0.0)
    with pytest.raises(ArgumentError):
        SamplerRun(config, 0, 1)
    with pytest.raises(ArgumentError):
        SamplerRun(config, 10, -1)
    with pytest.raises(ArgumentError):
        SamplerRun(config, 10, 2**64)
    with pytest.raises(ArgumentError):
        SamplerRun(config, 10, 1, chunk_size=0)


def test_outcome_counts():
    counts = OutcomeCounts(1, 2, 3, 4) + OutcomeCounts(n_pp=1)
    assert counts.to_dict() == {"n_pp": 2, "n_mm": 2, "n_pm": 3, "n_mp": 4, "n_total": 11}
    assert estimate_correlation(counts) == pytest.approx((4 - 7) / 11)
    with pytest.raises(ArgumentError):
        OutcomeCounts(n_pp=-1)
    with pytest.raises(ArgumentError):
        estimate_correlation(OutcomeCounts())


def test_standard_error():
    assert standard_error(-0.5, 1_000_000) == pytest.approx(math.sqrt(0.75) / 1000)
    assert standard_error(1.0, 10) == 0.0
    with pytest.raises(ArgumentError):
        standard_error(0.0, 0)


@pytest.mark.parametrize(
    "counts, expected",
    [((500, 500, 0, 0), 1.0), ((0, 0, 1, 1), -1.0), ((250, 250, 250, 250), 0.0)],
)
def test_estimate_examples(counts, expected):
    assert estimate_correlation(OutcomeCounts(*counts)) == expected


def test_marginal_balance_for_every_remote_setting():
    for theta2 in np.linspace(0, math.pi, 7):
        config = PairConfig(SPIN_HALF, math.pi, 0.0, float(theta2))
        counts = sample_events(SamplerRun(config, 50_000, 21))
        assert abs(counts.plus_first - counts.n_total / 2) <= 5 * math.sqrt(counts.n_total)
