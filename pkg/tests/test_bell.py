"""Tests for CHSH analysis and instruction-set enumeration."""

import math

import numpy as np
import pytest

from localamp import bell, oracle
from localamp.exceptions import ArgumentError, ContractViolation, DomainError
from localamp.formalism import model

SINGLET_SETTINGS = bell.ChshSettings(0.0, math.pi / 2, math.pi / 4, 3 * math.pi / 4)
PHOTON_SETTINGS = bell.ChshSettings(0.0, math.pi / 4, math.pi / 8, 3 * math.pi / 8)


def test_chsh_examples():
    """Test S at the canonical angles and for a constant correlation."""
    singlet = bell.chsh_value(model.singlet_p, SINGLET_SETTINGS)
    assert singlet == pytest.approx(-2 * math.sqrt(2), abs=1e-9)
    assert bell.chsh_value(lambda a, b: 1.0, SINGLET_SETTINGS) == 2.0
    photon = bell.chsh_value(model.photon_p, PHOTON_SETTINGS)
    assert abs(photon) == pytest.approx(bell.TSIRELSON_BOUND, abs=1e-9)


def test_chsh_model_matches_oracle():
    for correlation, reference, settings in (
        (model.singlet_p, oracle.singlet_correlation, SINGLET_SETTINGS),
        (model.photon_p, oracle.photon_correlation, PHOTON_SETTINGS),
    ):
        assert bell.chsh_value(correlation, settings) == pytest.approx(
            bell.chsh_value(reference, settings), abs=1e-12
        )


def test_chsh_rejects_out_of_range_correlation():
    with pytest.raises(ContractViolation):
        bell.chsh_value(lambda a, b: 1.5, SINGLET_SETTINGS)
    with pytest.raises(ContractViolation):
        bell.chsh_value(lambda a, b: math.nan, SINGLET_SETTINGS)


def test_chsh_is_linear(rng):
    """Test linearity of S in the correlation function."""
    for weight, a, a_prime, b, b_prime in rng.uniform(0, 1, size=(50, 5)):
        settings = bell.ChshSettings(a * 6, a_prime * 6, b * 6, b_prime * 6)

        def mixture(x, y, w=weight):
            return w * model.singlet_p(x, y) + (1 - w) * model.photon_p(x, y)

        singlet = bell.chsh_value(model.singlet_p, settings)
        photon = bell.chsh_value(model.photon_p, settings)
        expected = weight * singlet + (1 - weight) * photon
        assert bell.chsh_value(mixture, settings) == pytest.approx(expected, abs=1e-12)


def test_tsirelson_consistency(rng):
    for angles in rng.uniform(-math.pi, math.pi, size=(500, 4)):
        settings = bell.ChshSettings(*angles)
        assert abs(bell.chsh_value(model.singlet_p, settings)) <= bell.TSIRELSON_BOUND + 1e-9
        assert abs(bell.chsh_value(model.photon_p, settings)) <= bell.TSIRELSON_BOUND + 1e-9


def test_deterministic_strategies():
    """Test the exhaustive classical bound."""
    strategies = bell.enumerate_strategies()
    assert len(strategies) == 16
    assert len(set(strategies)) == 16
    assert all(abs(strategy.chsh()) in (0, 2) for strategy in strategies)
    assert bell.max_deterministic_chsh() == 2


def test_mixed_strategies_stay_within_bound(rng):
    for _ in range(100):
        weights = rng.dirichlet(np.ones(16))
        assert abs(bell.mixed_strategy_chsh(weights)) <= 2 + 1e-12
    with pytest.raises(ArgumentError):
        bell.mixed_strategy_chsh([1.0])
    with pytest.raises(ArgumentError):
        bell.mixed_strategy_chsh([0.5] * 16)


def test_hidden_variable_correlation():
    """Test the sawtooth correlation of the shared-angle mixture."""
    assert bell.hidden_variable_correlation(0.0, 0.0) == -1.0
    assert bell.hidden_variable_correlation(0.0, math.pi) == 1.0
    assert bell.hidden_variable_correlation(0.0, math.pi / 4) == pytest.approx(-0.5, abs=1e-12)
    s = bell.chsh_value(bell.hidden_variable_correlation, SINGLET_SETTINGS)
    assert abs(s) <= 2 + 1e-12


def test_scan_chsh_finds_tsirelson_bound():
    points = bell.scan_chsh(model.singlet_p, grid_points=9)
    assert len(points) == 9 ** 4
    settings, best = bell.max_abs_chsh(points)
    assert abs(best) == pytest.approx(2 * math.sqrt(2), abs=1e-9)
    assert isinstance(settings, bell.ChshSettings)


def test_scan_chsh_order_is_independent_of_workers():
    serial = bell.scan_chsh(model.photon_p, grid_points=5, workers=1)
    threaded = bell.scan_chsh(model.photon_p, grid_points=5, workers=3)
    assert [s for s, _ in serial] == [s for s, _ in threaded]
    assert [v for _, v in serial] == [v for _, v in threaded]
    first, second = serial[0][0], serial[1][0]
    assert first.as_tuple() == (0.0, 0.0, 0.0, 0.0)
    assert second.b_prime > 0.0 and second.b == 0.0


def test_scan_chsh_deterministic_correlation():
    strategy = bell.enumerate_strategies()[5]

    def correlation(x, y):
        a = strategy.outcome_a if x < 1 else strategy.outcome_a_prime
        b = strategy.outcome_b if y < 1 else strategy.outcome_b_prime
        return float(a * b)

    points = bell.scan_chsh(correlation, grid_points=3)
    assert max(abs(value) for _, value in points) <= 2


def test_scan_chsh_smoke_and_arguments():
    assert len(bell.scan_chsh(lambda a, b: 0.0, grid_points=2, span=0.0)) == 16
    with pytest.raises(ArgumentError):
        bell.scan_chsh(model.singlet_p, grid_points=1)


def test_chsh_settings_validation():
    with pytest.raises(DomainError):
        bell.ChshSettings(0.0, math.inf, 0.0, 0.0)
    with pytest.raises(DomainError):
        bell.DeterministicStrategy(1, 0, 1, 1)


def test_ghz_instruction_sets():
    """Test that no instruction set reproduces all four GHZ statements."""
    instruction_sets = bell.enumerate_ghz_instruction_sets()
    assert len(instruction_sets) == 64
    assert bell.max_ghz_agreements() == 3
    assert all(bell.ghz_agreements(i) < 4 for i in instruction_sets)
    state = oracle.ghz_state()
    for label, value in bell.GHZ_QUANTUM_STATEMENTS.items():
        observable = oracle.pauli_string(label)
        assert oracle.expectation(state, observable) == pytest.approx(value, abs=1e-12)
