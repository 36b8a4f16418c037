#!/usr/bin/env python3
"""
Closed-form purification tests
"""

import math

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from spamlab.errors import DegenerateParamsError, InvalidInputError
from spamlab.models import SpamParams
from spamlab.purify import (
    ancillas_needed,
    critical_epsilon,
    critical_epsilon_series,
    fixed_point,
    meas_curve,
    meas_purified,
    meas_recurrence,
    prep_curve,
    prep_fidelity,
    prep_recurrence,
    purification_condition,
)

fidelities = st.floats(min_value=0.55, max_value=0.999)
noises = st.floats(min_value=0.0, max_value=0.45)
gate_noises = st.floats(min_value=0.0, max_value=0.3)


class TestPreparation:
    def test_no_ancillas(self):
        assert prep_fidelity(SpamParams(f=0.8, q=0.1), 0) == (0.8, 1.0)

    def test_perfect_preparation_is_fixed(self):
        assert prep_fidelity(SpamParams(f=1.0, q=0.3), 3).fidelity == 1.0

    def test_single_ancilla(self):
        result = prep_fidelity(SpamParams(f=0.9, q=0.1), 1)
        assert result.fidelity == pytest.approx(0.738 / 0.756, abs=1e-12)
        assert result.success_prob == pytest.approx(0.756, abs=1e-12)

    def test_two_ancillas_acceptance(self, balanced_five_percent):
        assert prep_fidelity(balanced_five_percent, 2).success_prob == pytest.approx(0.778525, abs=1e-12)

    def test_noisy_gate_values(self, noisy_gate):
        assert prep_fidelity(noisy_gate, 1).fidelity == pytest.approx(0.979897, abs=1e-6)
        two = prep_fidelity(noisy_gate, 2)
        assert two.fidelity == pytest.approx(0.983533, abs=1e-6)
        assert two.success_prob == pytest.approx(0.735651, abs=1e-6)
        assert prep_fidelity(noisy_gate, 3).fidelity == pytest.approx(0.983962, abs=1e-6)

    def test_recurrence_matches_closed_form(self, balanced_five_percent):
        r00, r11 = prep_recurrence(balanced_five_percent, 4)
        result = prep_fidelity(balanced_five_percent, 4)
        assert r00 / (r00 + r11) == pytest.approx(result.fidelity, abs=1e-14)
        assert r00 + r11 == pytest.approx(result.success_prob, abs=1e-14)

    def test_large_n_stays_finite(self):
        result = prep_fidelity(SpamParams(f=0.6, q=0.2), 5000)
        assert result.fidelity == pytest.approx(1.0)
        assert result.success_prob >= 0.0

    def test_degenerate_alpha(self):
        with pytest.raises(DegenerateParamsError):
            prep_fidelity(SpamParams(f=0.5, q=0.1), 1)

    def test_negative_depth(self, balanced_five_percent):
        with pytest.raises(InvalidInputError):
            prep_fidelity(balanced_five_percent, -1)


# Noise fraction and success probability with m ancillas, 1 - f = q
MEAS_TABLE = [
    (0.25, 1, 0.167, 0.562), (0.25, 2, 0.107, 0.328),
    (0.2, 1, 0.105, 0.608), (0.2, 2, 0.052, 0.390),
    (0.15, 1, 0.057, 0.672), (0.15, 2, 0.020, 0.482),
    (0.1, 1, 0.024, 0.756), (0.1, 2, 0.005, 0.608),
    (0.05, 1, 0.005, 0.864), (0.05, 2, 0.001, 0.779),
]


class TestMeasurement:
    @pytest.mark.parametrize("error,m,noise,success", MEAS_TABLE)
    def test_published_values(self, error, m, noise, success):
        result = meas_purified(SpamParams.balanced(error), m)
        assert result.noise == pytest.approx(noise, abs=6e-4)
        assert result.success_prob == pytest.approx(success, abs=6e-4)

    def test_no_ancillas_is_raw_measurement(self):
        result = meas_purified(SpamParams(f=0.9, q=0.1), 0)
        assert result.noise == 0.1
        assert result.success_prob == 1.0
        assert result.povm[0].diagonal() == pytest.approx([0.9, 0.1])

    def test_exact_values(self, balanced_five_percent):
        result = meas_purified(balanced_five_percent, 1)
        ratio = (0.05 / 0.95) * (0.095 / 0.905)
        assert result.noise == pytest.approx(ratio / (1.0 + ratio), abs=1e-14)
        assert result.success_prob == pytest.approx(0.8645, abs=1e-14)

    def test_perfect_measurement_stays_perfect(self):
        assert meas_purified(SpamParams(f=0.9, q=0.0), 4).noise == 0.0

    def test_purified_povm_is_complete(self, noisy_gate):
        n0, n1 = meas_purified(noisy_gate, 3).povm
        assert [a + b for a, b in zip(n0.diagonal(), n1.diagonal())] == pytest.approx([1.0, 1.0])

    def test_recurrence_diagonal(self, balanced_five_percent):
        assert meas_recurrence(balanced_five_percent, 1) == pytest.approx((0.95 * 0.905, 0.05 * 0.095))


class TestFixedPoint:
    def test_noiseless_gate(self, balanced_five_percent):
        assert fixed_point(balanced_five_percent) == (math.inf, 0.0, 1.0, 0.0)

    def test_gate_ratio(self):
        limit = fixed_point(SpamParams(f=0.9, q=0.05, eps=0.05))
        assert limit.D == pytest.approx(27.36, abs=1e-12)
        assert limit.d == pytest.approx(math.sqrt(27.36 ** 2 + 1) - 27.36, rel=1e-9)

    def test_limits_are_complementary(self, noisy_gate):
        limit = fixed_point(noisy_gate)
        assert limit.f_inf + limit.q_inf == pytest.approx(1.0, abs=1e-15)
        assert limit.f_inf == pytest.approx(0.984019, abs=1e-6)

    def test_recurrence_converges_to_limit(self):
        params = SpamParams(f=0.9, q=0.05, eps=0.05)
        limit = fixed_point(params)
        assert prep_fidelity(params, 200).fidelity == pytest.approx(limit.f_inf, abs=1e-12)
        assert meas_purified(params, 200).noise == pytest.approx(limit.q_inf, abs=1e-12)

    def test_fully_noisy_gate(self):
        assert fixed_point(SpamParams(f=0.9, q=0.1, eps=1.0)).f_inf == pytest.approx(0.5)


class TestCondition:
    @pytest.mark.parametrize("error,eps_c", [
        (0.01, 0.0374), (0.03, 0.0986), (0.05, 0.1460), (0.07, 0.1830), (0.1, 0.2236),
    ])
    def test_published_critical_rates(self, error, eps_c):
        assert critical_epsilon(1.0 - error) == pytest.approx(eps_c, abs=5e-5)

    def test_ideal_preparation_has_zero_threshold(self):
        value = critical_epsilon(1.0)
        assert value == 0.0
        assert math.copysign(1.0, value) == 1.0

    def test_out_of_range(self):
        with pytest.raises(InvalidInputError):
            critical_epsilon(0.4)

    def test_series_agrees_for_small_errors(self):
        assert critical_epsilon_series(0.999) == pytest.approx(critical_epsilon(0.999), abs=1e-5)

    @pytest.mark.parametrize("error", [0.01, 0.05, 0.1])
    def test_condition_flips_at_critical_rate(self, error):
        eps_c = critical_epsilon(1.0 - error)
        assert purification_condition(SpamParams.balanced(error, eps_c - 1e-6))
        assert not purification_condition(SpamParams.balanced(error, eps_c + 1e-6))

    def test_not_purifiable_example(self):
        assert not purification_condition(SpamParams(f=0.99, q=0.01, eps=0.05))

    def test_degenerate_is_not_purifiable(self):
        assert not purification_condition(SpamParams(f=0.5, q=0.2))


class TestCurves:
    def test_prep_curve(self, balanced_five_percent):
        curve = prep_curve(balanced_five_percent, 4)
        assert [p.n for p in curve.values] == [0, 1, 2, 3, 4]
        assert curve.values[2].success_prob == pytest.approx(0.778525, abs=1e-12)

    def test_meas_curve(self, balanced_five_percent):
        curve = meas_curve(balanced_five_percent, 2)
        assert curve.kind == "meas"
        assert curve.values[0].value == 0.05

    def test_ancillas_needed(self, balanced_five_percent):
        assert ancillas_needed(balanced_five_percent, 1e-3) == 2
        assert ancillas_needed(balanced_five_percent, 1e-3, kind="meas") == 2

    def test_unreachable_target(self, noisy_gate):
        assert ancillas_needed(noisy_gate, 1e-3) is None


# (f, q, eps), then f after one, two and three rounds and the limit
PURIFICATION_TABLE = [
    ((0.9, 0.1, 0.0), (0.976190, 0.994675, 0.998826, 1.0)),
    ((0.9, 0.05, 0.01), (0.979162, 0.993597, 0.996023, 0.996505)),
    ((0.97, 0.05, 0.03), (0.989002, 0.990767, 0.990928, 0.990944)),
    ((0.95, 0.05, 0.05), (0.979897, 0.983533, 0.983962, 0.984019)),
    ((0.99, 0.05, 0.1), (0.971280, 0.969655, 0.969511, 0.969497)),
]


@pytest.mark.parametrize("truth,expected", PURIFICATION_TABLE)
def test_purification_table(truth, expected):
    f, q, eps = truth
    params = SpamParams(f=f, q=q, eps=eps)
    rounds = [prep_fidelity(params, n).fidelity for n in (1, 2, 3)]
    assert rounds + [fixed_point(params).f_inf] == pytest.approx(list(expected), abs=1e-6)


@hsettings(max_examples=60, deadline=None)
@given(fidelities, noises)
def test_fidelity_rises_while_acceptance_falls(f, q):
    curve = prep_curve(SpamParams(f=f, q=q), 6)
    for before, after in zip(curve.values, curve.values[1:]):
        assert after.value >= before.value
        assert after.success_prob <= before.success_prob + 1e-15


@hsettings(max_examples=60, deadline=None)
@given(st.floats(min_value=0.01, max_value=0.45), st.integers(min_value=0, max_value=8))
def test_balanced_success_probabilities_coincide(error, n):
    params = SpamParams.balanced(error)
    assert prep_fidelity(params, n).success_prob == pytest.approx(meas_purified(params, n).success_prob, abs=1e-14)


@hsettings(max_examples=60, deadline=None)
@given(fidelities, noises, gate_noises)
def test_success_probability_bounds(f, q, eps):
    params = SpamParams(f=f, q=q, eps=eps)
    for n in range(4):
        assert 0.0 < prep_fidelity(params, n).success_prob <= 1.0 + 1e-12
        assert 0.0 < meas_purified(params, n).success_prob <= 1.0 + 1e-12


@hsettings(max_examples=100, deadline=None)
@given(fidelities, noises)
def test_fidelity_monotone_over_fifty_ancillas(f, q):
    curve = prep_curve(SpamParams(f=f, q=q), 50)
    for before, after in zip(curve.values, curve.values[1:]):
        assert after.value >= before.value
        if before.value < 1.0 - 1e-9:
            assert after.value > before.value


@hsettings(max_examples=60, deadline=None)
@given(fidelities, noises, st.floats(min_value=1e-4, max_value=1.0))
def test_limits_complementary_everywhere(f, q, eps):
    limit = fixed_point(SpamParams(f=f, q=q, eps=eps))
    assert limit.q_inf == pytest.approx(1.0 - limit.f_inf, abs=1e-12)
