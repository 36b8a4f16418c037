#!/usr/bin/env python3
"""
Distillation and swapping tests
"""

import math

import pytest
from hypothesis import assume, given, strategies as st

from spamlab.errors import DegenerateParamsError, InvalidInputError
from spamlab.models import SpamParams
from spamlab.netapps import (
    copies_needed,
    distill_gain,
    distill_map,
    distill_success,
    distill_threshold,
    optimal_ancillas,
    povm_diag_recurrence,
    swap_fidelity,
)
from spamlab.purify import meas_purified

IDEAL = SpamParams(f=1.0, q=0.0)

# (F0, n) -> (N_c, first-round success, rounds) at 1 - f = q = 0.05, eps = 0
COPIES = {
    (0.6, 1): (4.9035e11, 0.4533, 23),
    (0.6, 2): (1.1837e13, 0.3689, 22),
    (0.6, 3): (9.3712e14, 0.3019, 22),
    (0.6, 4): (7.5567e16, 0.2473, 22),
    (0.7, 0): (1.4316e12, 0.6458, 31),
    (0.7, 1): (1.3230e9, 0.5053, 19),
    (0.7, 2): (1.6573e10, 0.4119, 18),
    (0.7, 3): (5.9847e11, 0.3372, 18),
    (0.7, 4): (2.1746e13, 0.2762, 18),
    (0.8, 0): (1.9374e9, 0.7178, 25),
    (0.8, 1): (2.4936e7, 0.5702, 16),
    (0.8, 2): (5.9140e8, 0.4656, 16),
    (0.8, 3): (1.4384e10, 0.3813, 16),
    (0.8, 4): (3.5075e11, 0.3122, 16),
    (0.9, 0): (1.4293e7, 0.8042, 20),
    (0.9, 1): (6.6274e5, 0.6482, 13),
    (0.9, 2): (8.7976e6, 0.5301, 13),
    (0.9, 3): (1.1778e8, 0.4341, 13),
    (0.9, 4): (1.5782e9, 0.3556, 13),
}

werner = st.floats(min_value=0.26, max_value=0.999)


@st.composite
def povm_diagonals(draw):
    r0 = draw(st.floats(min_value=0.3, max_value=1.0))
    r1 = draw(st.floats(min_value=0.0, max_value=0.9)) * r0
    return r0, r1


class TestPovmDiagonal:
    def test_no_ancillas(self, balanced_five_percent):
        assert povm_diag_recurrence(balanced_five_percent, 0) == pytest.approx((0.95, 0.05))

    def test_one_ancilla(self, balanced_five_percent):
        r0, r1 = povm_diag_recurrence(balanced_five_percent, 1)
        assert r0 == pytest.approx(0.95 * 0.905, abs=1e-12)
        assert r1 == pytest.approx(0.05 * 0.095, abs=1e-12)


class TestDistillRound:
    def test_pure_pair_stays_pure(self):
        assert distill_map(1.0, 0.95, 0.05) == pytest.approx(1.0, abs=1e-12)

    def test_ideal_recurrence(self):
        assert distill_map(0.7, 1.0, 0.0) == pytest.approx(0.5 / 0.68, abs=1e-12)
        assert distill_success(0.7, 1.0, 0.0) == pytest.approx(0.68, abs=1e-12)

    def test_success_with_noisy_readout(self):
        assert distill_success(0.9, 0.95, 0.05) == pytest.approx(0.8042, abs=6e-4)

    def test_gain_changes_sign_at_threshold(self):
        r0, r1 = 0.95, 0.05
        L = distill_threshold(SpamParams.balanced(0.05), 0).L
        assert distill_gain(L - 0.01, r0, r1) < 0.0
        assert distill_gain(L + 0.01, r0, r1) > 0.0
        assert distill_map(L + 0.01, r0, r1) > L + 0.01

    def test_uninformative_readout_rejected(self):
        with pytest.raises(DegenerateParamsError):
            distill_map(0.8, 0.5, 0.5)

    def test_fidelity_below_quarter_rejected(self):
        with pytest.raises(InvalidInputError):
            distill_success(0.2, 1.0, 0.0)

    @given(werner, povm_diagonals())
    def test_gain_factorization(self, F, diag):
        r0, r1 = diag
        assume(r0 - r1 > 1e-3)
        assert distill_map(F, r0, r1) - F == pytest.approx(distill_gain(F, r0, r1), abs=1e-10)

    @given(werner, povm_diagonals())
    def test_success_is_probability(self, F, diag):
        r0, r1 = diag
        assume(r0 - r1 > 1e-3)
        assert 0.0 < distill_success(F, r0, r1) <= (r0 + r1) ** 2 + 1e-12


class TestThreshold:
    def test_perfect_readout(self):
        assert distill_threshold(SpamParams(f=0.9, q=0.0), 0).L == pytest.approx(0.5, abs=1e-12)

    def test_noisy_readout(self, balanced_five_percent):
        threshold = distill_threshold(balanced_five_percent, 0)
        assert threshold.L == pytest.approx(0.617284, abs=1e-6)
        assert threshold.L_inf == 0.5

    @pytest.mark.parametrize("n, expected", [(1, 0.511173), (2, 0.501161), (3, 0.500122), (4, 0.500013)])
    def test_ancillas_lower_threshold(self, balanced_five_percent, n, expected):
        assert distill_threshold(balanced_five_percent, n).L == pytest.approx(expected, abs=1e-6)

    def test_nonincreasing(self, noisy_gate):
        values = [distill_threshold(noisy_gate, n).L for n in range(12)]
        assert all(b <= a + 1e-15 for a, b in zip(values, values[1:]))

    def test_limit_under_noisy_gate(self, noisy_gate):
        limit = distill_threshold(noisy_gate, 0).L_inf
        assert limit > 0.5
        assert distill_threshold(noisy_gate, 200).L == pytest.approx(limit, abs=1e-8)


class TestCopies:
    @pytest.mark.parametrize("cell", sorted(COPIES))
    def test_copies_table(self, balanced_five_percent, cell):
        F0, n = cell
        copies, success, rounds = COPIES[cell]
        trace = copies_needed(balanced_five_percent, n, F0)
        assert not trace.undistillable
        assert trace.N_c == pytest.approx(copies, rel=5e-4)
        assert trace.first_success_prob == pytest.approx(success, abs=6e-4)
        assert len(trace.rounds) == rounds

    def test_copies_are_product_of_rounds(self, balanced_five_percent):
        trace = copies_needed(balanced_five_percent, 1, 0.8)
        assert trace.N_c == pytest.approx(math.prod(2.0 / r.success_prob for r in trace.rounds), rel=1e-12)
        assert trace.rounds[0].fidelity == 0.8
        assert trace.final_fidelity > 0.999
        assert all(r.fidelity <= 0.999 for r in trace.rounds)

    def test_undistillable_cell(self, balanced_five_percent):
        trace = copies_needed(balanced_five_percent, 0, 0.6)
        assert trace.undistillable
        assert trace.rounds == ()
        assert trace.N_c == math.inf
        assert trace.first_success_prob is None

    def test_already_above_target(self):
        trace = copies_needed(IDEAL, 0, 0.9995)
        assert trace.N_c == 1.0
        assert trace.rounds == ()

    def test_bad_target(self, balanced_five_percent):
        with pytest.raises(InvalidInputError):
            copies_needed(balanced_five_percent, 0, 0.8, F_target=1.0)

    @pytest.mark.parametrize("F0", [0.7, 0.9])
    def test_one_ancilla_is_optimal(self, balanced_five_percent, F0):
        best = optimal_ancillas(balanced_five_percent, F0)
        assert best is not None
        assert best.n_ancillas == 1

    def test_nothing_distillable(self):
        assert optimal_ancillas(SpamParams.balanced(0.05), 0.5, n_max=2) is None


class TestSwap:
    def test_ideal(self):
        assert swap_fidelity(IDEAL, 0) == 1.0

    def test_unpurified(self, balanced_five_percent):
        assert swap_fidelity(balanced_five_percent, 0) == pytest.approx(0.9025, abs=1e-12)

    def test_three_ancillas(self, balanced_five_percent):
        assert swap_fidelity(balanced_five_percent, 3) == pytest.approx(0.999878252, abs=1e-9)

    def test_improves_with_ancillas(self, balanced_five_percent):
        values = [swap_fidelity(balanced_five_percent, m) for m in range(6)]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_noisy_gate_uses_purified_noise(self, noisy_gate):
        noise = meas_purified(noisy_gate, 2).noise
        assert swap_fidelity(noisy_gate, 2) == pytest.approx((1.0 - noise) ** 2, abs=1e-15)

    def test_negative_depth(self, balanced_five_percent):
        with pytest.raises(InvalidInputError):
            swap_fidelity(balanced_five_percent, -1)
