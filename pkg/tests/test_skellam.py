"""Kernel tests against independent convolution and double-sum oracles."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from irvpivot import Tolerance, prob_strictly_greater, skellam_pmf, tie_terms

from conftest import conv_skellam_pmf, double_sum_gt

RATE_GRID = [0.0, 0.5, 1.0, 5.0, 50.0, 500.0]


def test_pmf_point_masses():
    assert skellam_pmf(0, 0.0, 0.0) == 1.0
    assert skellam_pmf(1, 0.0, 0.0) == 0.0
    assert skellam_pmf(-1, 0.0, 0.0) == 0.0
    assert skellam_pmf(1, 1.0, 0.0) == pytest.approx(math.exp(-1), abs=1e-15)
    assert skellam_pmf(-1, 1.0, 0.0) == 0.0
    assert skellam_pmf(-2, 0.0, 2.0) == pytest.approx(2.0 * math.exp(-2), abs=1e-15)


def test_pmf_matches_convolution_oracle():
    # Frozen spot value from the convolution oracle: pmf(0, 1, 1).
    assert skellam_pmf(0, 1.0, 1.0) == pytest.approx(0.3085083225536710, abs=1e-12)
    worst = 0.0
    for lam1 in RATE_GRID:
        for lam2 in RATE_GRID:
            for w in (-20, -5, -1, 0, 1, 3, 20):
                got = skellam_pmf(w, lam1, lam2)
                want = conv_skellam_pmf(w, lam1, lam2)
                worst = max(worst, abs(got - want))
    assert worst <= 1e-10


def test_pmf_mirror_symmetry_exact():
    for lam1 in RATE_GRID:
        for lam2 in RATE_GRID:
            for w in range(-20, 21):
                assert skellam_pmf(w, lam1, lam2) == pytest.approx(
                    skellam_pmf(-w, lam2, lam1), abs=1e-14
                )


def test_prob_strictly_greater_degenerate():
    lam = 1.0
    assert prob_strictly_greater(lam, 0.0) == pytest.approx(1 - math.exp(-1), abs=1e-15)
    assert prob_strictly_greater(0.0, lam) == 0.0
    assert prob_strictly_greater(0.0, 0.0) == 0.0


def test_prob_strictly_greater_symmetry():
    for lam in (0.5, 3.0, 40.0):
        expect = (1.0 - skellam_pmf(0, lam, lam)) / 2.0
        assert prob_strictly_greater(lam, lam) == pytest.approx(expect, abs=1e-12)


def test_prob_strictly_greater_matches_double_sum():
    # Frozen spot value from the double-sum oracle: P(X > Y) at rates (2, 1).
    assert prob_strictly_greater(2.0, 1.0) == pytest.approx(0.6057031411076678, abs=1e-11)
    for lam_a, lam_b in [(0.5, 0.5), (5.0, 3.0), (50.0, 60.0), (500.0, 480.0)]:
        assert prob_strictly_greater(lam_a, lam_b) == pytest.approx(
            double_sum_gt(lam_a, lam_b), abs=1e-11
        )


def test_trichotomy_on_grid():
    eps = Tolerance().tail_eps
    for lam_a in RATE_GRID:
        for lam_b in RATE_GRID:
            total = (
                prob_strictly_greater(lam_a, lam_b)
                + prob_strictly_greater(lam_b, lam_a)
                + skellam_pmf(0, lam_a, lam_b)
            )
            assert abs(total - 1.0) <= 4 * eps


def test_tie_terms_values():
    assert tie_terms(0.0, 0.0) == (1.0, 0.0)
    brk, mk = tie_terms(0.0, 1.0)
    assert brk == pytest.approx(math.exp(-1), abs=1e-15)
    assert mk == pytest.approx(math.exp(-1), abs=1e-15)
    brk, mk = tie_terms(3.0, 3.0)
    assert brk == pytest.approx(conv_skellam_pmf(0, 3.0, 3.0), abs=1e-12)
    assert mk == pytest.approx(conv_skellam_pmf(-1, 3.0, 3.0), abs=1e-12)


def test_partial_sums_converge_monotonically():
    for lam1, lam2 in [(1.0, 1.0), (5.0, 2.0), (50.0, 40.0)]:
        eps = Tolerance().tail_eps
        prev = 0.0
        width = int(lam1 + lam2 + 12 * math.sqrt(lam1 + lam2) + 40)
        for cap in range(0, width, max(1, width // 20)):
            cur = math.fsum(
                skellam_pmf(w, lam1, lam2) for w in range(-cap, cap + 1)
            )
            assert cur >= prev - 1e-15
            prev = cur
        assert prev >= 1.0 - 2 * eps


def test_rejects_bad_inputs():
    with pytest.raises(ValueError):
        skellam_pmf(0, -1.0, 1.0)
    with pytest.raises(ValueError):
        prob_strictly_greater(1.0, -2.0)
    with pytest.raises(ValueError):
        tie_terms(float("nan"), 1.0)
    with pytest.raises(ValueError):
        Tolerance(tail_eps=0.0)
    with pytest.raises(ValueError):
        Tolerance(tail_eps=1.5)


@settings(max_examples=60, deadline=None)
@given(
    lam1=st.floats(0.0, 1e6, allow_nan=False),
    lam2=st.floats(0.0, 1e6, allow_nan=False),
    w=st.integers(-30, 30),
)
def test_outputs_stay_in_unit_interval(lam1, lam2, w):
    assert 0.0 <= skellam_pmf(w, lam1, lam2) <= 1.0
    assert 0.0 <= prob_strictly_greater(lam1, lam2) <= 1.0
    brk, mk = tie_terms(lam1, lam2)
    assert 0.0 <= brk <= 1.0
    assert 0.0 <= mk <= 1.0


@settings(max_examples=40, deadline=None)
@given(
    lam1=st.floats(0.0, 300.0, allow_nan=False),
    lam2=st.floats(0.0, 300.0, allow_nan=False),
)
def test_trichotomy_property(lam1, lam2):
    total = (
        prob_strictly_greater(lam1, lam2)
        + prob_strictly_greater(lam2, lam1)
        + skellam_pmf(0, lam1, lam2)
    )
    assert abs(total - 1.0) <= 4e-12
