import math

import pytest

import frogsim


def test_exact_distribution_pin():
    masses = frogsim.exact_vinf_distribution(3, 0.5, "constant:1")
    assert masses == pytest.approx([1 / 4, 7 / 27, 53 / 108], abs=1e-10)
    assert sum(masses) == pytest.approx(1.0, abs=1e-10)


def test_simulators_agree_on_degenerate_cases():
    assert frogsim.simulate_aux(9, 1.0).v_infty == 9
    assert frogsim.simulate_frog_sync(9, 1.0).v_infty == 9
    assert frogsim.simulate_aux(5, 0.0).v_infty == 1


def test_simulation_is_reproducible():
    a = frogsim.simulate_aux(20, 0.8, eta="bernoulli:0.5", seed=7, stream=3)
    b = frogsim.simulate_aux(20, 0.8, eta="bernoulli:0.5", seed=7, stream=3)
    assert (a.v_infty, a.total_steps, a.rounds_elapsed) == (
        b.v_infty,
        b.total_steps,
        b.rounds_elapsed,
    )


def test_estimate_event_matches_oracle():
    row = frogsim.estimate_event(5, 0.6, eta="bernoulli:0.5", trials=20000, seed=11, threads=2)
    truth = frogsim.exact_vinf_distribution(5, 0.6, "bernoulli:0.5")[4]
    assert row.ci_low - 0.01 <= truth <= row.ci_high + 0.01
    assert row.valid


def test_coupon_moments():
    mean, var = frogsim.coupon_tau_moments(2)
    assert mean == pytest.approx(3.0)
    assert var == pytest.approx(2.0)
    mean3, _ = frogsim.coupon_tau_moments(3)
    assert mean3 == pytest.approx(5.5)


def test_branching_extinction():
    assert frogsim.branching_extinction([0.1, 0.45, 0.45]) == pytest.approx(2 / 9, abs=1e-10)
    assert frogsim.branching_extinction([0.6, 0.4]) == pytest.approx(1.0)
    z = frogsim.make_z_pmf(0.9, 0.5, "constant:1")
    assert z == pytest.approx([0.1, 0.45, 0.45])


def test_wilson_interval():
    low, high = frogsim.wilson95(50, 100)
    assert low < 0.5 < high
    assert 0.0 <= low and high <= 1.0


def test_invalid_parameters_raise():
    with pytest.raises(ValueError):
        frogsim.simulate_aux(5, 1.5)
    with pytest.raises(ValueError):
        frogsim.exact_vinf_distribution(100, 0.5)
    with pytest.raises(ValueError):
        frogsim.simulate_aux(5, 0.5, eta="bogus:1")
