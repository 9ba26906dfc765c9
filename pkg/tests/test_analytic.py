import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from _oracles import (
    TIGHT,
    fd_conditional_success,
    mc_laplace,
    poisson_laplace,
    random_link_cases,
    rayleigh_conditional_success,
)
from gass.analytic import (
    ConnectivityResult,
    asp,
    asp_on_cap,
    bell_partition_sum,
    conditional_success,
    epsilon,
    epsilon_deriv,
    epsilon_terms,
    laplace_interference,
    overall_connectivity,
    proposition_terms,
    r_dot,
    s_dot,
    success_parameter,
)
from gass.channel import HopConfig, antenna_gain, path_loss
from gass.config import default_config
from gass.errors import ConsistencyError
from gass.geom3d import ShellGeometry, hop1_cap
from gass.numerics import derivative_high_order
from gass.simcore import simulate_link

SHELL = ShellGeometry()
SYSTEM = default_config().system
# 30-digit evaluation of pi * 5e-5 * R_e / (R_e + 1000)
R_DOT_HOP1 = 1.57054981136382397e-4


def _replace_system(**deployment):
    dep = dataclasses.replace(SYSTEM.deployment, **deployment)
    return dataclasses.replace(SYSTEM, deployment=dep)


def test_r_dot_reference_and_limits():
    assert r_dot(1, SHELL, 5e-5) == pytest.approx(R_DOT_HOP1, rel=1e-13)
    assert r_dot(1, SHELL, 0.0) == 0.0
    assert r_dot(2, SHELL, 4e-6) < math.pi * 4e-6
    with pytest.raises(ValueError):
        r_dot(3, SHELL, 1e-6)


def test_s_dot_zero_noise_and_scaling():
    cfg = HopConfig(noise_power=0.0)
    assert s_dot(cfg, 1000.0) == 0.0
    cfg = HopConfig()
    assert s_dot(cfg, 2000.0) == pytest.approx(4 * s_dot(cfg, 1000.0), rel=1e-15)


@settings(max_examples=100)
@given(
    st.floats(1e8, 1e11), st.floats(0.05, 20.0), st.floats(1e-3, 10.0),
    st.integers(1, 6), st.floats(1e-2, 1e2), st.floats(1.0, 1e6),
)
def test_s_dot_matches_link_budget(freq, diameter, power, m, theta, r0):
    cfg = HopConfig(carrier_freq=freq, dish_diameter=diameter, tx_power=power,
                    nakagami_m=m, sinr_threshold=theta)
    budget = m * theta * cfg.noise_power / (cfg.nakagami_omega * power * antenna_gain(cfg) * path_loss(cfg, r0))
    assert s_dot(cfg, r0) == pytest.approx(budget, rel=1e-12)


CAP1 = hop1_cap(SHELL, 4.6272e-6)


def test_epsilon_vanishes_as_threshold_drops():
    assert epsilon(1e-12, 1016.0, 3, CAP1) < 1e-6
    assert epsilon(1e-12, 1016.0, 3, CAP1) >= 0


@given(st.floats(1e-3, 1e2), st.integers(1, 5))
@settings(max_examples=30, deadline=None)
def test_epsilon_bounds(theta, m):
    eps = epsilon(theta, 1016.0, m, CAP1)
    assert 0 <= eps <= CAP1.span_sq * (1 + 1e-9)


@pytest.mark.parametrize("theta", [0.01, 1.0, 30.0])
def test_epsilon_closed_form_rayleigh(theta):
    r0 = 1010.0
    c = theta * r0 * r0
    a, b = CAP1.r_min**2, CAP1.r_max**2
    exact = c * math.log((b + c) / (a + c))
    assert epsilon(theta, r0, 1, CAP1) == pytest.approx(exact, rel=1e-8)


@pytest.mark.parametrize("theta", [0.01, 1.0, 30.0])
def test_epsilon_1_closed_form_rayleigh(theta):
    # m = 1 still defines eps_1 = int c*gamma/(gamma+c)^2 dgamma
    r0 = 1010.0
    c = theta * r0 * r0
    prim = lambda g: c * (math.log(g + c) + c / (g + c))
    exact = prim(CAP1.r_max**2) - prim(CAP1.r_min**2)
    assert epsilon_deriv(1, theta, r0, 1, CAP1) == pytest.approx(exact, rel=1e-8)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_epsilon_terms_nonnegative_and_consistent(m):
    terms = epsilon_terms(0.8, 1020.0, m, CAP1)
    assert terms.shape == (m,)
    assert np.all(terms >= 0)
    assert terms[0] == pytest.approx(epsilon(0.8, 1020.0, m, CAP1), rel=1e-8)
    for l in range(1, m):
        assert terms[l] == pytest.approx(epsilon_deriv(l, 0.8, 1020.0, m, CAP1), rel=1e-8)


@pytest.mark.parametrize("m,l", [(2, 1), (3, 1), (3, 2), (4, 3), (1, 1), (2, 3)])
def test_epsilon_terms_are_scaled_derivatives(m, l):
    # eps_l = -(-t)^l / l! d^l/dt^l eps(t * theta) at t = 1
    theta, r0 = 0.7, 1015.0
    f = lambda t: epsilon(t * theta, r0, m, CAP1, TIGHT)
    deriv = derivative_high_order(f, 1.0, l, 0.02)
    expected = -((-1) ** l) / math.factorial(l) * deriv
    assert epsilon_deriv(l, theta, r0, m, CAP1, TIGHT) == pytest.approx(expected, rel=1e-4)


def test_bell_partition_sum_small_cases():
    assert bell_partition_sum((), 1) == 1.0
    assert bell_partition_sum((0.4,), 2) == pytest.approx(1.4)
    # 1 + x1 + x1^2/2 + x2
    assert bell_partition_sum((0.4, 0.3), 3) == pytest.approx(1 + 0.4 + 0.08 + 0.3)


def test_bell_sum_poisson_case():
    # with only x1 the truncated sum is the Poisson CDF times e^{x1}
    x = 1.7
    assert math.exp(-x) * bell_partition_sum((x, 0.0, 0.0, 0.0), 5) == pytest.approx(
        sum(math.exp(-x) * x**k / math.factorial(k) for k in range(5)), rel=1e-14)


def test_laplace_basics():
    cfg, cap, lam = SYSTEM.hop1, SYSTEM.cap(1), SYSTEM.interferer_density(1)
    assert laplace_interference(0.0, cfg, cap, lam) == 1.0
    values = [laplace_interference(s, cfg, cap, lam) for s in np.logspace(8, 12, 9)]
    assert all(0 < b < a <= 1 for a, b in zip(values, values[1:]))
    # s -> infinity leaves only the void probability of the cap
    assert laplace_interference(1e30, cfg, cap, lam) == pytest.approx(math.exp(-lam * cap.area), rel=1e-9)


@pytest.mark.parametrize("hop", [1, 2])
def test_laplace_against_monte_carlo(hop):
    cfg, cap, lam = SYSTEM.hop(hop), SYSTEM.cap(hop), 5 * SYSTEM.interferer_density(hop)
    s = success_parameter(cfg, 0.5 * (cap.r_min + cap.r_max))
    mean, se = mc_laplace(s, cfg, cap, lam, 100_000, np.random.default_rng(hop))
    assert abs(laplace_interference(s, cfg, cap, lam) - mean) < 3 * se


def test_conditional_success_rayleigh_closed_form():
    cfg = dataclasses.replace(SYSTEM.hop1, nakagami_m=1)
    cap, lam, r0 = SYSTEM.cap(1), SYSTEM.interferer_density(1), 1012.0
    terms = proposition_terms(cfg, cap, lam, r0)
    exact = math.exp(-s_dot(cfg, r0) - r_dot(1, SHELL, lam) * terms.epsilon)
    assert conditional_success(cfg, cap, lam, r0) == pytest.approx(exact, rel=1e-14)


def test_conditional_success_threshold_limits():
    cap, lam = SYSTEM.cap(1), SYSTEM.interferer_density(1)
    low = dataclasses.replace(SYSTEM.hop1, sinr_threshold=1e-9)
    high = dataclasses.replace(SYSTEM.hop1, sinr_threshold=1e6)
    assert conditional_success(low, cap, lam, 1010.0) == pytest.approx(1.0, abs=1e-6)
    assert conditional_success(high, cap, lam, 1010.0) < 1e-6


def test_conditional_success_rejects_far_reference():
    with pytest.raises(ValueError):
        conditional_success(SYSTEM.hop1, SYSTEM.cap(1), 1e-6, 5000.0)


ORACLE_CASES = [(m, case) for m in (2, 3, 4) for case in random_link_cases(SYSTEM, m, 20, 0)]


@pytest.mark.parametrize("m,case", ORACLE_CASES, ids=lambda v: None if isinstance(v, int) else f"r{v[3]:.2f}")
def test_conditional_success_matches_derivative_oracle(m, case):
    cfg, cap, density, r0 = case
    assert conditional_success(cfg, cap, density, r0, TIGHT) == pytest.approx(
        fd_conditional_success(cfg, cap, density, r0), rel=1e-4)


@pytest.mark.parametrize("case", list(random_link_cases(SYSTEM, 1, 20, 0)), ids=lambda c: f"r{c[3]:.2f}")
def test_rayleigh_matches_closed_form(case):
    cfg, cap, density, r0 = case
    assert conditional_success(cfg, cap, density, r0, TIGHT) == pytest.approx(
        rayleigh_conditional_success(cfg, cap, density, r0), rel=1e-8)


@pytest.mark.parametrize("hop", [1, 2])
def test_laplace_matches_poisson_functional(hop):
    cfg, cap, lam = SYSTEM.hop(hop), SYSTEM.cap(hop), SYSTEM.interferer_density(hop)
    for frac in (0.1, 1.0, 10.0):
        s = frac * success_parameter(cfg, cap.r_max)
        assert laplace_interference(s, cfg, cap, lam, TIGHT) == pytest.approx(
            poisson_laplace(s, cfg, cap, lam), rel=1e-12)


@pytest.mark.parametrize("hop", [1, 2])
def test_conditional_success_against_monte_carlo(hop):
    cfg, cap = SYSTEM.hop(hop), SYSTEM.cap(hop)
    lam = 3 * SYSTEM.deployment.gu_tx_density if hop == 1 else SYSTEM.deployment.av_parent_density
    r0 = cap.r_min + 0.6 * (cap.r_max - cap.r_min)
    est = simulate_link(cfg, cap, lam, 10_000, master_seed=11, r0=r0, workers=1)
    assert abs(conditional_success(cfg, cap, lam, r0) - est.mean) < 3 * est.stderr


def test_asp_is_one_when_links_always_succeed():
    cfg = dataclasses.replace(SYSTEM.hop1, sinr_threshold=1e-12)
    assert asp_on_cap(cfg, SYSTEM.cap(1), SYSTEM.interferer_density(1)) == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("hop", [1, 2])
def test_asp_mean_value_property(hop):
    cfg, cap, lam = SYSTEM.hop(hop), SYSTEM.cap(hop), SYSTEM.interferer_density(hop)
    p = asp(hop, SYSTEM)
    ends = [conditional_success(cfg, cap, lam, r) for r in (cap.r_min, cap.r_max)]
    assert min(ends) <= p <= max(ends)


@pytest.mark.parametrize("hop", [1, 2])
def test_asp_decreases_with_threshold(hop):
    cap, lam = SYSTEM.cap(hop), SYSTEM.interferer_density(hop)
    vals = [asp_on_cap(dataclasses.replace(SYSTEM.hop(hop), sinr_threshold=10 ** (db / 10)), cap, lam)
            for db in (-10, -5, 0, 5, 10)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_overall_connectivity_is_product():
    res = overall_connectivity(SYSTEM)
    assert res.method == "analytic"
    assert res.p_overall == pytest.approx(res.p1 * res.p2, rel=1e-15)
    assert 0 < res.p_overall <= min(res.p1, res.p2) <= 1


def test_hop2_ignores_ground_users():
    a = overall_connectivity(_replace_system(gu_density=10e-6))
    b = overall_connectivity(_replace_system(gu_density=100e-6))
    assert a.p2 == b.p2
    assert a.p1 > b.p1


def test_hop1_frequency_invariance():
    other = dataclasses.replace(SYSTEM, hop1=dataclasses.replace(SYSTEM.hop1, carrier_freq=5e9))
    assert asp(1, other) == pytest.approx(asp(1, SYSTEM), rel=1e-12)


def test_hop2_frequency_enters_only_through_beamwidth():
    h2 = SYSTEM.hop2
    # doubling f with kappa doubled keeps the beam and must keep P2
    same_beam = dataclasses.replace(SYSTEM, hop2=dataclasses.replace(
        h2, carrier_freq=2 * h2.carrier_freq, beamwidth_coeff=2 * h2.beamwidth_coeff))
    assert same_beam.beamwidth == pytest.approx(SYSTEM.beamwidth, rel=1e-15)
    assert asp(2, same_beam) == pytest.approx(asp(2, SYSTEM), rel=1e-10)
    narrower = dataclasses.replace(SYSTEM, hop2=dataclasses.replace(h2, carrier_freq=2 * h2.carrier_freq))
    assert asp(2, narrower) != pytest.approx(asp(2, SYSTEM), rel=1e-6)


def test_connectivity_result_validation():
    with pytest.raises(ConsistencyError):
        ConnectivityResult(p1=1.2, p2=0.5, p_overall=0.6)
    d = ConnectivityResult(0.5, 0.5, 0.25).to_dict()
    assert d == {"method": "analytic", "p1": 0.5, "p2": 0.5, "p_overall": 0.25}
