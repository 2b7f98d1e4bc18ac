import math

import numpy as np
import pytest

import clickstats as cs
from clickstats import stats
from clickstats.model import UndefinedStatisticError, ValidationError

from oracles import random_click_distribution


def ideal_split_photon_jcd():
    cfg = cs.DetectorConfig(8, 1.0, 0.0)
    jpd = cs.build_photon_distribution(cs.StateSpec.split_photon(2 ** -0.5))
    return cs.joint_click_distribution(jpd, cfg, cfg)


def coherent_product_jcd(mean_a=0.6, mean_b=1.1, eta=0.8, nu=0.0):
    cfg = cs.DetectorConfig(8, eta, nu)
    jpd = cs.build_photon_distribution(cs.StateSpec.coherent(mean_a, mean_b))
    return cs.joint_click_distribution(jpd, cfg, cfg)


def test_marginals_of_product():
    jcd = coherent_product_jcd()
    ca, cb = stats.marginals(jcd)
    assert np.allclose(np.outer(ca, cb), jcd.probs, atol=1e-12)
    assert ca.sum() == pytest.approx(1.0)
    assert cb.sum() == pytest.approx(1.0)


def test_marginals_split_photon():
    ca, cb = stats.marginals(ideal_split_photon_jcd())
    assert ca[0] == pytest.approx(0.5, abs=1e-12)
    assert ca[1] == pytest.approx(0.5, abs=1e-12)


def test_conditional_independent():
    jcd = coherent_product_jcd()
    _, cb = stats.marginals(jcd)
    for a in range(9):
        assert np.allclose(stats.conditional(jcd, a), cb, atol=1e-12)


def test_conditional_split_photon():
    cond = stats.conditional(ideal_split_photon_jcd(), 1)
    assert cond[0] == pytest.approx(1.0, abs=1e-12)


def test_conditional_unsupported():
    with pytest.raises(UndefinedStatisticError, match="unsupported condition"):
        stats.conditional(ideal_split_photon_jcd(), 5)


def test_mean_variance_point_mass():
    dist = np.zeros(9)
    dist[1] = 1.0
    assert stats.mean(dist) == 1.0
    assert stats.variance(dist) == 0.0


def test_mean_variance_uniform():
    dist = np.full(9, 1.0 / 9.0)
    assert stats.mean(dist) == pytest.approx(4.0)
    assert stats.variance(dist) == pytest.approx(20.0 / 3.0)


def test_covariance_split_photon():
    assert stats.covariance(ideal_split_photon_jcd()) == pytest.approx(-0.25, abs=1e-12)


def test_normal_moment_order_zero():
    rng = np.random.default_rng(0)
    dist = rng.dirichlet(np.ones(9))
    assert stats.normal_moment(dist, 0, 8) == pytest.approx(1.0)


def test_normal_moment_rejects_large_order():
    with pytest.raises(ValidationError):
        stats.normal_moment(np.full(9, 1.0 / 9.0), 9, 8)


@pytest.mark.parametrize("p", [0.05, 0.3, 0.7])
def test_normal_moment_binomial_fixed_point(p):
    bins = 8
    dist = np.array([math.comb(bins, b) * p**b * (1 - p) ** (bins - b)
                     for b in range(bins + 1)])
    for m in range(bins + 1):
        # brute-force factorial-moment summation as the oracle
        oracle = sum(math.comb(b, m) / math.comb(bins, m) * dist[b]
                     for b in range(bins + 1))
        assert oracle == pytest.approx(p**m, abs=1e-12)
        assert stats.normal_moment(dist, m, bins) == pytest.approx(p**m, abs=1e-12)


def test_normal_moment_single_click():
    dist = np.zeros(9)
    dist[1] = 1.0
    assert stats.normal_moment(dist, 1, 8) == pytest.approx(1.0 / 8.0)
    for m in range(2, 9):
        assert stats.normal_moment(dist, m, 8) == 0.0


def test_variance_identity_random():
    # normally ordered variance vs the closed form in terms of E and Var
    rng = np.random.default_rng(42)
    for _ in range(100):
        dist = rng.dirichlet(np.ones(9))
        n = 8
        e = stats.mean(dist)
        v = stats.variance(dist)
        lhs = (stats.normal_moment(dist, 2, n)
               - stats.normal_moment(dist, 1, n) ** 2)
        rhs = (n * v - e * (n - e)) / (n**2 * (n - 1))
        assert lhs == pytest.approx(rhs, abs=1e-12)


def test_covariance_identity_random():
    rng = np.random.default_rng(43)
    for _ in range(100):
        jcd = cs.JointClickDistribution(random_click_distribution(rng))
        na, nb = jcd.bins_a, jcd.bins_b
        joint = stats.joint_normal_moment(jcd)
        ca, cb = stats.marginals(jcd)
        lhs = na * nb * (joint - stats.normal_moment(ca, 1, na)
                         * stats.normal_moment(cb, 1, nb))
        assert lhs == pytest.approx(stats.covariance(jcd), abs=1e-12)


def test_law_of_total_variance():
    rng = np.random.default_rng(44)
    for _ in range(20):
        jcd = cs.JointClickDistribution(random_click_distribution(rng))
        ca, cb = stats.marginals(jcd)
        total = 0.0
        means = []
        for a in range(9):
            cond = stats.conditional(jcd, a)
            total += ca[a] * stats.variance(cond)
            means.append(stats.mean(cond))
        means = np.array(means)
        e_b = stats.mean(cb)
        total += float(ca @ (means - e_b) ** 2)
        assert total == pytest.approx(stats.variance(cb), abs=1e-12)


def test_conditional_moments_split_photon():
    jcd = ideal_split_photon_jcd()
    nm0 = stats.conditional_normal_moments(jcd, 0, 4)
    assert np.allclose(nm0.values, [1.0, 1.0 / 8.0, 0.0, 0.0, 0.0], atol=1e-12)
    nm1 = stats.conditional_normal_moments(jcd, 1, 4)
    assert np.allclose(nm1.values, [1.0, 0.0, 0.0, 0.0, 0.0], atol=1e-12)
    assert nm0.physical


def test_conditional_moments_coherent_product():
    jcd = coherent_product_jcd(mean_a=0.6, mean_b=1.1, eta=0.8)
    p = 1.0 - math.exp(-0.8 * 1.1 / 8.0)
    for a in (0, 1, 2):
        nm = stats.conditional_normal_moments(jcd, a, 4)
        assert np.allclose(nm.values, p ** np.arange(5), atol=1e-10)
