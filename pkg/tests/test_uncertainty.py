import numpy as np
import pytest

import clickstats as cs
from clickstats import stats
from clickstats.model import ValidationError
from clickstats.uncertainty import BootstrapConfig, bootstrap


def coherent_counts(shots, seed=21):
    cfg = cs.DetectorConfig(8, 0.8, 0.0)
    jpd = cs.build_photon_distribution(cs.StateSpec.coherent(0.5, 0.5))
    jcd = cs.joint_click_distribution(jpd, cfg, cfg)
    return cs.sample_counts(jcd, shots, seed)


def test_config_validation():
    with pytest.raises(ValidationError):
        BootstrapConfig(replicates=1)
    with pytest.raises(ValidationError):
        BootstrapConfig(statistics=("no_such_stat",))


def test_determinism():
    counts = coherent_counts(10**4)
    cfg = BootstrapConfig(replicates=100, seed=5)
    a = bootstrap(counts, cfg)
    b = bootstrap(counts, cfg)
    assert a.keys() == b.keys()
    for name in a:
        assert a[name].stderr == b[name].stderr
        assert a[name].drop_fraction == b[name].drop_fraction


def test_degenerate_counts():
    counts = np.zeros((9, 9), dtype=np.int64)
    counts[0, 0] = 1000
    out = bootstrap(cs.CountMatrix(counts), BootstrapConfig(replicates=50, seed=1))
    assert out["summed_click_mean"].stderr == 0.0
    assert out["q_a"].defined is False
    assert out["kappa"].defined is False
    assert out["gamma"].defined is False


def test_linear_statistic_anchor():
    # bootstrap error of E(a+b) vs the closed-form multinomial standard error
    counts = coherent_counts(10**5)
    jcd = cs.normalize(counts)
    s = np.add.outer(np.arange(9), np.arange(9))
    var_s = float((jcd.probs * s**2).sum() - (jcd.probs * s).sum() ** 2)
    analytic = np.sqrt(var_s / counts.total)
    out = bootstrap(counts, BootstrapConfig(replicates=1000, seed=2,
                                            statistics=("summed_click_mean",)))
    assert out["summed_click_mean"].stderr == pytest.approx(analytic, rel=0.2)


def test_gamma_error_scaling():
    cfg = BootstrapConfig(replicates=400, seed=3, statistics=("gamma",))
    small = bootstrap(coherent_counts(10**4), cfg)["gamma"].stderr
    large = bootstrap(coherent_counts(10**6), cfg)["gamma"].stderr
    assert small / large == pytest.approx(10.0, rel=0.3)


def test_statistic_subset():
    counts = coherent_counts(10**4)
    out = bootstrap(counts, BootstrapConfig(replicates=50, seed=4,
                                            statistics=("kappa", "gamma")))
    assert set(out) == {"kappa", "gamma"}
