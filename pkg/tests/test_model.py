import numpy as np
import pytest

import clickstats as cs
from clickstats.model import ValidationError


def test_detector_config_validation():
    cs.DetectorConfig(bins=2)
    with pytest.raises(ValidationError):
        cs.DetectorConfig(bins=1)
    with pytest.raises(ValidationError):
        cs.DetectorConfig(bins=8, efficiency=1.2)
    with pytest.raises(ValidationError):
        cs.DetectorConfig(bins=8, dark_click=1.0)


def test_normalize_rejects_single_bin_matrix():
    with pytest.raises(ValidationError):
        cs.CountMatrix(np.array([[1]]))


def test_normalize_uniform():
    counts = cs.CountMatrix(np.ones((3, 3), dtype=np.int64))
    jcd = cs.normalize(counts)
    assert np.allclose(jcd.probs, 1.0 / 9.0)


def test_normalize_two_point():
    counts = np.zeros((3, 3), dtype=np.int64)
    counts[0, 1] = counts[1, 0] = 500_000
    jcd = cs.normalize(cs.CountMatrix(counts))
    assert jcd.probs[0, 1] == 0.5
    assert jcd.probs[1, 0] == 0.5
    assert jcd.probs.sum() == 1.0


def test_normalize_empty_dataset():
    with pytest.raises(ValidationError, match="empty dataset"):
        cs.normalize(cs.CountMatrix(np.zeros((3, 3), dtype=np.int64)))


def test_normalize_scale_invariant():
    rng = np.random.default_rng(5)
    counts = rng.integers(0, 100, size=(9, 9))
    a = cs.normalize(cs.CountMatrix(counts))
    b = cs.normalize(cs.CountMatrix(counts * 7))
    assert np.array_equal(a.probs, b.probs)


def test_validate_distribution():
    probs = np.full((3, 3), 1.0 / 9.0)
    cs.validate_distribution(cs.JointClickDistribution(probs))
    bad = probs.copy()
    bad[0, 0] = -1e-3
    with pytest.raises(ValidationError, match="negative"):
        cs.JointClickDistribution(bad)
    with pytest.raises(ValidationError, match="not normalized"):
        cs.JointClickDistribution(probs * 0.9)


def test_types_are_immutable():
    jcd = cs.JointClickDistribution(np.full((3, 3), 1.0 / 9.0))
    with pytest.raises(ValueError):
        jcd.probs[0, 0] = 0.5


def test_sampling_l1_convergence_rate():
    # L1 distance between empirical and generating distribution should shrink
    # like M^(-1/2); check the log-log slope over three decades
    cfg = cs.DetectorConfig(8, 0.5, 0.0)
    jcd = cs.joint_click_distribution(
        cs.build_photon_distribution(cs.StateSpec.tmsv(np.sqrt(0.1))), cfg, cfg)
    shots = [10**3, 10**4, 10**5, 10**6]
    l1 = []
    for m in shots:
        dists = []
        for seed in (11, 12, 13, 14):
            emp = cs.normalize(cs.sample_counts(jcd, m, seed))
            dists.append(np.abs(emp.probs - jcd.probs).sum())
        l1.append(np.mean(dists))
    slope = np.polyfit(np.log(shots), np.log(l1), 1)[0]
    assert slope == pytest.approx(-0.5, abs=0.15)


def test_report_round_trip():
    cfg = cs.DetectorConfig(8, 0.5, 0.0)
    jcd = cs.joint_click_distribution(
        cs.build_photon_distribution(cs.StateSpec.split_photon(np.sqrt(0.5))),
        cfg, cfg)
    report = cs.evaluate_all(jcd, label="sp", total_shots=100, seed=3)
    again = cs.CriteriaReport.from_dict(report.to_dict())
    assert again.kappa.value == report.kappa.value
    assert again.gamma_test.violated == report.gamma_test.violated
    assert again.label == "sp"
    assert again.seed == 3
