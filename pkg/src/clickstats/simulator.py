"""Exact click distributions for the standard state families, and samplers.

The detector model is an array of N on-off bins with uniform splitting,
per-photon efficiency eta and per-bin dark-click probability nu. The analytic
kernel uses the inclusion-exclusion identity

    P(no click on a fixed set of s bins) = (1 - nu)^s (1 - s*eta/N)^n

for a Fock input with n photons. Note nu is the per-bin dark-click
*probability*; a linear-response dark rate nu' relates to it by
nu' = -ln(1 - nu).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .model import (CountMatrix, DetectorConfig, JointClickDistribution,
                    JointPhotonDistribution, ValidationError)

TAIL_MASS = 1e-12


@dataclass(frozen=True)
class StateSpec:
    """Parameterization of a two-mode input state.

    variant is one of "coherent", "tmsv", "split_photon", "custom".
    """

    variant: str
    mean_a: float = 0.0
    mean_b: float = 0.0
    squeezing: float = 0.0   # lambda for tmsv, in (0, 1)
    splitting: float = 0.0   # t for split_photon, in (0, 1)
    photon_dist: JointPhotonDistribution | None = None

    @classmethod
    def coherent(cls, mean_a: float, mean_b: float) -> "StateSpec":
        if mean_a < 0 or mean_b < 0:
            raise ValidationError("coherent mean photon numbers must be >= 0")
        return cls("coherent", mean_a=mean_a, mean_b=mean_b)

    @classmethod
    def tmsv(cls, lam: float) -> "StateSpec":
        if not 0.0 < lam < 1.0:
            raise ValidationError(f"tmsv squeezing must be in (0, 1), got {lam}")
        return cls("tmsv", squeezing=lam)

    @classmethod
    def split_photon(cls, t: float) -> "StateSpec":
        if not 0.0 < t < 1.0:
            raise ValidationError(f"splitting amplitude must be in (0, 1), got {t}")
        return cls("split_photon", splitting=t)

    @classmethod
    def custom(cls, dist: JointPhotonDistribution) -> "StateSpec":
        return cls("custom", photon_dist=dist)


def _poisson_truncated(mean: float) -> np.ndarray:
    """Poisson pmf truncated so that the discarded tail mass is < TAIL_MASS."""
    if mean == 0.0:
        return np.array([1.0])
    terms = [math.exp(-mean)]
    cum = terms[0]
    n = 0
    while 1.0 - cum > TAIL_MASS:
        n += 1
        terms.append(terms[-1] * mean / n)
        cum += terms[-1]
    p = np.array(terms)
    return p / p.sum()


def build_photon_distribution(spec: StateSpec) -> JointPhotonDistribution:
    """Joint photon-number probabilities for a state spec, truncated and
    renormalized."""
    if spec.variant == "coherent":
        pa = _poisson_truncated(spec.mean_a)
        pb = _poisson_truncated(spec.mean_b)
        return JointPhotonDistribution(np.outer(pa, pb),
                                       label=f"coherent({spec.mean_a}, {spec.mean_b})")
    if spec.variant == "tmsv":
        lam2 = spec.squeezing ** 2
        # geometric tail: mass beyond n_max is lam2^(n_max+1)
        n_max = max(1, math.ceil(math.log(TAIL_MASS) / math.log(lam2)))
        weights = (1.0 - lam2) * lam2 ** np.arange(n_max + 1)
        probs = np.diag(weights / weights.sum())
        return JointPhotonDistribution(probs, label=f"tmsv({spec.squeezing})")
    if spec.variant == "split_photon":
        t2 = spec.splitting ** 2
        probs = np.zeros((2, 2))
        probs[1, 0] = t2
        probs[0, 1] = 1.0 - t2
        return JointPhotonDistribution(probs, label=f"split_photon({spec.splitting})")
    if spec.variant == "custom":
        if spec.photon_dist is None:
            raise ValidationError("custom state requires a photon distribution")
        return spec.photon_dist
    raise ValidationError(f"unknown state variant: {spec.variant!r}")


def fock_click_kernel(n: int, cfg: DetectorConfig) -> np.ndarray:
    """Click-number distribution K(a | n) for an n-photon Fock input.

    Inclusion-exclusion over the a clicking bins:
    K(a|n) = C(N,a) sum_j (-1)^j C(a,j) (1-nu)^(N-a+j) (1 - (N-a+j) eta/N)^n.
    """
    if n < 0:
        raise ValidationError("photon number must be >= 0")
    big_n = cfg.bins
    eta = cfg.efficiency
    nu = cfg.dark_click
    out = np.zeros(big_n + 1)
    for a in range(big_n + 1):
        acc = 0.0
        for j in range(a + 1):
            s = big_n - a + j
            term = math.comb(a, j) * (1.0 - nu) ** s * (1.0 - s * eta / big_n) ** n
            acc += term if j % 2 == 0 else -term
        out[a] = math.comb(big_n, a) * acc
    return out


def click_kernel_matrix(n_max: int, cfg: DetectorConfig) -> np.ndarray:
    """Stack of fock_click_kernel rows for n = 0..n_max, shape (n_max+1, N+1)."""
    return np.vstack([fock_click_kernel(n, cfg) for n in range(n_max + 1)])


def joint_click_distribution(jpd: JointPhotonDistribution,
                             cfg_a: DetectorConfig,
                             cfg_b: DetectorConfig) -> JointClickDistribution:
    """Exact joint click statistics: both arms measured independently,
    c(a,b) = sum_n p(n_A, n_B) K_A(a|n_A) K_B(b|n_B)."""
    k_a = click_kernel_matrix(jpd.max_a, cfg_a)
    k_b = click_kernel_matrix(jpd.max_b, cfg_b)
    c = k_a.T @ jpd.probs @ k_b
    # kernel rows each sum to 1, so c inherits normalization up to rounding
    c = np.clip(c, 0.0, None)
    return JointClickDistribution(c / c.sum())


def coherent_click_marginal(mean: float, cfg: DetectorConfig) -> np.ndarray:
    """Closed-form marginal for coherent input: binomial over the N bins with
    per-bin click probability 1 - (1-nu) exp(-eta*mean/N)."""
    big_n = cfg.bins
    p = 1.0 - (1.0 - cfg.dark_click) * math.exp(-cfg.efficiency * mean / big_n)
    return np.array([math.comb(big_n, b) * p ** b * (1.0 - p) ** (big_n - b)
                     for b in range(big_n + 1)])


def sample_counts(jcd: JointClickDistribution, shots: int, seed: int) -> CountMatrix:
    """Multinomial draw of `shots` outcomes from the exact distribution."""
    if shots < 1:
        raise ValidationError("shots must be >= 1")
    rng = np.random.default_rng(seed)
    flat = rng.multinomial(shots, jcd.probs.ravel() / jcd.probs.sum())
    return CountMatrix(flat.reshape(jcd.probs.shape))


def sample_counts_physical(jpd: JointPhotonDistribution,
                           cfg_a: DetectorConfig,
                           cfg_b: DetectorConfig,
                           shots: int,
                           seed: int) -> CountMatrix:
    """Brute-force stochastic detector model, shot by shot.

    Independent oracle for the analytic kernel: photons are placed uniformly
    into bins, thinned by the efficiency, and bins dark-click independently.
    """
    if shots < 1:
        raise ValidationError("shots must be >= 1")
    pflat = np.ascontiguousarray(jpd.probs.ravel())
    pflat = pflat / pflat.sum()
    # numba path expects a plain uint32-range seed
    sub_seed = int(np.random.SeedSequence(seed).generate_state(1)[0])
    counts = _kernels.physical_sample(
        pflat, jpd.probs.shape[1], cfg_a.bins, cfg_b.bins,
        cfg_a.efficiency, cfg_b.efficiency,
        cfg_a.dark_click, cfg_b.dark_click,
        shots, sub_seed)
    return CountMatrix(counts)
