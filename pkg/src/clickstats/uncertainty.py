"""Nonparametric bootstrap errors for every reported statistic.

Resampling happens at the level of the raw (a, b) count matrix: each replicate
is a fresh multinomial draw of the full shot count from the empirical
distribution, and every statistic is recomputed from scratch on it. This
propagates the correlation between numerators and denominators of conditional
quantities without any delta-method approximations.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import criteria, stats
from .model import (CountMatrix, JointClickDistribution, UndefinedStatisticError,
                    ValidationError, normalize)

# statistic name -> callable on a JointClickDistribution
STATISTICS: dict = {
    "summed_click_mean": stats.summed_click_mean,
    "q_a": lambda d: criteria.binomial_q(stats.marginals(d)[0], d.bins_a),
    "q_b": lambda d: criteria.binomial_q(stats.marginals(d)[1], d.bins_b),
    "kappa": criteria.kappa,
    "kappa_cl_max": criteria.kappa_cl_max,
    "kappa_margin": criteria.kappa_margin,
    "gamma": criteria.pearson,
    "gamma_cl_max": criteria.pearson_cl_max,
    "gamma_margin": criteria.pearson_margin,
    "frak_n": criteria.conditional_nonclassicality_number,
}

MAX_DROP_FRACTION = 0.5


@dataclass(frozen=True)
class BootstrapConfig:
    replicates: int = 1000
    seed: int = 0
    statistics: tuple = tuple(STATISTICS)

    def __post_init__(self) -> None:
        if self.replicates < 2:
            raise ValidationError("bootstrap needs at least 2 replicates")
        unknown = set(self.statistics) - set(STATISTICS)
        if unknown:
            raise ValidationError(f"unknown statistics: {sorted(unknown)}")


@dataclass(frozen=True)
class BootstrapStat:
    """Standard error of one statistic across replicates.

    ``defined`` is False when the statistic was undefined on more than half of
    the replicates; ``drop_fraction`` records how many were dropped.
    """

    stderr: float | None
    drop_fraction: float
    defined: bool = True


def bootstrap(counts: CountMatrix, cfg: BootstrapConfig) -> dict[str, BootstrapStat]:
    """Multinomial bootstrap of the count matrix; deterministic per seed.

    Each replicate draws from a generator spawned off the config seed, so a
    parallel split of the replicate loop would reproduce the serial result.
    """
    total = counts.total
    if total < 1:
        raise ValidationError("empty dataset: total count is zero")
    pflat = counts.counts.ravel() / total
    shape = counts.counts.shape

    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.replicates)
    samples: dict[str, list] = {name: [] for name in cfg.statistics}
    for child in seeds:
        rng = np.random.default_rng(child)
        replicate = rng.multinomial(total, pflat).reshape(shape)
        jcd = JointClickDistribution(replicate / total)
        for name in cfg.statistics:
            try:
                samples[name].append(STATISTICS[name](jcd))
            except UndefinedStatisticError:
                pass

    out: dict[str, BootstrapStat] = {}
    for name in cfg.statistics:
        values = samples[name]
        drop = 1.0 - len(values) / cfg.replicates
        if drop > MAX_DROP_FRACTION or len(values) < 2:
            out[name] = BootstrapStat(stderr=None, drop_fraction=drop, defined=False)
        else:
            out[name] = BootstrapStat(stderr=float(np.std(values, ddof=1)),
                                      drop_fraction=drop)
    return out
