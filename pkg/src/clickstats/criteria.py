"""Nonclassicality criteria, their classical bounds, and verdicts.

Three tests are evaluated on a joint click distribution:

* conditional correlation: kappa against its classical maximum,
* joint correlation: Pearson coefficient gamma against a bound built from the
  binomial Q parameters of the two marginals,
* higher-order conditional correlation: the minimal eigenvalue of the
  conditional moment matrices (negative only for nonclassical light).

A classical state (any mixture of coherent states, any detector response)
satisfies kappa <= kappa_cl_max, |gamma| <= gamma_cl_max, and frak_n >= 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import jacobi_eigh
from .model import (CriteriaReport, Estimate, JointClickDistribution,
                    UndefinedStatisticError, Verdict)
from .stats import (conditional, conditional_normal_moments, marginals, mean,
                    covariance, summed_click_mean, variance)

JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 64


@dataclass(frozen=True)
class MomentMatrix:
    """Symmetric matrix of conditional moments <:pi_B^(m+m'):>_|a."""

    entries: np.ndarray
    condition: int

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def binomial_q(marginal: np.ndarray, bins: int) -> float:
    """Binomial Q parameter; negative means sub-binomial (nonclassical) light."""
    e = mean(marginal)
    v = variance(marginal)
    if e <= 0.0 or e >= bins:
        raise UndefinedStatisticError(
            f"degenerate marginal: mean click number {e} outside (0, {bins})")
    return bins * v / (e * (bins - e)) - 1.0


def _supported_conditions(jcd: JointClickDistribution) -> np.ndarray:
    ca = jcd.probs.sum(axis=1)
    return np.flatnonzero(ca > 0.0)


def kappa(jcd: JointClickDistribution) -> float:
    """Conditional correlation coefficient: the fraction of B's variance
    removed by conditioning on A's outcome. Lies in [0, 1]."""
    ca, cb = marginals(jcd)
    var_b = variance(cb)
    if var_b <= 0.0:
        raise UndefinedStatisticError("no variability in arm B")
    mean_cond_var = 0.0
    for a in _supported_conditions(jcd):
        mean_cond_var += ca[a] * variance(conditional(jcd, int(a)))
    return 1.0 - mean_cond_var / var_b


def kappa_cl_max(jcd: JointClickDistribution) -> float:
    """Classical upper bound on kappa; may be negative, in which case any
    physical kappa >= 0 already certifies nonclassicality."""
    ca, cb = marginals(jcd)
    n_b = jcd.bins_b
    var_b = variance(cb)
    if var_b <= 0.0:
        raise UndefinedStatisticError("no variability in arm B")
    acc = 0.0
    for a in _supported_conditions(jcd):
        e = mean(conditional(jcd, int(a)))
        acc += ca[a] * e * (n_b - e)
    return 1.0 - acc / (n_b * var_b)


def pearson(jcd: JointClickDistribution) -> float:
    """Pearson correlation coefficient of the joint click outcomes."""
    ca, cb = marginals(jcd)
    var_a = variance(ca)
    var_b = variance(cb)
    if var_a <= 0.0 or var_b <= 0.0:
        raise UndefinedStatisticError("zero variance in one arm")
    return covariance(jcd) / math.sqrt(var_a * var_b)


def pearson_cl_max(jcd: JointClickDistribution) -> float:
    """Classical bound on |gamma|, expressed through the marginal binomial Q
    parameters alone."""
    ca, cb = marginals(jcd)
    n_a, n_b = jcd.bins_a, jcd.bins_b
    q_a = binomial_q(ca, n_a)
    q_b = binomial_q(cb, n_b)
    denom = (n_a - 1) * (n_b - 1) * (q_a + 1.0) * (q_b + 1.0)
    if denom == 0.0:
        raise UndefinedStatisticError("degenerate Q: bound denominator is zero")
    return math.sqrt(abs(n_a * n_b * q_a * q_b / denom))


def moment_matrix(jcd: JointClickDistribution, a: int) -> MomentMatrix:
    """Conditional moment matrix with orders m, m' = 0..floor(N_B/2)."""
    half = jcd.bins_b // 2
    moments = conditional_normal_moments(jcd, a, 2 * half).values
    idx = np.arange(half + 1)
    return MomentMatrix(entries=moments[idx[:, None] + idx[None, :]], condition=a)


def min_eigenvalue(m: MomentMatrix) -> tuple[float, np.ndarray]:
    """Minimal eigenvalue and unit-norm eigenvector (the optimal coefficient
    vector of the higher-order test)."""
    vals, vecs = jacobi_eigh(np.ascontiguousarray(m.entries, dtype=float),
                             JACOBI_TOL, JACOBI_MAX_SWEEPS)
    i = int(np.argmin(vals))
    vec = vecs[:, i]
    return float(vals[i]), vec / np.linalg.norm(vec)


def conditional_nonclassicality_number(jcd: JointClickDistribution) -> float:
    """Minimum over supported conditions of the smallest moment-matrix
    eigenvalue; negative values certify higher-order conditional
    nonclassicality."""
    supported = _supported_conditions(jcd)
    if supported.size == 0:
        raise UndefinedStatisticError("no supported conditions")
    return min(min_eigenvalue(moment_matrix(jcd, int(a)))[0] for a in supported)


def kappa_margin(jcd: JointClickDistribution) -> float:
    """kappa - kappa_cl_max; positive means the classical bound is violated."""
    return kappa(jcd) - kappa_cl_max(jcd)


def pearson_margin(jcd: JointClickDistribution) -> float:
    """|gamma| - gamma_cl_max; positive means the classical bound is violated."""
    return abs(pearson(jcd)) - pearson_cl_max(jcd)


def _estimate(fn, jcd, errors, key) -> Estimate:
    try:
        value = fn(jcd)
    except UndefinedStatisticError:
        return Estimate.undefined()
    err = errors.get(key) if errors else None
    if err is not None and not err.defined:
        return Estimate(value=value, stderr=None, defined=False)
    return Estimate(value=value, stderr=err.stderr if err else None)


def _verdict(margin_fn, jcd, errors, key, threshold) -> Verdict:
    """Margin > 0 is a violation; with bootstrap errors it must additionally
    exceed threshold standard errors."""
    try:
        margin = margin_fn(jcd)
    except UndefinedStatisticError:
        return Verdict(violated=None)
    err = errors.get(key) if errors else None
    if err is None:
        return Verdict(violated=bool(margin > 0.0))
    if not err.defined or err.stderr is None:
        return Verdict(violated=None)
    if err.stderr == 0.0:
        return Verdict(violated=bool(margin > 0.0),
                       significance_sigmas=math.inf if margin > 0.0 else 0.0)
    sig = margin / err.stderr
    return Verdict(violated=bool(sig > threshold), significance_sigmas=sig)


def evaluate_all(jcd: JointClickDistribution,
                 errors: dict | None = None,
                 threshold: float = 3.0,
                 total_shots: int | None = None,
                 bootstrap_replicates: int | None = None,
                 seed: int | None = None,
                 label: str = "",
                 parameters: dict | None = None,
                 condition_counts: tuple = ()) -> CriteriaReport:
    """Assemble the full report: statistics, bounds, errors, and verdicts.

    ``errors`` maps statistic names to bootstrap results (see
    clickstats.uncertainty); without it verdicts reduce to sign checks on the
    exact distribution.
    """
    ca, cb = marginals(jcd)

    moment_warning = False
    for a in _supported_conditions(jcd):
        values = conditional_normal_moments(jcd, int(a), 2 * (jcd.bins_b // 2)).values
        if np.any(values < 0.0) or np.any(values > 1.0):
            moment_warning = True
            break

    return CriteriaReport(
        summed_click_mean=_estimate(summed_click_mean, jcd, errors,
                                    "summed_click_mean"),
        q_a=_estimate(lambda d: binomial_q(marginals(d)[0], d.bins_a),
                      jcd, errors, "q_a"),
        q_b=_estimate(lambda d: binomial_q(marginals(d)[1], d.bins_b),
                      jcd, errors, "q_b"),
        kappa=_estimate(kappa, jcd, errors, "kappa"),
        kappa_cl_max=_estimate(kappa_cl_max, jcd, errors, "kappa_cl_max"),
        gamma=_estimate(pearson, jcd, errors, "gamma"),
        gamma_cl_max=_estimate(pearson_cl_max, jcd, errors, "gamma_cl_max"),
        frak_n=_estimate(conditional_nonclassicality_number, jcd, errors,
                         "frak_n"),
        kappa_test=_verdict(kappa_margin, jcd, errors, "kappa_margin", threshold),
        gamma_test=_verdict(pearson_margin, jcd, errors, "gamma_margin", threshold),
        frak_n_test=_verdict(lambda d: -conditional_nonclassicality_number(d),
                             jcd, errors, "frak_n", threshold),
        bins_a=jcd.bins_a,
        bins_b=jcd.bins_b,
        total_shots=total_shots,
        bootstrap_replicates=bootstrap_replicates,
        seed=seed,
        threshold=threshold,
        label=label,
        moment_warning=moment_warning,
        condition_counts=condition_counts,
        parameters=parameters or {},
    )
