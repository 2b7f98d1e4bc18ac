"""Hot numeric kernels with optional numba acceleration.

Set ``CLICKSTATS_DISABLE_NUMBA=1`` to force the pure-numpy fallbacks (also
used automatically when numba is not importable). Both paths are seeded and
deterministic, but they consume different random streams, so counts from the
two backends agree only statistically.
"""
from __future__ import annotations

import math
import os

import numpy as np

_DISABLED = os.environ.get("CLICKSTATS_DISABLE_NUMBA", "").strip() not in ("", "0")

if not _DISABLED:
    try:
        from numba import njit

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover
        NUMBA_ENABLED = False
else:
    NUMBA_ENABLED = False


def _physical_sample_loop(pflat, ncols, bins_a, bins_b, eta_a, eta_b,
                          nu_a, nu_b, shots, seed):
    """Per-shot stochastic detector model; counts clicking bins per arm.

    Each photon lands in a uniformly random bin and is detected with the arm
    efficiency; every bin can additionally dark-click.
    """
    np.random.seed(seed)
    cdf = np.cumsum(pflat)
    counts = np.zeros((bins_a + 1, bins_b + 1), dtype=np.int64)
    bins_hit_a = np.zeros(bins_a, dtype=np.bool_)
    bins_hit_b = np.zeros(bins_b, dtype=np.bool_)
    for _ in range(shots):
        flat = int(np.searchsorted(cdf, np.random.random()))
        if flat >= pflat.size:
            flat = pflat.size - 1
        n_a = flat // ncols
        n_b = flat % ncols
        bins_hit_a[:] = False
        for _ in range(n_a):
            if np.random.random() < eta_a:
                bins_hit_a[int(np.random.random() * bins_a)] = True
        a = 0
        for i in range(bins_a):
            if bins_hit_a[i] or (nu_a > 0.0 and np.random.random() < nu_a):
                a += 1
        bins_hit_b[:] = False
        for _ in range(n_b):
            if np.random.random() < eta_b:
                bins_hit_b[int(np.random.random() * bins_b)] = True
        b = 0
        for i in range(bins_b):
            if bins_hit_b[i] or (nu_b > 0.0 and np.random.random() < nu_b):
                b += 1
        counts[a, b] += 1
    return counts


def _physical_sample_numpy(pflat, ncols, bins_a, bins_b, eta_a, eta_b,
                           nu_a, nu_b, shots, seed):
    """Vectorized fallback for the per-shot detector model."""
    rng = np.random.default_rng(seed)
    flat = rng.choice(pflat.size, size=shots, p=pflat)
    n_a = flat // ncols
    n_b = flat % ncols

    def arm_clicks(n, bins, eta, nu):
        detected = rng.binomial(n, eta)
        # spread the detected photons uniformly over the bins, then count
        # occupied bins; dark clicks fire independently on every bin
        occupancy = rng.multinomial(detected, np.full(bins, 1.0 / bins))
        clicking = occupancy > 0
        if nu > 0.0:
            clicking |= rng.random(size=(shots, bins)) < nu
        return clicking.sum(axis=1)

    a = arm_clicks(n_a, bins_a, eta_a, nu_a)
    b = arm_clicks(n_b, bins_b, eta_b, nu_b)
    joint = np.ravel_multi_index((a, b), (bins_a + 1, bins_b + 1))
    counts = np.bincount(joint, minlength=(bins_a + 1) * (bins_b + 1))
    return counts.reshape(bins_a + 1, bins_b + 1).astype(np.int64)


def _jacobi_eigh_impl(mat, tol, max_sweeps):
    """Cyclic Jacobi diagonalization of a small symmetric matrix.

    Returns (eigenvalues, eigenvectors as columns), unsorted. Converges when
    the off-diagonal Frobenius norm drops below ``tol``.
    """
    n = mat.shape[0]
    a = mat.copy()
    v = np.eye(n)
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += 2.0 * a[p, q] * a[p, q]
        if math.sqrt(off) < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = 0.5 * (a[q, q] - a[p, p]) / apq
                t = math.copysign(1.0, theta) / (
                    abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    return np.diag(a).copy(), v


if NUMBA_ENABLED:
    physical_sample = njit(cache=True)(_physical_sample_loop)
    jacobi_eigh = njit(cache=True)(_jacobi_eigh_impl)
else:
    physical_sample = _physical_sample_numpy
    jacobi_eigh = _jacobi_eigh_impl
