"""Independent brute-force oracles used by the test suite.

These deliberately avoid the analytic inclusion-exclusion kernel: click
distributions are obtained by exhaustively enumerating every placement of the
photons into the detector bins and convolving exact per-bin click
probabilities.
"""
import itertools

import numpy as np


def enumerate_click_kernel(n: int, bins: int, eta: float, nu: float) -> np.ndarray:
    """Click-number distribution for an n-photon input by full enumeration.

    Every one of the bins**n equally likely photon placements is enumerated;
    a bin holding k photons clicks with probability 1 - (1-nu)(1-eta)**k
    (each photon detected independently, plus an independent dark click).
    The click-number distribution is the exact convolution of those
    per-bin Bernoullis, averaged over placements.
    """
    if n == 0:
        occupancies = np.zeros((1, bins), dtype=np.int64)
    else:
        placements = np.array(list(itertools.product(range(bins), repeat=n)),
                              dtype=np.int64)
        occupancies = np.zeros((placements.shape[0], bins), dtype=np.int64)
        rows = np.arange(placements.shape[0])
        for j in range(n):
            np.add.at(occupancies, (rows, placements[:, j]), 1)
    p_click = 1.0 - (1.0 - nu) * (1.0 - eta) ** occupancies
    poly = np.zeros((occupancies.shape[0], bins + 1))
    poly[:, 0] = 1.0
    for i in range(bins):
        p = p_click[:, i][:, None]
        shifted = np.zeros_like(poly)
        shifted[:, 1:] = poly[:, :-1]
        poly = poly * (1.0 - p) + shifted * p
    return poly.mean(axis=0)


def random_click_distribution(rng, bins_a=8, bins_b=8):
    """A random valid joint click distribution (Dirichlet-flat)."""
    probs = rng.dirichlet(np.ones((bins_a + 1) * (bins_b + 1)))
    return probs.reshape(bins_a + 1, bins_b + 1)
