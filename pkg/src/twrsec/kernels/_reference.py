"""Pure-numpy batch evaluation of the sum-secrecy rate.

Reference implementation of the hot kernel used by the grid-search oracle.
Kept in plain vectorized numpy so it runs anywhere; the compiled extension
in ``_fast.pyx`` implements the same contract element by element.
"""

from __future__ import annotations

import numpy as np

BACKEND = "reference"


def sum_secrecy_batch(beta, p1, p2, pj,
                      g1: float, g2: float, gj: float,
                      eta: float, n0: float,
                      eps1: float = 0.0, eps2: float = 0.0, epsj: float = 0.0):
    """Sum-secrecy rate for arrays of operating points on one channel.

    ``beta, p1, p2, pj`` are broadcastable arrays; gains are the (estimated)
    power gains and ``eps*`` the worst-case amplitude error bounds (zero for
    perfect knowledge).  Returns an array of rates in bits per channel use.
    """
    beta = np.asarray(beta, dtype=float)
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    pj = np.asarray(pj, dtype=float)
    bt = 1.0 - beta

    w1 = (np.sqrt(g1) + eps1) ** 2
    w2 = (np.sqrt(g2) + eps2) ** 2
    wj = (np.sqrt(gj) + epsj) ** 2

    gw1 = p1 * w1 / n0
    gw2 = p2 * w2 / n0
    gwj = pj * wj / n0
    gw_tot = gw1 + gw2 + gwj

    snr_r1 = bt * gw2 / (bt * (gw1 + gwj) + 1.0)
    snr_r2 = bt * gw1 / (bt * (gw2 + gwj) + 1.0)

    alpha2 = beta * eta * gw_tot / (bt * gw_tot + 1.0)

    rx_est = (p1 * g1 + p2 * g2 + pj * gj) / n0
    leak = (p1 * eps1 ** 2 + p2 * eps2 ** 2 + pj * epsj ** 2) / n0

    snr_s1 = (g1 * alpha2 * bt * p2 * g2 / n0
              / (w1 * alpha2 + 1.0 + alpha2 * bt * (eps1 ** 2 * rx_est + g1 * leak)))
    snr_s2 = (g2 * alpha2 * bt * p1 * g1 / n0
              / (w2 * alpha2 + 1.0 + alpha2 * bt * (eps2 ** 2 * rx_est + g2 * leak)))

    half_log2 = 0.5 / np.log(2.0)
    d1 = half_log2 * (np.log1p(snr_s1) - np.log1p(snr_r1))
    d2 = half_log2 * (np.log1p(snr_s2) - np.log1p(snr_r2))
    return np.maximum(d1, 0.0) + np.maximum(d2, 0.0)
