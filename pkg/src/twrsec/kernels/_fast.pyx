# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch evaluation of the sum-secrecy rate (hot oracle kernel)."""

from libc.math cimport log1p, log, sqrt

import numpy as np

BACKEND = "cython"


def sum_secrecy_batch(beta, p1, p2, pj,
                      double g1, double g2, double gj,
                      double eta, double n0,
                      double eps1=0.0, double eps2=0.0, double epsj=0.0):
    """Same contract as the reference kernel; inputs are broadcast to 1-D."""
    b_arr, p1_arr, p2_arr, pj_arr = np.broadcast_arrays(
        np.asarray(beta, dtype=np.float64), np.asarray(p1, dtype=np.float64),
        np.asarray(p2, dtype=np.float64), np.asarray(pj, dtype=np.float64))
    shape = b_arr.shape
    cdef double[::1] bv = np.ascontiguousarray(b_arr.ravel())
    cdef double[::1] p1v = np.ascontiguousarray(p1_arr.ravel())
    cdef double[::1] p2v = np.ascontiguousarray(p2_arr.ravel())
    cdef double[::1] pjv = np.ascontiguousarray(pj_arr.ravel())
    out = np.empty(bv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out

    cdef double w1 = (sqrt(g1) + eps1) ** 2
    cdef double w2 = (sqrt(g2) + eps2) ** 2
    cdef double wj = (sqrt(gj) + epsj) ** 2
    cdef double e1sq = eps1 * eps1
    cdef double e2sq = eps2 * eps2
    cdef double ejsq = epsj * epsj
    cdef double half_log2 = 0.5 / log(2.0)

    cdef Py_ssize_t i, n = bv.shape[0]
    cdef double b, bt, pa, pb, pc
    cdef double gw1, gw2, gwj, gw_tot, alpha2, rx_est, leak
    cdef double snr_r1, snr_r2, snr_s1, snr_s2, d1, d2, c

    with nogil:
        for i in range(n):
            b = bv[i]
            bt = 1.0 - b
            pa = p1v[i]
            pb = p2v[i]
            pc = pjv[i]

            gw1 = pa * w1 / n0
            gw2 = pb * w2 / n0
            gwj = pc * wj / n0
            gw_tot = gw1 + gw2 + gwj

            snr_r1 = bt * gw2 / (bt * (gw1 + gwj) + 1.0)
            snr_r2 = bt * gw1 / (bt * (gw2 + gwj) + 1.0)

            alpha2 = b * eta * gw_tot / (bt * gw_tot + 1.0)
            rx_est = (pa * g1 + pb * g2 + pc * gj) / n0
            leak = (pa * e1sq + pb * e2sq + pc * ejsq) / n0

            snr_s1 = (g1 * alpha2 * bt * pb * g2 / n0
                      / (w1 * alpha2 + 1.0 + alpha2 * bt * (e1sq * rx_est + g1 * leak)))
            snr_s2 = (g2 * alpha2 * bt * pa * g1 / n0
                      / (w2 * alpha2 + 1.0 + alpha2 * bt * (e2sq * rx_est + g2 * leak)))

            d1 = half_log2 * (log1p(snr_s1) - log1p(snr_r1))
            d2 = half_log2 * (log1p(snr_s2) - log1p(snr_r2))
            c = 0.0
            if d1 > 0.0:
                c += d1
            if d2 > 0.0:
                c += d2
            ov[i] = c

    return out.reshape(shape)
