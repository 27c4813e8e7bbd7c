"""Case-dependent posynomial numerator/denominator pairs of the secrecy objective.

For each sign case the sum-secrecy rate can be written as (1/2)*log2(g/f)
with f and g posynomials in (beta, beta_tilde, gamma1, gamma2, gammaJ),
where gamma_i = P_i * g_i_est / N0.  The pairs are assembled by symbolic
multiplication of the per-direction factors (never hand-expanded), both for
perfect channel knowledge and for the worst-case bounded-error model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import (Allocation, CaseId, ChannelRealization, ContractError,
                    CsiErrorBounds, SystemParams, secrecy_outcome)
from .posynomial import Posynomial

#: Variable ordering shared by every posynomial in this module.
VARS = ("beta", "beta_tilde", "gamma1", "gamma2", "gammaJ")
NVARS = 5
I_BETA, I_BT, I_G1, I_G2, I_GJ = range(5)
_GAMMA_IDX = (I_G1, I_G2, I_GJ)


@dataclass(frozen=True)
class PosyRatio:
    """Posynomial pair with C_S = (1/2)*log2(g/f) on the case's sign region."""

    f: Posynomial
    g: Posynomial
    case: CaseId

    def secrecy_value(self, x) -> float:
        """(1/2)*log2(g(x)/f(x)) at a strictly positive point x."""
        return 0.5 * math.log2(self.g(x) / self.f(x))


def _link_factors(ch: ChannelRealization, sys: SystemParams,
                  err: CsiErrorBounds | None):
    """Worst-case gain multipliers k_i, worst-case gains w_i, and error bounds."""
    gains = ch.gains
    eps = err.effective if err is not None else (0.0, 0.0, 0.0)
    w = tuple((math.sqrt(g) + e) ** 2 for g, e in zip(gains, eps))
    k = tuple(wi / gi for wi, gi in zip(w, gains))
    return k, w, eps


def _direction_pair(direction: int, ch: ChannelRealization, sys: SystemParams,
                    err: CsiErrorBounds | None) -> tuple[Posynomial, Posynomial]:
    """(f, g) for one secrecy direction.

    Direction 1 covers c1s - c1r (message received by S1), direction 2
    covers c2s - c2r.  Clearing the SNR denominators of
    (1 + SNR_Sd)/(1 + SNR_Rd) yields the ratio g/f of two posynomials.
    """
    k, w, eps = _link_factors(ch, sys, err)
    gains = ch.gains
    b = Posynomial.variable(NVARS, I_BETA)
    bt = Posynomial.variable(NVARS, I_BT)

    # Total relay-input SNR at worst-case true gains and at estimated gains.
    gamma_wc = sum(Posynomial.variable(NVARS, i, coef=k[j])
                   for j, i in enumerate(_GAMMA_IDX))
    gamma_est = sum(Posynomial.variable(NVARS, i) for i in _GAMMA_IDX)
    # Residual-leakage sum: sum_i P_i eps_i^2 / N0 = sum_i gamma_i eps_i^2 / g_i.
    leak = Posynomial(NVARS)
    for j, i in enumerate(_GAMMA_IDX):
        if eps[j] > 0.0:
            leak = leak + Posynomial.variable(NVARS, i, coef=eps[j] ** 2 / gains[j])

    d = direction - 1                # index of the receiving source link
    other = I_G2 if direction == 1 else I_G1

    one_plus_bt_gamma = bt * gamma_wc + 1.0
    eta = sys.eta

    denom = (one_plus_bt_gamma
             + (eta * w[d]) * (b * gamma_wc)
             + eta * (b * bt * gamma_wc * (eps[d] ** 2 * gamma_est + gains[d] * leak)))
    numer = denom + (eta * gains[d]) * (b * bt * gamma_wc
                                        * Posynomial.variable(NVARS, other))

    # Relay-side factor: 1 + bt * (sum of interfering worst-case gammas).
    relay = Posynomial.constant(NVARS, 1.0)
    for j, i in enumerate(_GAMMA_IDX):
        if i != other:
            relay = relay + Posynomial.variable(NVARS, i, coef=k[j]) * bt

    f = one_plus_bt_gamma * denom
    g = relay * numer
    return f, g


def build_case_ratio(case: CaseId, ch: ChannelRealization, sys: SystemParams,
                     err: CsiErrorBounds | None = None) -> PosyRatio:
    """Posynomial pair (f, g) for the given sign case.

    Case I multiplies both directions' factors; Cases II and III keep the
    single direction whose secrecy difference is nonnegative.  Case IV has
    identically zero secrecy rate and is rejected.
    """
    if err is not None and err.is_perfect:
        err = None
    if case is CaseId.IV:
        raise ContractError("case IV has zero secrecy rate; nothing to build")
    if case is CaseId.I:
        f1, g1 = _direction_pair(1, ch, sys, err)
        f2, g2 = _direction_pair(2, ch, sys, err)
        return PosyRatio(f=f1 * f2, g=g1 * g2, case=case)
    if case is CaseId.II:
        f, g = _direction_pair(1, ch, sys, err)
        return PosyRatio(f=f, g=g, case=case)
    f, g = _direction_pair(2, ch, sys, err)
    return PosyRatio(f=f, g=g, case=case)


def classify_case(alloc: Allocation, ch: ChannelRealization, sys: SystemParams,
                  err: CsiErrorBounds | None = None) -> CaseId:
    """Sign-pattern case of an operating point (ties count as nonnegative)."""
    return secrecy_outcome(alloc, ch, sys, err).case_id


def point_from_alloc(alloc: Allocation, ch: ChannelRealization,
                     sys: SystemParams) -> tuple[float, ...]:
    """Map an allocation to the posynomial variable vector (beta, bt, gammas)."""
    return (alloc.beta, alloc.beta_tilde,
            alloc.p1 * ch.g1 / sys.N0,
            alloc.p2 * ch.g2 / sys.N0,
            alloc.pj * ch.gJ / sys.N0)


def alloc_from_point(x, ch: ChannelRealization, sys: SystemParams) -> Allocation:
    """Inverse of :func:`point_from_alloc`; renormalizes the splitting pair.

    The relaxed constraint beta + beta_tilde <= 1 is tight at any optimum, so
    beta_tilde is snapped to 1 - beta; powers are scaled down if rounding
    pushed them marginally over the budget.
    """
    beta = min(max(float(x[0]), 1e-12), 1.0 - 1e-12)
    p = [float(x[2]) * sys.N0 / ch.g1,
         float(x[3]) * sys.N0 / ch.g2,
         float(x[4]) * sys.N0 / ch.gJ]
    total = sum(p)
    if total > sys.P:
        p = [v * sys.P / total for v in p]
    return Allocation(p[0], p[1], p[2], beta)
