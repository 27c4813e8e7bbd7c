"""Physical model of the energy-harvesting untrusted two-way relay link.

Closed-form SNR, rate, and harvesting expressions for a two-source /
friendly-jammer / power-splitting amplify-and-forward relay, under perfect
channel knowledge and under bounded-error (worst-case) channel knowledge at
the sources.  All quantities are linear (watts, power gains); rates are in
bits per channel use using log2.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

SPLIT_TOL = 1e-9
BUDGET_TOL = 1e-8


class CaseId(enum.Enum):
    """Sign pattern of the two per-direction secrecy differences."""

    I = "I"      # both directions nonnegative
    II = "II"    # only S2->S1 direction (c1s - c1r) nonnegative
    III = "III"  # only S1->S2 direction (c2s - c2r) nonnegative
    IV = "IV"    # both negative: zero secrecy rate


class ContractError(ValueError):
    """A precondition or type invariant was violated."""


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ContractError(msg)


@dataclass(frozen=True)
class ChannelRealization:
    """Power gains of the three reciprocal links (relay to S1, S2, jammer)."""

    g1: float
    g2: float
    gJ: float

    def __post_init__(self):
        for name in ("g1", "g2", "gJ"):
            v = getattr(self, name)
            _require(math.isfinite(v) and v > 0.0,
                     f"channel gain {name} must be positive and finite, got {v}")

    @property
    def gains(self) -> tuple[float, float, float]:
        return (self.g1, self.g2, self.gJ)

    def swapped(self) -> "ChannelRealization":
        """Interchange the two source links."""
        return ChannelRealization(self.g2, self.g1, self.gJ)


@dataclass(frozen=True)
class SystemParams:
    """Global constants: power budget, conversion efficiency, noise, slot pair duration."""

    P: float
    eta: float
    N0: float
    T: float = 1.0

    def __post_init__(self):
        # P == 0 is admitted so a zero-budget instance is representable
        # (it trivially yields zero secrecy rate everywhere).
        _require(math.isfinite(self.P) and self.P >= 0.0, f"P must be >= 0, got {self.P}")
        _require(0.0 < self.eta < 1.0, f"eta must be in (0, 1), got {self.eta}")
        _require(self.N0 > 0.0, f"N0 must be positive, got {self.N0}")
        _require(self.T > 0.0, f"T must be positive, got {self.T}")


@dataclass(frozen=True)
class Allocation:
    """Decision variables: source/jammer powers and the power-splitting ratio."""

    p1: float
    p2: float
    pj: float
    beta: float
    beta_tilde: float | None = None

    def __post_init__(self):
        if self.beta_tilde is None:
            object.__setattr__(self, "beta_tilde", 1.0 - self.beta)
        for name in ("p1", "p2", "pj"):
            v = getattr(self, name)
            _require(math.isfinite(v) and v >= 0.0, f"{name} must be >= 0, got {v}")
        _require(-SPLIT_TOL <= self.beta <= 1.0 + SPLIT_TOL,
                 f"beta must lie in [0, 1], got {self.beta}")
        _require(-SPLIT_TOL <= self.beta_tilde <= 1.0 + SPLIT_TOL,
                 f"beta_tilde must lie in [0, 1], got {self.beta_tilde}")
        _require(abs(self.beta + self.beta_tilde - 1.0) <= SPLIT_TOL,
                 f"beta + beta_tilde must equal 1, got {self.beta + self.beta_tilde}")

    @property
    def total_power(self) -> float:
        return self.p1 + self.p2 + self.pj

    def check_budget(self, sys: SystemParams) -> None:
        _require(self.total_power <= sys.P + BUDGET_TOL * max(sys.P, 1.0),
                 f"power budget violated: {self.total_power} > {sys.P}")

    def swapped(self) -> "Allocation":
        return Allocation(self.p2, self.p1, self.pj, self.beta, self.beta_tilde)


@dataclass(frozen=True)
class CsiErrorBounds:
    """Per-link worst-case amplitude estimation errors.

    ``known_mask[i] = True`` marks a link whose channel is known perfectly;
    its error bound is treated as zero regardless of the stored value.
    Order of links: (S1, S2, jammer).
    """

    eps1: float
    eps2: float
    epsJ: float
    known_mask: tuple[bool, bool, bool] = (False, False, False)

    def __post_init__(self):
        for name in ("eps1", "eps2", "epsJ"):
            v = getattr(self, name)
            _require(math.isfinite(v) and v >= 0.0, f"{name} must be >= 0, got {v}")

    @property
    def effective(self) -> tuple[float, float, float]:
        """Error bounds with perfectly known links forced to zero."""
        raw = (self.eps1, self.eps2, self.epsJ)
        return tuple(0.0 if known else e for e, known in zip(raw, self.known_mask))

    @property
    def is_perfect(self) -> bool:
        return all(e == 0.0 for e in self.effective)


@dataclass(frozen=True)
class SecrecyOutcome:
    """Per-link throughputs, active sign case, and the sum-secrecy rate."""

    c1s: float
    c1r: float
    c2s: float
    c2r: float
    case_id: CaseId
    c_sum: float


def worst_case_gains(est: ChannelRealization, err: CsiErrorBounds) -> ChannelRealization:
    """True power gains under the worst admissible estimation error.

    The adverse error realization aligns in phase with the estimate at the
    maximum magnitude, so the true amplitude is |h_i| = |h_i^est| + eps_i.
    """
    e1, e2, eJ = err.effective
    return ChannelRealization(
        (math.sqrt(est.g1) + e1) ** 2,
        (math.sqrt(est.g2) + e2) ** 2,
        (math.sqrt(est.gJ) + eJ) ** 2,
    )


def normalized_snrs(alloc: Allocation, ch: ChannelRealization,
                    sys: SystemParams) -> tuple[float, float, float]:
    """gamma_i = P_i * g_i / N0 for the three transmitters."""
    return (alloc.p1 * ch.g1 / sys.N0,
            alloc.p2 * ch.g2 / sys.N0,
            alloc.pj * ch.gJ / sys.N0)


def harvested_power(alloc: Allocation, ch: ChannelRealization, sys: SystemParams) -> float:
    """Relay transmit power from the power-splitting energy harvester."""
    alloc.check_budget(sys)
    return alloc.beta * sys.eta * (alloc.p1 * ch.g1 + alloc.p2 * ch.g2 + alloc.pj * ch.gJ)


def harvested_energy(alloc: Allocation, ch: ChannelRealization, sys: SystemParams) -> float:
    """Energy collected during the first slot: P_H * (T/2)."""
    return harvested_power(alloc, ch, sys) * (sys.T / 2.0)


def relay_snrs(alloc: Allocation, ch: ChannelRealization,
               sys: SystemParams) -> tuple[float, float]:
    """(SNR_R1, SNR_R2): relay-side SNRs when decoding x2 and x1 respectively."""
    alloc.check_budget(sys)
    g1, g2, gJ = normalized_snrs(alloc, ch, sys)
    bt = alloc.beta_tilde
    snr_r1 = bt * g2 / (bt * g1 + bt * gJ + 1.0)
    snr_r2 = bt * g1 / (bt * g2 + bt * gJ + 1.0)
    return snr_r1, snr_r2


def amplification_gain(alloc: Allocation, ch: ChannelRealization, sys: SystemParams) -> float:
    """AF amplification factor alpha set by the harvested power."""
    alloc.check_budget(sys)
    g1, g2, gJ = normalized_snrs(alloc, ch, sys)
    tot = g1 + g2 + gJ
    return math.sqrt(alloc.beta * sys.eta * tot / (alloc.beta_tilde * tot + 1.0))


def node_snrs(alloc: Allocation, ch: ChannelRealization,
              sys: SystemParams) -> tuple[float, float]:
    """(SNR_S1, SNR_S2): end-node SNRs after self-interference and jammer cancellation."""
    alloc.check_budget(sys)
    g1, g2, gJ = normalized_snrs(alloc, ch, sys)
    tot = g1 + g2 + gJ
    b, bt, eta = alloc.beta, alloc.beta_tilde, sys.eta
    snr_s1 = g2 * ch.g1 * b * bt * eta * tot / ((ch.g1 * b * eta + bt) * tot + 1.0)
    snr_s2 = g1 * ch.g2 * b * bt * eta * tot / ((ch.g2 * b * eta + bt) * tot + 1.0)
    return snr_s1, snr_s2


def worst_case_node_snrs(alloc: Allocation, est_ch: ChannelRealization,
                         err: CsiErrorBounds, sys: SystemParams) -> tuple[float, float]:
    """End-node SNRs under the worst admissible channel-estimation errors.

    The amplification factor is evaluated at the worst-case true amplitudes
    |h_i| = |h_i^est| + eps_i (the relay itself knows the channels), and the
    node-side denominators pick up the residual self-interference and
    jammer-leakage terms caused by imperfect cancellation.
    """
    alloc.check_budget(sys)
    e1, e2, eJ = err.effective
    wc = worst_case_gains(est_ch, err)
    a2 = amplification_gain(alloc, wc, sys) ** 2
    bt = alloc.beta_tilde
    n0 = sys.N0

    rx_est = alloc.p1 * est_ch.g1 + alloc.p2 * est_ch.g2 + alloc.pj * est_ch.gJ
    leak = alloc.p1 * e1 ** 2 + alloc.p2 * e2 ** 2 + alloc.pj * eJ ** 2

    num2 = est_ch.g2 * a2 * bt * alloc.p1 * est_ch.g1
    den2 = (n0 * (wc.g2 * a2 + 1.0)
            + a2 * bt * (e2 ** 2 * rx_est + est_ch.g2 * leak))
    num1 = est_ch.g1 * a2 * bt * alloc.p2 * est_ch.g2
    den1 = (n0 * (wc.g1 * a2 + 1.0)
            + a2 * bt * (e1 ** 2 * rx_est + est_ch.g1 * leak))
    return num1 / den1, num2 / den2


def _rate(snr: float) -> float:
    return 0.5 * math.log2(1.0 + snr)


def classify_signs(d1: float, d2: float) -> CaseId:
    """Sign-pattern case of the two secrecy differences (ties count as nonnegative)."""
    if d1 >= 0.0 and d2 >= 0.0:
        return CaseId.I
    if d1 >= 0.0:
        return CaseId.II
    if d2 >= 0.0:
        return CaseId.III
    return CaseId.IV


def secrecy_outcome(alloc: Allocation, ch: ChannelRealization, sys: SystemParams,
                    err: CsiErrorBounds | None = None) -> SecrecyOutcome:
    """All four link rates, the active sign case, and the sum-secrecy rate.

    With ``err`` present (and at least one nonzero effective bound), node-side
    rates use the worst-case SNRs; ``ch`` is then interpreted as the estimated
    power gains.
    """
    alloc.check_budget(sys)
    if err is None or err.is_perfect:
        snr_s1, snr_s2 = node_snrs(alloc, ch, sys)
        snr_r1, snr_r2 = relay_snrs(alloc, ch, sys)
    else:
        snr_s1, snr_s2 = worst_case_node_snrs(alloc, ch, err, sys)
        snr_r1, snr_r2 = relay_snrs(alloc, worst_case_gains(ch, err), sys)

    c1s, c1r = _rate(snr_s1), _rate(snr_r1)
    c2s, c2r = _rate(snr_s2), _rate(snr_r2)
    d1, d2 = c1s - c1r, c2s - c2r
    return SecrecyOutcome(
        c1s=c1s, c1r=c1r, c2s=c2s, c2r=c2r,
        case_id=classify_signs(d1, d2),
        c_sum=max(d1, 0.0) + max(d2, 0.0),
    )
