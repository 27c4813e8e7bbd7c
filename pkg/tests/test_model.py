"""Closed-form model layer: golden values, invariants, and properties."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twrsec.model import (Allocation, CaseId, ChannelRealization, ContractError,
                          CsiErrorBounds, SystemParams, amplification_gain,
                          classify_signs, harvested_energy, harvested_power,
                          node_snrs, normalized_snrs, relay_snrs,
                          secrecy_outcome, worst_case_gains,
                          worst_case_node_snrs)
from .conftest import SWEEP_CH, make_sys, random_alloc, random_channel

GAINS = st.floats(min_value=1e-3, max_value=1e3)
POWERS = st.floats(min_value=0.0, max_value=1e3)
BETAS = st.floats(min_value=1e-6, max_value=1.0 - 1e-6)
EPS = st.floats(min_value=0.0, max_value=0.5)


def _channel(g1, g2, gj):
    return ChannelRealization(g1, g2, gj)


# -- golden values (independent inline arithmetic, then frozen literals) ----


def test_harvested_power_golden():
    # beta*eta*(P1 g1 + P2 g2 + PJ gJ) with beta=0.5, eta=0.5, P_i=10:
    # 0.25 * 10 * (0.6647 + 2.9152 + 1.3289) = 0.25 * 49.088 = 12.272
    alloc = Allocation(10.0, 10.0, 10.0, 0.5)
    sys = make_sys(30.0)
    assert harvested_power(alloc, SWEEP_CH, sys) == pytest.approx(12.272, rel=1e-12)


def test_node_and_relay_snrs_golden():
    # Equal split of P=100 at beta=0.5 on the fixed sweep channels.
    p = 100.0 / 3.0
    g1, g2, gj = 0.6647, 2.9152, 1.3289
    gam1, gam2, gamj = p * g1, p * g2, p * gj
    tot = gam1 + gam2 + gamj
    b = bt = 0.5
    eta = 0.5
    # End nodes: gamma_other * g_d * b * bt * eta * tot / ((g_d b eta + bt) tot + 1)
    s1 = gam2 * g1 * b * bt * eta * tot / ((g1 * b * eta + bt) * tot + 1.0)
    s2 = gam1 * g2 * b * bt * eta * tot / ((g2 * b * eta + bt) * tot + 1.0)
    # Relay: bt*gamma_other / (bt*(gamma_own + gamma_J) + 1)
    r1 = bt * gam2 / (bt * (gam1 + gamj) + 1.0)
    r2 = bt * gam1 / (bt * (gam2 + gamj) + 1.0)

    alloc = Allocation(p, p, p, 0.5)
    sys = make_sys(100.0)
    assert node_snrs(alloc, SWEEP_CH, sys) == pytest.approx((s1, s2), rel=1e-12)
    assert relay_snrs(alloc, SWEEP_CH, sys) == pytest.approx((r1, r2), rel=1e-12)
    # Frozen regression values.
    assert node_snrs(alloc, SWEEP_CH, sys) == pytest.approx(
        (12.009596584670293, 6.538030869482239), rel=1e-12)
    assert relay_snrs(alloc, SWEEP_CH, sys) == pytest.approx(
        (1.4195559018309312, 0.1544341441880997), rel=1e-12)


def test_sum_secrecy_golden_perfect():
    p = 100.0 / 3.0
    alloc = Allocation(p, p, p, 0.5)
    sys = make_sys(100.0)
    out = secrecy_outcome(alloc, SWEEP_CH, sys)
    s1, s2 = node_snrs(alloc, SWEEP_CH, sys)
    r1, r2 = relay_snrs(alloc, SWEEP_CH, sys)
    expect = (max(0.5 * math.log2((1 + s1) / (1 + r1)), 0.0)
              + max(0.5 * math.log2((1 + s2) / (1 + r2)), 0.0))
    assert out.c_sum == pytest.approx(expect, rel=1e-12)
    assert out.c_sum == pytest.approx(2.5668819383574264, rel=1e-10)
    assert out.case_id is CaseId.I


def test_sum_secrecy_golden_worst_case():
    p = 100.0 / 3.0
    alloc = Allocation(p, p, p, 0.5)
    sys = make_sys(100.0)
    err = CsiErrorBounds(0.05, 0.05, 0.05)
    out = secrecy_outcome(alloc, SWEEP_CH, sys, err)
    assert out.c_sum == pytest.approx(2.4047803288438514, rel=1e-10)
    assert out.c_sum < secrecy_outcome(alloc, SWEEP_CH, sys).c_sum


def test_worst_case_node_snr_inline_arithmetic():
    # Full independent evaluation of the worst-case end-node SNR for S2.
    g1, g2, gj = 1.2479, 1.4484, 6.0162
    e = 0.05
    p1, p2, pj = 40.0, 35.0, 25.0
    b, bt, eta, n0 = 0.4, 0.6, 0.5, 1.0
    w1 = (math.sqrt(g1) + e) ** 2
    w2 = (math.sqrt(g2) + e) ** 2
    wj = (math.sqrt(gj) + e) ** 2
    tot_wc = (p1 * w1 + p2 * w2 + pj * wj) / n0
    a2 = b * eta * tot_wc / (bt * tot_wc + 1.0)
    rx_est = p1 * g1 + p2 * g2 + pj * gj
    leak = (p1 + p2 + pj) * e ** 2
    num2 = g2 * a2 * bt * p1 * g1
    den2 = n0 * (w2 * a2 + 1.0) + a2 * bt * (e ** 2 * rx_est + g2 * leak)
    num1 = g1 * a2 * bt * p2 * g2
    den1 = n0 * (w1 * a2 + 1.0) + a2 * bt * (e ** 2 * rx_est + g1 * leak)

    alloc = Allocation(p1, p2, pj, b)
    sys = make_sys(100.0)
    err = CsiErrorBounds(e, e, e)
    ch = ChannelRealization(g1, g2, gj)
    got = worst_case_node_snrs(alloc, ch, err, sys)
    assert got == pytest.approx((num1 / den1, num2 / den2), rel=1e-12)


# -- trivial behaviors -------------------------------------------------------


def test_zero_power_gives_zero_rate():
    alloc = Allocation(0.0, 0.0, 0.0, 0.5)
    sys = make_sys(0.0)
    out = secrecy_outcome(alloc, SWEEP_CH, sys)
    assert out.c_sum == 0.0
    # All four rates are zero; ties classify as case I by convention.
    assert out.case_id is CaseId.I
    assert harvested_power(alloc, SWEEP_CH, sys) == 0.0


def test_amplification_gain_matches_harvested_power():
    alloc = Allocation(10.0, 5.0, 2.0, 0.3)
    sys = make_sys(20.0)
    a = amplification_gain(alloc, SWEEP_CH, sys)
    g1, g2, gj = normalized_snrs(alloc, SWEEP_CH, sys)
    tot = g1 + g2 + gj
    # alpha^2 * (relay input power + noise) equals the harvested power.
    assert a ** 2 * (alloc.beta_tilde * tot + 1.0) * sys.N0 == pytest.approx(
        harvested_power(alloc, SWEEP_CH, sys), rel=1e-12)


def test_known_mask_zeroes_bounds():
    err = CsiErrorBounds(0.1, 0.2, 0.3, known_mask=(True, False, True))
    assert err.effective == (0.0, 0.2, 0.0)
    assert not err.is_perfect
    assert CsiErrorBounds(0.1, 0.2, 0.3, known_mask=(True, True, True)).is_perfect
    assert CsiErrorBounds(0.0, 0.0, 0.0).is_perfect


def test_worst_case_gains_amplitude_addition():
    ch = ChannelRealization(4.0, 9.0, 16.0)
    err = CsiErrorBounds(1.0, 1.0, 1.0)
    wc = worst_case_gains(ch, err)
    assert wc.gains == pytest.approx((9.0, 16.0, 25.0), rel=1e-14)


def test_classify_signs_all_cases():
    assert classify_signs(0.1, 0.1) is CaseId.I
    assert classify_signs(0.0, 0.0) is CaseId.I
    assert classify_signs(0.1, -0.1) is CaseId.II
    assert classify_signs(-0.1, 0.1) is CaseId.III
    assert classify_signs(-0.1, -0.1) is CaseId.IV


# -- contract violations -----------------------------------------------------


@pytest.mark.parametrize("gains", [(0.0, 1.0, 1.0), (1.0, -2.0, 1.0),
                                   (1.0, 1.0, float("nan")), (1.0, float("inf"), 1.0)])
def test_invalid_gains_rejected(gains):
    with pytest.raises(ContractError):
        ChannelRealization(*gains)


def test_invalid_system_params_rejected():
    with pytest.raises(ContractError):
        SystemParams(P=-1.0, eta=0.5, N0=1.0)
    with pytest.raises(ContractError):
        SystemParams(P=1.0, eta=0.0, N0=1.0)
    with pytest.raises(ContractError):
        SystemParams(P=1.0, eta=1.0, N0=1.0)
    with pytest.raises(ContractError):
        SystemParams(P=1.0, eta=0.5, N0=0.0)


def test_invalid_allocation_rejected():
    with pytest.raises(ContractError):
        Allocation(-1.0, 0.0, 0.0, 0.5)
    with pytest.raises(ContractError):
        Allocation(1.0, 1.0, 1.0, 1.5)
    with pytest.raises(ContractError):
        Allocation(1.0, 1.0, 1.0, 0.3, beta_tilde=0.5)


def test_budget_violation_rejected():
    alloc = Allocation(10.0, 10.0, 10.0, 0.5)
    with pytest.raises(ContractError):
        harvested_power(alloc, SWEEP_CH, make_sys(20.0))


def test_negative_error_bound_rejected():
    with pytest.raises(ContractError):
        CsiErrorBounds(-0.1, 0.0, 0.0)


# -- properties --------------------------------------------------------------


@settings(deadline=None, max_examples=200)
@given(st.integers(min_value=0, max_value=10 ** 9))
def test_degeneration_zero_error_matches_perfect(seed):
    import numpy as np
    rng = np.random.default_rng(seed)
    ch = random_channel(rng)
    sys = make_sys(float(rng.uniform(0.1, 1000.0)))
    alloc = random_alloc(rng, sys.P)
    err = CsiErrorBounds(0.0, 0.0, 0.0)
    exact = node_snrs(alloc, ch, sys)
    degen = worst_case_node_snrs(alloc, ch, err, sys)
    assert degen == pytest.approx(exact, rel=1e-12, abs=1e-300)
    out_p = secrecy_outcome(alloc, ch, sys)
    out_w = secrecy_outcome(alloc, ch, sys, err)
    assert out_w.c_sum == pytest.approx(out_p.c_sum, rel=1e-12, abs=0.0)


@settings(deadline=None, max_examples=100)
@given(g1=GAINS, g2=GAINS, gj=GAINS, p1=POWERS, p2=POWERS, beta=BETAS,
       pj_lo=st.floats(min_value=0.0, max_value=100.0),
       pj_add=st.floats(min_value=1e-3, max_value=100.0))
def test_more_jamming_hurts_relay(g1, g2, gj, p1, p2, beta, pj_lo, pj_add):
    ch = _channel(g1, g2, gj)
    sys = make_sys(p1 + p2 + pj_lo + pj_add + 1.0)
    lo = relay_snrs(Allocation(p1, p2, pj_lo, beta), ch, sys)
    hi = relay_snrs(Allocation(p1, p2, pj_lo + pj_add, beta), ch, sys)
    assert hi[0] <= lo[0] + 1e-15
    assert hi[1] <= lo[1] + 1e-15


@settings(deadline=None, max_examples=100)
@given(st.integers(min_value=0, max_value=10 ** 9))
def test_swap_symmetry(seed):
    import numpy as np
    rng = np.random.default_rng(seed)
    ch = random_channel(rng)
    sys = make_sys(float(rng.uniform(0.1, 1000.0)))
    alloc = random_alloc(rng, sys.P)
    out = secrecy_outcome(alloc, ch, sys)
    mirrored = secrecy_outcome(alloc.swapped(), ch.swapped(), sys)
    assert mirrored.c1s == pytest.approx(out.c2s, rel=1e-12, abs=1e-300)
    assert mirrored.c1r == pytest.approx(out.c2r, rel=1e-12, abs=1e-300)
    assert mirrored.c_sum == pytest.approx(out.c_sum, rel=1e-12, abs=1e-300)


@settings(deadline=None, max_examples=100)
@given(seed=st.integers(min_value=0, max_value=10 ** 9),
       eps=EPS, t_slot=st.floats(min_value=0.1, max_value=10.0))
def test_outputs_finite_nonnegative_and_energy_identity(seed, eps, t_slot):
    import numpy as np
    rng = np.random.default_rng(seed)
    ch = random_channel(rng)
    sys = SystemParams(P=float(rng.uniform(0.1, 1000.0)), eta=0.5, N0=1.0, T=t_slot)
    alloc = random_alloc(rng, sys.P)
    err = CsiErrorBounds(eps, eps, eps)
    for e in (None, err):
        out = secrecy_outcome(alloc, ch, sys, e)
        for v in (out.c1s, out.c1r, out.c2s, out.c2r, out.c_sum):
            assert math.isfinite(v) and v >= 0.0
    ph = harvested_power(alloc, ch, sys)
    assert harvested_energy(alloc, ch, sys) == pytest.approx(ph * t_slot / 2.0, rel=1e-15)
