"""Shared fixtures and samplers for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from twrsec.model import Allocation, ChannelRealization, CsiErrorBounds, SystemParams

# Fixed channel realizations used by the sweep studies (and throughout the tests).
SWEEP_CH = ChannelRealization(0.6647, 2.9152, 1.3289)
JAM_CH = ChannelRealization(1.2479, 1.4484, 6.0162)


@pytest.fixture
def sweep_ch() -> ChannelRealization:
    return SWEEP_CH


@pytest.fixture
def jam_ch() -> ChannelRealization:
    return JAM_CH


def make_sys(P: float, eta: float = 0.5, n0: float = 1.0) -> SystemParams:
    return SystemParams(P=P, eta=eta, N0=n0)


def random_channel(rng: np.random.Generator) -> ChannelRealization:
    return ChannelRealization(*(float(rng.exponential(1.0)) for _ in range(3)))


def random_alloc(rng: np.random.Generator, P: float,
                 beta_lo: float = 0.02, beta_hi: float = 0.98) -> Allocation:
    """Strictly interior random allocation on the power simplex."""
    w = rng.dirichlet(np.ones(3)) * float(rng.uniform(0.2, 1.0)) * P
    beta = float(rng.uniform(beta_lo, beta_hi))
    return Allocation(float(w[0]), float(w[1]), float(w[2]), beta)


def random_err(rng: np.random.Generator, hi: float = 0.15) -> CsiErrorBounds:
    return CsiErrorBounds(*(float(rng.uniform(0.0, hi)) for _ in range(3)))
