"""Secure communication through an energy-harvesting untrusted two-way relay.

Joint optimization of source/jammer power allocation and the relay's
power-splitting ratio to maximize the sum-secrecy rate, via iterative
signomial geometric programming, under perfect and worst-case imperfect
channel knowledge.
"""

from .model import (Allocation, CaseId, ChannelRealization, ContractError,
                    CsiErrorBounds, SecrecyOutcome, SystemParams,
                    amplification_gain, harvested_energy, harvested_power,
                    node_snrs, relay_snrs, secrecy_outcome,
                    worst_case_node_snrs)
from .cases import PosyRatio, build_case_ratio, classify_case
from .sgp import SgpConfig, SgpResult, optimize
from .oracle import GridSpec, grid_search

__version__ = "0.1.0"

__all__ = [
    "Allocation", "CaseId", "ChannelRealization", "ContractError",
    "CsiErrorBounds", "SecrecyOutcome", "SystemParams",
    "amplification_gain", "harvested_energy", "harvested_power",
    "node_snrs", "relay_snrs", "secrecy_outcome", "worst_case_node_snrs",
    "PosyRatio", "build_case_ratio", "classify_case",
    "SgpConfig", "SgpResult", "optimize", "GridSpec", "grid_search",
]
