"""Brute-force grid-search verifier for the power-allocation problem.

Exhaustive evaluation of the sum-secrecy rate over (beta, P1, P2, PJ) with
successive zoom refinement around the incumbent.  Deliberately trades time
for trustworthiness: used to validate the SGP solver and to generate golden
values for the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .model import (Allocation, CaseId, ChannelRealization, ContractError,
                    CsiErrorBounds, SystemParams, secrecy_outcome)
from .sgp import SgpResult

BETA_EDGE = 1e-3  # beta = 0 and 1 give zero rate analytically; stay just inside


@dataclass(frozen=True)
class GridSpec:
    n_beta: int = 15
    n_power: int = 15
    refinement_levels: int = 3

    def __post_init__(self):
        if self.n_beta < 2 or self.n_power < 2 or self.refinement_levels < 1:
            raise ContractError(f"degenerate grid spec: {self}")

    @property
    def effective_points(self) -> float:
        """Nominal per-axis resolution**4 after all x4 zoom levels."""
        per_axis = min(self.n_beta, self.n_power) * 4 ** (self.refinement_levels - 1)
        return float(per_axis) ** 4


def _evaluate(points: np.ndarray, ch: ChannelRealization, sys: SystemParams,
              eps: tuple[float, float, float]) -> np.ndarray:
    return kernels.sum_secrecy_batch(
        points[:, 0], points[:, 1], points[:, 2], points[:, 3],
        ch.g1, ch.g2, ch.gJ, sys.eta, sys.N0, *eps)


def _level_points(grid: GridSpec, center: np.ndarray, widths: np.ndarray,
                  P: float) -> np.ndarray:
    """Cartesian grid clipped to bounds, masked to the power simplex."""
    lo = np.maximum(center - widths / 2.0, [BETA_EDGE, 0.0, 0.0, 0.0])
    hi = np.minimum(center + widths / 2.0, [1.0 - BETA_EDGE, P, P, P])
    axes = [np.linspace(lo[0], hi[0], grid.n_beta)]
    axes += [np.linspace(lo[i], hi[i], grid.n_power) for i in (1, 2, 3)]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=1)
    mask = pts[:, 1] + pts[:, 2] + pts[:, 3] <= P * (1.0 + 1e-12)
    return pts[mask]


def grid_search(ch: ChannelRealization, sys: SystemParams,
                err: CsiErrorBounds | None = None,
                grid: GridSpec | None = None,
                fixed_beta: float | None = None,
                window: tuple | None = None) -> SgpResult:
    """Maximize the sum-secrecy rate by exhaustive refinement search.

    Level 0 covers the whole box (beta just inside (0, 1); powers including
    the simplex faces, so PJ = 0 and single-source corners are always
    probed).  Each further level shrinks the window by 4x around the
    incumbent, which is always re-included so the incumbent value is
    non-decreasing across levels.
    """
    grid = grid or GridSpec()
    eps = err.effective if err is not None else (0.0, 0.0, 0.0)
    P = sys.P
    if P == 0.0:
        alloc = Allocation(0.0, 0.0, 0.0, fixed_beta if fixed_beta is not None else 0.5)
        return SgpResult(best_alloc=alloc, best_case=CaseId.IV, c_sum=0.0,
                         iterations=grid.refinement_levels, trace=(0.0,),
                         converged=True, beta_sum=1.0)

    beta_mid = fixed_beta if fixed_beta is not None else 0.5
    center = np.array([beta_mid, P / 2.0, P / 2.0, P / 2.0])
    widths = np.array([1.0 - 2.0 * BETA_EDGE, P, P, P])
    if fixed_beta is not None:
        widths[0] = 0.0
    if window is not None:
        center = np.asarray(window[0], dtype=float)
        widths = np.asarray(window[1], dtype=float)

    incumbent = None
    best_val = -np.inf
    trace = []
    for _ in range(grid.refinement_levels):
        pts = _level_points(grid, center, widths, P)
        if incumbent is not None:
            pts = np.vstack([pts, incumbent[None, :]])
        vals = _evaluate(pts, ch, sys, eps)
        k = int(np.argmax(vals))
        if vals[k] > best_val:
            best_val = float(vals[k])
            incumbent = pts[k]
        trace.append(best_val)
        center = incumbent.copy()
        widths = widths / 4.0

    alloc = Allocation(float(incumbent[1]), float(incumbent[2]), float(incumbent[3]),
                       float(incumbent[0]))
    outcome = secrecy_outcome(alloc, ch, sys, err)
    return SgpResult(best_alloc=alloc, best_case=outcome.case_id, c_sum=outcome.c_sum,
                     iterations=grid.refinement_levels, trace=tuple(trace),
                     converged=True, beta_sum=1.0)
