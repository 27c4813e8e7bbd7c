"""Reproduction studies: beta sensitivity, allocation policies, CSI-error sweeps.

Each runner takes an :class:`ExperimentPlan` and returns canonical, sorted
result rows; CSV/JSON writers attach reproducibility metadata (seed, config
echo, dB convention).  Power budgets are specified in dB relative to the
noise floor: P_linear = N0 * 10**(P_dB / 10).
"""

from __future__ import annotations

import csv
import enum
import json
import math
import subprocess
import time
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from . import sgp
from .model import (Allocation, ChannelRealization, CsiErrorBounds,
                    SystemParams, harvested_energy, secrecy_outcome)

# Fixed channel realizations used throughout the sweep studies.
BETA_SWEEP_CHANNELS = ChannelRealization(0.6647, 2.9152, 1.3289)
EPSILON_SWEEP_CHANNELS = ChannelRealization(1.2479, 1.4484, 6.0162)

#: Default CSI-knowledge patterns for the epsilon sweep, as known-masks over
#: (h1, h2, hJ).  A: every channel estimated with error; B: the jammer link
#: known perfectly; C: only the jammer link estimated with error.  The
#: mapping of the sweep's three scenarios to masks is configuration, not a
#: modeling claim.
DEFAULT_CSI_CASES: tuple[tuple[bool, bool, bool], ...] = (
    (False, False, False),
    (False, False, True),
    (True, True, False),
)


class PlanKind(enum.Enum):
    BETA_SWEEP = "beta-sweep"
    ALLOC_COMPARE = "alloc-compare"
    EPSILON_SWEEP = "epsilon-sweep"
    MONTE_CARLO = "monte-carlo"


@dataclass(frozen=True)
class FadingSpec:
    """Unit-mean exponential power gains (Rayleigh amplitudes) by default."""

    mean_g1: float = 1.0
    mean_g2: float = 1.0
    mean_gJ: float = 1.0


@dataclass(frozen=True)
class ExperimentPlan:
    kind: PlanKind
    power_grid_db: tuple[float, ...] = (20.0,)
    epsilon_grid: tuple[float, ...] = (0.0,)
    csi_cases: tuple[tuple[bool, bool, bool], ...] = DEFAULT_CSI_CASES
    channels: ChannelRealization | FadingSpec = BETA_SWEEP_CHANNELS
    trials: int = 1
    seed: int = 0
    eta: float = 0.5
    n0: float = 1.0
    fixed_betas: tuple[float, ...] = (0.15, 0.85)
    optimize_equal_beta: bool = True   # scalar-search beta for the equal-power policy
    equal_beta: float = 0.5            # used when optimize_equal_beta is off
    restarts: int = 3

    def __post_init__(self):
        if not self.power_grid_db or not self.epsilon_grid or self.trials < 1:
            raise ValueError("plan needs nonempty grids and trials >= 1")


@dataclass(frozen=True)
class ResultRow:
    p_db: float
    epsilon: float
    csi_case: str
    trial: int
    label: str
    c_sum: float
    p1: float
    p2: float
    pj: float
    beta: float
    case_id: str
    iterations: int
    e_h: float
    wall_time_s: float


def db_to_linear(p_db: float, n0: float) -> float:
    return n0 * 10.0 ** (p_db / 10.0)


def mask_str(mask: tuple[bool, bool, bool]) -> str:
    return "".join("1" if m else "0" for m in mask)


def _sort_key(row: ResultRow):
    return (row.p_db, row.epsilon, row.csi_case, row.trial, row.label)


def _row(p_db, epsilon, csi_case, trial, label, alloc: Allocation, res,
         ch: ChannelRealization, sys: SystemParams, wall: float) -> ResultRow:
    return ResultRow(
        p_db=p_db, epsilon=epsilon, csi_case=csi_case, trial=trial, label=label,
        c_sum=res.c_sum, p1=alloc.p1, p2=alloc.p2, pj=alloc.pj, beta=alloc.beta,
        case_id=res.best_case.value, iterations=res.iterations,
        e_h=harvested_energy(alloc, ch, sys), wall_time_s=wall)


def _sys(plan: ExperimentPlan, p_db: float) -> SystemParams:
    return SystemParams(P=db_to_linear(p_db, plan.n0), eta=plan.eta, N0=plan.n0)


def _cfg(plan: ExperimentPlan) -> sgp.SgpConfig:
    return sgp.SgpConfig(restarts=plan.restarts, seed=plan.seed)


def run_beta_sweep(plan: ExperimentPlan) -> list[ResultRow]:
    """Optimal beta vs fixed low/high beta on the fixed sweep channels."""
    assert plan.kind is PlanKind.BETA_SWEEP
    ch = plan.channels
    rows: list[ResultRow] = []
    for p_db in plan.power_grid_db:
        sys = _sys(plan, p_db)
        t0 = time.perf_counter()
        res = sgp.optimize(ch, sys, cfg=_cfg(plan))
        rows.append(_row(p_db, 0.0, "none", 0, "beta=optimal", res.best_alloc,
                         res, ch, sys, time.perf_counter() - t0))
        for b in plan.fixed_betas:
            t0 = time.perf_counter()
            res_b = sgp.optimize(ch, sys, cfg=_cfg(plan), fixed_beta=b)
            rows.append(_row(p_db, 0.0, "none", 0, f"beta={b:g}", res_b.best_alloc,
                             res_b, ch, sys, time.perf_counter() - t0))
    return sorted(rows, key=_sort_key)


def equal_allocation(ch: ChannelRealization, sys: SystemParams,
                     err: CsiErrorBounds | None, optimize_beta: bool = True,
                     beta: float = 0.5) -> Allocation:
    """Equal power split; beta by bounded scalar search unless pinned."""
    p = sys.P / 3.0
    if optimize_beta:
        res = minimize_scalar(
            lambda b: -secrecy_outcome(Allocation(p, p, p, b), ch, sys, err).c_sum,
            bounds=(1e-6, 1.0 - 1e-6), method="bounded",
            options={"xatol": 1e-10})
        beta = float(res.x)
    return Allocation(p, p, p, beta)


def run_alloc_compare(plan: ExperimentPlan) -> list[ResultRow]:
    """Optimal vs equal power allocation across budget and error grids."""
    assert plan.kind is PlanKind.ALLOC_COMPARE
    ch = plan.channels
    rows: list[ResultRow] = []
    for p_db in plan.power_grid_db:
        sys = _sys(plan, p_db)
        for eps in plan.epsilon_grid:
            err = CsiErrorBounds(eps, eps, eps) if eps > 0.0 else None
            t0 = time.perf_counter()
            res = sgp.optimize(ch, sys, err, cfg=_cfg(plan))
            rows.append(_row(p_db, eps, "000", 0, "optimal", res.best_alloc,
                             res, ch, sys, time.perf_counter() - t0))
            t0 = time.perf_counter()
            alloc = equal_allocation(ch, sys, err, plan.optimize_equal_beta,
                                     plan.equal_beta)
            outcome = secrecy_outcome(alloc, ch, sys, err)
            eq = sgp.SgpResult(best_alloc=alloc, best_case=outcome.case_id,
                               c_sum=outcome.c_sum, iterations=0, trace=(outcome.c_sum,),
                               converged=True, beta_sum=1.0)
            rows.append(_row(p_db, eps, "000", 0, "equal", alloc, eq, ch, sys,
                             time.perf_counter() - t0))
    return sorted(rows, key=_sort_key)


def run_epsilon_sweep(plan: ExperimentPlan) -> list[ResultRow]:
    """Sum-secrecy rate and jammer power vs error bound for each CSI pattern."""
    assert plan.kind is PlanKind.EPSILON_SWEEP
    ch = plan.channels
    rows: list[ResultRow] = []
    for p_db in plan.power_grid_db:
        sys = _sys(plan, p_db)
        for mask in plan.csi_cases:
            for eps in plan.epsilon_grid:
                err = CsiErrorBounds(eps, eps, eps, known_mask=mask)
                t0 = time.perf_counter()
                res = sgp.optimize(ch, sys, err, cfg=_cfg(plan))
                rows.append(_row(p_db, eps, mask_str(mask), 0, "optimal",
                                 res.best_alloc, res, ch, sys,
                                 time.perf_counter() - t0))
    return sorted(rows, key=_sort_key)


def run_monte_carlo(plan: ExperimentPlan) -> list[ResultRow]:
    """Averaging harness over random exponential-power-gain channels."""
    assert plan.kind is PlanKind.MONTE_CARLO
    rng = np.random.default_rng(plan.seed)
    rows: list[ResultRow] = []
    for trial in range(plan.trials):
        if isinstance(plan.channels, FadingSpec):
            fs = plan.channels
            ch = ChannelRealization(*(float(rng.exponential(m))
                                      for m in (fs.mean_g1, fs.mean_g2, fs.mean_gJ)))
        else:
            ch = plan.channels
        for p_db in plan.power_grid_db:
            sys = _sys(plan, p_db)
            for eps in plan.epsilon_grid:
                err = CsiErrorBounds(eps, eps, eps) if eps > 0.0 else None
                t0 = time.perf_counter()
                try:
                    res = sgp.optimize(ch, sys, err, cfg=_cfg(plan))
                except Exception:
                    continue  # trial-level solver failure: recorded by absence
                rows.append(_row(p_db, eps, "000", trial, "optimal",
                                 res.best_alloc, res, ch, sys,
                                 time.perf_counter() - t0))
    return sorted(rows, key=_sort_key)


def summarize(rows: list[ResultRow]) -> dict:
    """Mean and standard error of the secrecy rate over rows."""
    vals = np.array([r.c_sum for r in rows])
    if vals.size == 0:
        return {"n": 0, "mean_c_sum": float("nan"), "stderr_c_sum": float("nan")}
    stderr = float(vals.std(ddof=1) / math.sqrt(vals.size)) if vals.size > 1 else 0.0
    return {"n": int(vals.size), "mean_c_sum": float(vals.mean()),
            "stderr_c_sum": stderr}


# -- output ------------------------------------------------------------


def _git_describe() -> str:
    try:
        out = subprocess.run(["git", "describe", "--always", "--dirty"],
                             capture_output=True, text=True, timeout=5)
        return out.stdout.strip() or "unknown"
    except OSError:
        return "unknown"


def metadata(plan: ExperimentPlan) -> dict:
    cfg = asdict(plan)
    cfg["kind"] = plan.kind.value
    if isinstance(plan.channels, ChannelRealization):
        cfg["channels"] = list(plan.channels.gains)
    return {
        "git_describe": _git_describe(),
        "seed": plan.seed,
        "config": cfg,
        "db_convention": "P_linear = N0 * 10**(P_dB / 10)",
    }


def write_csv(rows: list[ResultRow], path) -> None:
    fields = [f.name for f in ResultRow.__dataclass_fields__.values()]
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields, quoting=csv.QUOTE_MINIMAL)
        writer.writeheader()
        for r in rows:
            writer.writerow(asdict(r))


def write_json(rows: list[ResultRow], meta: dict, path) -> None:
    with open(path, "w") as fh:
        json.dump({"metadata": meta, "rows": [asdict(r) for r in rows]}, fh, indent=1)
