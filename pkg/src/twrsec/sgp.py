"""Iterative signomial-GP maximization of the sum-secrecy rate.

Each outer iteration replaces the lower-bounding posynomial g by its
monomial condensation at the current iterate, solves the resulting GP in
log space, and repeats until the relative change of the objective falls
below the tolerance.  The three nontrivial sign cases are each solved to
convergence (multi-start) and the best consistent point is returned; if
none achieves a positive rate the result is the zero-rate case IV.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .cases import PosyRatio, alloc_from_point, build_case_ratio, point_from_alloc
from .gp import GpInfeasibleError, solve_gp
from .model import (Allocation, CaseId, ChannelRealization, CsiErrorBounds,
                    SystemParams, secrecy_outcome)
from .posynomial import Monomial, Posynomial

I_T = 5  # auxiliary variable slot appended after the five physical variables


@dataclass(frozen=True)
class SgpConfig:
    delta: float = 1e-4            # relative convergence tolerance on the rate
    delta_abs: float = 1e-6        # absolute progress floor (bits); ends near-zero-rate crawls
    max_outer_iters: int = 100
    trust_factor: float = 3.16     # half-decade box per iteration, shrunk on regression
    inner_tol: float = 1e-9
    restarts: int = 5              # random restarts in addition to the equal-split start
    seed: int = 0

    def __post_init__(self):
        if not (self.delta > 0.0 and self.trust_factor > 1.0):
            raise ValueError("delta must be positive and trust_factor > 1")


@dataclass(frozen=True)
class SgpResult:
    best_alloc: Allocation
    best_case: CaseId
    c_sum: float
    iterations: int
    trace: tuple[float, ...]
    converged: bool
    beta_sum: float  # raw beta + beta_tilde at the solver optimum (saturation check)


def condense(g: Posynomial, x0) -> Monomial:
    """Monomial approximation of g at x0: exact value and log-gradient match."""
    return g.condense(x0)


def _objective_over_t(f: Posynomial) -> Posynomial:
    """f / t as a posynomial in the extended variable vector."""
    terms = {}
    for exps, coef in f.terms.items():
        terms[tuple(exps) + (-1.0,)] = coef
    return Posynomial(f.nvars + 1, terms)


def _lift(p: Posynomial) -> Posynomial:
    """Embed a posynomial over the physical variables into the extended space."""
    return Posynomial(p.nvars + 1, {tuple(e) + (0.0,): c for e, c in p.terms.items()})


def _monomial_t_constraint(mono: Monomial) -> Posynomial:
    """t / g_hat(x) <= 1 as a single-term posynomial."""
    exps = tuple(-a for a in mono.exponents) + (1.0,)
    return Posynomial(len(mono.exponents) + 1, {exps: 1.0 / mono.coef})


@dataclass
class _RunOutcome:
    x: np.ndarray | None
    trace: list[float] = field(default_factory=list)
    iterations: int = 0
    converged: bool = False
    beta_sum: float = float("nan")


def _run_case(ratio: PosyRatio, x0: np.ndarray, power_coefs: np.ndarray,
              cfg: SgpConfig, fixed_split: bool) -> _RunOutcome:
    """SGP iterations for one case from one starting point.

    ``power_coefs`` holds N0/(P*g_i) for the active gamma variables so that
    ``power_coefs . gammas <= 1`` is the budget constraint.  With
    ``fixed_split`` the splitting variables were substituted away and only
    the gammas remain.
    """
    f, g = ratio.f, ratio.g
    nv = f.nvars
    gamma_idx = list(range(nv - 3, nv))

    static = [Posynomial(nv + 1, {tuple((1.0 if j == i else 0.0) for j in range(nv)) + (0.0,): c
                                  for i, c in zip(gamma_idx, power_coefs)})]
    if not fixed_split:
        static.append(_lift(Posynomial.variable(nv, 0) + Posynomial.variable(nv, 1)))
        static.append(_lift(Posynomial.variable(nv, 0)))
        static.append(_lift(Posynomial.variable(nv, 1)))

    obj = _objective_over_t(f)

    x = np.asarray(x0, dtype=float).copy()
    c_cur = 0.5 * math.log2(g(x) / f(x))
    out = _RunOutcome(x=x.copy(), trace=[c_cur], beta_sum=x[0] + x[1] if not fixed_split else 1.0)
    mu = cfg.trust_factor

    for _ in range(cfg.max_outer_iters):
        mono = g.condense(x)
        cons = list(static)
        cons.append(_monomial_t_constraint(mono))
        for i in range(nv):
            up = Posynomial.variable(nv + 1, i, coef=1.0 / (mu * x[i]))
            down = Posynomial.variable(nv + 1, i, coef=x[i] / mu, power=-1.0)
            cons.extend([up, down])

        # Strictly feasible warm start: pull tight constraints slightly inward.
        xs = x.copy()
        if not fixed_split:
            s = xs[0] + xs[1]
            if s > 1.0 - 1e-9:
                xs[:2] *= (1.0 - 1e-8) / s
        tot = float(power_coefs @ xs[gamma_idx])
        if tot > 1.0 - 1e-9:
            xs[gamma_idx] *= (1.0 - 1e-8) / tot
        t0 = g(xs) * (1.0 - 1e-6)
        y0 = np.log(np.concatenate([xs, [t0]]))

        try:
            res = solve_gp(obj, cons, y0, tol=cfg.inner_tol)
        except (GpInfeasibleError, FloatingPointError, np.linalg.LinAlgError):
            break
        x_new = np.exp(res.y[:nv])
        c_new = 0.5 * math.log2(g(x_new) / f(x_new))

        if c_new < c_cur - 1e-12:
            mu = math.sqrt(mu)
            if mu < 1.02:
                break
            continue

        x = x_new
        out.x = x.copy()
        out.trace.append(c_new)
        out.iterations += 1
        out.beta_sum = x[0] + x[1] if not fixed_split else 1.0
        rel = cfg.delta * c_cur if c_cur > 0.0 else 0.0
        if abs(c_new - c_cur) <= max(rel, cfg.delta_abs):
            out.converged = True
            c_cur = c_new
            break
        c_cur = c_new
    return out


def _probe_start(ch: ChannelRealization, sys: SystemParams,
                 err: CsiErrorBounds | None) -> Allocation:
    """Coarse grid probe of the true objective to seed the iteration.

    Random multi-start alone approaches a boundary optimum (a transmitter
    switched off) only through the trust region, one factor of mu per
    iteration; a cheap probe of a few thousand points puts the start in the
    right basin.  Probed powers are clamped away from zero so the log-space
    variables stay finite.
    """
    eps = err.effective if err is not None else (0.0, 0.0, 0.0)
    P = sys.P
    center = np.array([0.5, P / 2.0, P / 2.0, P / 2.0])
    widths = np.array([0.9, P, P, P])
    best = None
    best_val = -np.inf
    for _ in range(3):
        lo = np.maximum(center - widths / 2.0, [0.05, 0.0, 0.0, 0.0])
        hi = np.minimum(center + widths / 2.0, [0.95, P, P, P])
        axes = [np.linspace(lo[0], hi[0], 10)]
        axes += [np.linspace(lo[i], hi[i], 8) for i in (1, 2, 3)]
        bb, p1, p2, pj = np.meshgrid(*axes, indexing="ij")
        mask = p1 + p2 + pj <= P * (1.0 + 1e-12)
        bb, p1, p2, pj = bb[mask], p1[mask], p2[mask], pj[mask]
        vals = kernels.sum_secrecy_batch(bb, p1, p2, pj, ch.g1, ch.g2, ch.gJ,
                                         sys.eta, sys.N0, *eps)
        k = int(np.argmax(vals))
        if vals[k] > best_val:
            best_val = float(vals[k])
            best = np.array([bb[k], p1[k], p2[k], pj[k]])
        center = best.copy()
        widths = widths / 4.0
    floor = 1e-8 * P
    p = [max(float(v), floor) for v in best[1:]]
    total = sum(p)
    if total > P:
        p = [v * P / total for v in p]
    return Allocation(p[0], p[1], p[2], float(best[0]))


def _start_points(ch: ChannelRealization, sys: SystemParams,
                  cfg: SgpConfig, probe: Allocation) -> list[Allocation]:
    points = [probe, Allocation(sys.P / 3.0, sys.P / 3.0, sys.P / 3.0, 0.5)]
    rng = np.random.default_rng(cfg.seed)
    for _ in range(cfg.restarts):
        beta = math.exp(rng.uniform(math.log(0.05), math.log(0.95)))
        w = np.exp(rng.uniform(math.log(1e-2), 0.0, size=3))
        w *= 0.95 * sys.P / w.sum()
        points.append(Allocation(float(w[0]), float(w[1]), float(w[2]), beta))
    return points


def _zero_result(sys: SystemParams) -> SgpResult:
    alloc = Allocation(0.0, 0.0, 0.0, 0.5)
    return SgpResult(best_alloc=alloc, best_case=CaseId.IV, c_sum=0.0,
                     iterations=0, trace=(0.0,), converged=True, beta_sum=1.0)


def optimize(ch: ChannelRealization, sys: SystemParams,
             err: CsiErrorBounds | None = None,
             cfg: SgpConfig | None = None,
             fixed_beta: float | None = None) -> SgpResult:
    """Joint power-allocation and power-splitting optimization.

    ``ch`` holds true power gains (perfect knowledge) or, when ``err`` is
    given, the estimated gains of the bounded-error model.  ``fixed_beta``
    pins the splitting ratio and optimizes the powers only.
    """
    cfg = cfg or SgpConfig()
    if err is not None and err.is_perfect:
        err = None
    if sys.P == 0.0:
        return _zero_result(sys)

    power_coefs = np.array([sys.N0 / (sys.P * g) for g in ch.gains])
    probe = _probe_start(ch, sys, err)
    probe_case = secrecy_outcome(probe, ch, sys, err).case_id
    case_order = [CaseId.I, CaseId.II, CaseId.III]
    if probe_case in case_order:
        case_order.remove(probe_case)
        case_order.insert(0, probe_case)

    candidates = []
    for case in case_order:
        # Cascade: once a case yields a solution whose sign pattern matches
        # its assumption, the later cases are not attempted.
        if any(c[0] > 0.0 and c[2] is c[3] for c in candidates):
            break
        ratio = build_case_ratio(case, ch, sys, err)
        fixed_split = fixed_beta is not None
        if fixed_split:
            sub = {0: fixed_beta, 1: 1.0 - fixed_beta}
            ratio = PosyRatio(f=ratio.f.substitute(sub).drop_vars([2, 3, 4]),
                              g=ratio.g.substitute(sub).drop_vars([2, 3, 4]),
                              case=case)
        for start in _start_points(ch, sys, cfg, probe):
            if fixed_split:
                start = Allocation(start.p1, start.p2, start.pj, fixed_beta)
            x0 = np.asarray(point_from_alloc(start, ch, sys))
            if fixed_split:
                x0 = x0[2:]
            run = _run_case(ratio, x0, power_coefs, cfg, fixed_split)
            if run.x is None:
                continue
            x_full = run.x if not fixed_split else np.concatenate(
                [[fixed_beta, 1.0 - fixed_beta], run.x])
            alloc = alloc_from_point(x_full, ch, sys)
            outcome = secrecy_outcome(alloc, ch, sys, err)
            candidates.append((outcome.c_sum, alloc, outcome.case_id, case, run))

    best = max(candidates, key=lambda c: c[0], default=None)
    if best is None or best[0] <= 0.0:
        return _zero_result(sys)
    c_sum, alloc, case_id, _assumed, run = best
    return SgpResult(best_alloc=alloc, best_case=case_id, c_sum=c_sum,
                     iterations=run.iterations, trace=tuple(run.trace),
                     converged=run.converged, beta_sum=run.beta_sum)
