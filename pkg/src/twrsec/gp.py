"""Log-space solver for geometric programs.

A GP in posynomial form becomes convex after the substitution y = log x:
the objective and every constraint turn into log-sum-exp functions of y.
With six variables at most, a damped-Newton barrier method is simple and
robust; no external solver is needed.  All constraint blocks are stacked
into one term matrix so each Newton step costs a couple of matmuls.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .posynomial import Posynomial


class GpInfeasibleError(RuntimeError):
    """Raised when the starting point violates a constraint strictly."""

    def __init__(self, index: int, value: float):
        super().__init__(f"constraint {index} infeasible at start (log-slack {value:.3e})")
        self.index = index
        self.value = value


class LogSumExp:
    """F(y) = log sum_t exp(A_t . y + b_t)."""

    __slots__ = ("A", "b")

    def __init__(self, A: np.ndarray, b: np.ndarray):
        self.A = A
        self.b = b

    @classmethod
    def from_posynomial(cls, p: Posynomial) -> "LogSumExp":
        coefs, expmat = p.arrays()
        return cls(A=expmat, b=np.log(coefs))

    def value(self, y: np.ndarray) -> float:
        z = self.A @ y + self.b
        m = z.max()
        return float(m + np.log(np.exp(z - m).sum()))

    def value_grad_hess(self, y: np.ndarray):
        z = self.A @ y + self.b
        m = z.max()
        e = np.exp(z - m)
        s = e.sum()
        w = e / s
        grad = self.A.T @ w
        hess = (self.A.T * w) @ self.A - np.outer(grad, grad)
        return float(m + np.log(s)), grad, hess


class ConstraintBlock:
    """Stacked log-sum-exp constraints F_j(y) <= 0 with segmented reductions."""

    __slots__ = ("A", "b", "starts", "seg_len", "m")

    def __init__(self, posys: list[Posynomial]):
        mats, offs, starts = [], [], []
        pos = 0
        for p in posys:
            coefs, expmat = p.arrays()
            mats.append(expmat)
            offs.append(np.log(coefs))
            starts.append(pos)
            pos += len(coefs)
        self.A = np.vstack(mats)
        self.b = np.concatenate(offs)
        self.starts = np.array(starts, dtype=np.intp)
        self.seg_len = np.diff(np.append(self.starts, pos))
        self.m = len(posys)

    def values(self, y: np.ndarray) -> np.ndarray:
        z = self.A @ y + self.b
        mx = np.maximum.reduceat(z, self.starts)
        e = np.exp(z - np.repeat(mx, self.seg_len))
        return mx + np.log(np.add.reduceat(e, self.starts))

    def phi(self, y: np.ndarray) -> float | None:
        """Barrier value -sum_j log(-F_j); None when some F_j >= 0."""
        vals = self.values(y)
        if np.any(vals >= 0.0):
            return None
        return float(-np.log(-vals).sum())

    def barrier(self, y: np.ndarray):
        """phi = -sum_j log(-F_j) with gradient and Hessian; None if infeasible."""
        z = self.A @ y + self.b
        seg_len = self.seg_len
        mx = np.maximum.reduceat(z, self.starts)
        e = np.exp(z - np.repeat(mx, seg_len))
        sums = np.add.reduceat(e, self.starts)
        vals = mx + np.log(sums)
        if np.any(vals >= 0.0):
            return None
        w = e / np.repeat(sums, seg_len)            # per-term softmax weights
        # Per-constraint gradients g_j = A_j^T w_j, as an (m, n) matrix.
        Aw = self.A * w[:, None]
        G = np.add.reduceat(Aw, self.starts, axis=0)
        grad = G.T @ (1.0 / (-vals))
        # Hessian: sum_j Q_j/(-v_j) + g_j g_j^T * (1 + v_j)/v_j^2
        # with Q_j = A_j^T diag(w_j) A_j.
        scale = np.repeat(1.0 / (-vals), seg_len)
        hess = (Aw * scale[:, None]).T @ self.A
        coef = (1.0 + vals) / (vals * vals)
        hess += (G.T * coef) @ G
        phi = float(-np.log(-vals).sum())
        return phi, grad, hess, vals


@dataclass(frozen=True)
class GpResult:
    y: np.ndarray
    objective: float
    converged: bool
    newton_steps: int


def _center(obj: LogSumExp, block: ConstraintBlock, y: np.ndarray,
            t_barrier: float, max_steps: int = 60) -> tuple[np.ndarray, int]:
    """Newton minimization of t*F0(y) + barrier(y) from a strictly feasible y."""
    n = y.size
    eye = 1e-12 * np.eye(n)
    steps = 0

    bar = block.barrier(y)
    m_cur = t_barrier * obj.value(y) + bar[0]
    for _ in range(max_steps):
        v0, g0, h0 = obj.value_grad_hess(y)
        phi, gb, hb, _ = bar[0], bar[1], bar[2], bar[3]
        grad = t_barrier * g0 + gb
        hess = t_barrier * h0 + hb + eye
        try:
            dy = np.linalg.solve(hess, -grad)
        except np.linalg.LinAlgError:
            dy = np.linalg.lstsq(hess, -grad, rcond=None)[0]
        lam2 = float(-grad @ dy)
        if lam2 / 2.0 < 1e-11:
            break
        step = 1.0
        while step > 1e-14:
            y_try = y + step * dy
            phi_try = block.phi(y_try)
            if phi_try is not None:
                m_new = t_barrier * obj.value(y_try) + phi_try
                if m_new < m_cur - 1e-4 * step * lam2:
                    break
            step *= 0.5
        else:
            break
        y = y_try
        bar = block.barrier(y)
        m_cur = m_new
        steps += 1
    return y, steps


def solve_gp(objective: Posynomial, constraints: list[Posynomial], y0: np.ndarray,
             tol: float = 1e-9) -> GpResult:
    """Minimize a posynomial subject to posynomial <= 1 constraints.

    ``y0`` is the log of a strictly feasible point.  The returned point
    satisfies every constraint strictly and its objective value is within a
    duality gap of ``tol`` of the optimum of the convex log-space problem.
    """
    obj = LogSumExp.from_posynomial(objective)
    block = ConstraintBlock(constraints)
    y = np.asarray(y0, dtype=float).copy()

    vals = block.values(y)
    if np.any(vals >= 0.0):
        idx = int(np.argmax(vals))
        raise GpInfeasibleError(idx, float(vals[idx]))

    t_barrier = 10.0
    total_steps = 0
    converged = False
    for _ in range(40):
        y, steps = _center(obj, block, y, t_barrier)
        total_steps += steps
        if block.m / t_barrier < tol:
            converged = True
            break
        t_barrier *= 30.0
    return GpResult(y=y, objective=obj.value(y), converged=converged,
                    newton_steps=total_steps)
