"""Sparse posynomial arithmetic over a fixed variable ordering.

A posynomial is a sum of monomial terms c * prod_i x_i**a_i with c > 0.
Terms are stored as a mapping from exponent tuples to coefficients, which
makes symbolic products exact (no hand-expanded formulas) and gives the
log-space gradient needed for monomial condensation for free.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Monomial:
    """Single term c * prod_i x_i**a_i with c > 0."""

    coef: float
    exponents: tuple[float, ...]

    def __call__(self, x) -> float:
        x = np.asarray(x, dtype=float)
        return float(self.coef * np.prod(x ** np.asarray(self.exponents)))


class Posynomial:
    """Immutable sum of positive-coefficient monomials in ``nvars`` variables."""

    __slots__ = ("nvars", "terms", "_coefs", "_expmat")

    def __init__(self, nvars: int, terms: dict[tuple[float, ...], float] | None = None):
        self.nvars = nvars
        clean: dict[tuple[float, ...], float] = {}
        for exps, coef in (terms or {}).items():
            if coef == 0.0:
                continue
            if coef < 0.0:
                raise ValueError(f"posynomial coefficient must be positive, got {coef}")
            if len(exps) != nvars:
                raise ValueError(f"exponent tuple {exps} has wrong arity (nvars={nvars})")
            clean[exps] = clean.get(exps, 0.0) + coef
        self.terms = clean
        self._coefs = None
        self._expmat = None

    # -- constructors --------------------------------------------------

    @classmethod
    def constant(cls, nvars: int, c: float) -> "Posynomial":
        return cls(nvars, {(0.0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, index: int, coef: float = 1.0, power: float = 1.0) -> "Posynomial":
        exps = [0.0] * nvars
        exps[index] = power
        return cls(nvars, {tuple(exps): coef})

    @classmethod
    def from_monomial(cls, mono: Monomial) -> "Posynomial":
        return cls(len(mono.exponents), {mono.exponents: mono.coef})

    # -- algebra -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = Posynomial.constant(self.nvars, float(other))
        merged = dict(self.terms)
        for exps, coef in other.terms.items():
            merged[exps] = merged.get(exps, 0.0) + coef
        return Posynomial(self.nvars, merged)

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Posynomial(self.nvars,
                              {e: c * float(other) for e, c in self.terms.items()})
        out: dict[tuple[float, ...], float] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, 0.0) + c1 * c2
        return Posynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0 or n != int(n):
            raise ValueError("only nonnegative integer powers are supported")
        result = Posynomial.constant(self.nvars, 1.0)
        for _ in range(int(n)):
            result = result * self
        return result

    # -- evaluation ----------------------------------------------------

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(coefficients, exponent matrix) views, cached after first use."""
        if self._coefs is None:
            keys = sorted(self.terms)
            self._coefs = np.array([self.terms[k] for k in keys], dtype=float)
            self._expmat = np.array(keys, dtype=float).reshape(len(keys), self.nvars)
        return self._coefs, self._expmat

    def __call__(self, x):
        """Evaluate at a point (shape (nvars,)) or batch (shape (m, nvars))."""
        coefs, expmat = self.arrays()
        x = np.asarray(x, dtype=float)
        batched = x.ndim == 2
        pts = np.atleast_2d(x)
        vals = np.exp(np.log(pts) @ expmat.T) @ coefs
        return vals if batched else float(vals[0])

    def log_grad(self, x) -> np.ndarray:
        """Gradient of log g with respect to log x_i at a positive point x."""
        coefs, expmat = self.arrays()
        x = np.asarray(x, dtype=float)
        w = coefs * np.exp(expmat @ np.log(x))
        total = w.sum()
        if not total > 0.0:
            raise ValueError(f"posynomial must be positive at expansion point, got {total}")
        return expmat.T @ (w / total)

    def condense(self, x0) -> Monomial:
        """Best monomial approximation at x0 (log-space first-order Taylor fit).

        The result matches the value and the log-gradient of the posynomial
        at x0 and lower-bounds it everywhere on the positive orthant.
        """
        x0 = np.asarray(x0, dtype=float)
        if np.any(x0 <= 0.0):
            raise ValueError("expansion point must be strictly positive")
        a = self.log_grad(x0)
        c = self(x0) * float(np.prod(x0 ** (-a)))
        return Monomial(coef=c, exponents=tuple(a))

    # -- structural helpers -------------------------------------------

    def substitute(self, values: dict[int, float]) -> "Posynomial":
        """Pin some variables to positive constants, folding them into coefficients."""
        out: dict[tuple[float, ...], float] = {}
        for exps, coef in self.terms.items():
            c = coef
            new = list(exps)
            for i, v in values.items():
                c *= v ** exps[i]
                new[i] = 0.0
            key = tuple(new)
            out[key] = out.get(key, 0.0) + c
        return Posynomial(self.nvars, out)

    def drop_vars(self, keep: list[int]) -> "Posynomial":
        """Project onto a subset of variables; dropped exponents must all be zero."""
        out: dict[tuple[float, ...], float] = {}
        dropped = [i for i in range(self.nvars) if i not in keep]
        for exps, coef in self.terms.items():
            if any(exps[i] != 0.0 for i in dropped):
                raise ValueError("cannot drop a variable that still appears")
            key = tuple(exps[i] for i in keep)
            out[key] = out.get(key, 0.0) + coef
        return Posynomial(len(keep), out)

    def __repr__(self):
        return f"Posynomial(nvars={self.nvars}, nterms={len(self.terms)})"
