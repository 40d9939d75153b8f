"""Tri-diagonal systems and the Thomas algorithm (no pivoting)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SingularSystemError",
    "TriDiagonalSystem",
    "ThomasFactorization",
    "thomas_solve",
    "dominance_margin",
]

PIVOT_FLOOR = 1e-300


class SingularSystemError(ArithmeticError):
    """A zero pivot appeared during forward elimination."""


@dataclass(frozen=True, eq=False)
class TriDiagonalSystem:
    """Bands of an n x n tri-diagonal matrix plus a right-hand side.

    ``lower[i]`` sits in row i+1, ``upper[i]`` in row i.
    """

    lower: np.ndarray
    diag: np.ndarray
    upper: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        for name in ("lower", "diag", "upper", "rhs"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        n = len(self.diag)
        if n < 1:
            raise ValueError("empty system")
        if len(self.lower) != n - 1 or len(self.upper) != n - 1:
            raise ValueError(
                f"band lengths {len(self.lower)}/{len(self.upper)} do not match n={n}"
            )
        if len(self.rhs) != n:
            raise ValueError(f"rhs has length {len(self.rhs)}, expected {n}")

    @property
    def n(self) -> int:
        return len(self.diag)

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.lower, -1) + np.diag(self.upper, 1)

    def matvec(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        y = self.diag * x
        y[1:] += self.lower * x[:-1]
        y[:-1] += self.upper * x[1:]
        return y


class ThomasFactorization:
    """Forward-elimination factors of a fixed tri-diagonal matrix.

    Reusing one factorization across many right-hand sides is what makes the
    time-stepping loop O(M) per step.
    """

    def __init__(self, lower, diag, upper):
        lower = [float(v) for v in lower]
        diag = [float(v) for v in diag]
        upper = [float(v) for v in upper]
        n = len(diag)
        inv_piv = [0.0] * n
        ratio = [0.0] * max(n - 1, 0)
        piv = diag[0]
        for i in range(n):
            if i > 0:
                piv = diag[i] - lower[i - 1] * ratio[i - 1]
            if abs(piv) < PIVOT_FLOOR:
                raise SingularSystemError(f"zero pivot {piv!r} in row {i}")
            inv_piv[i] = 1.0 / piv
            if i < n - 1:
                ratio[i] = upper[i] * inv_piv[i]
        self.n = n
        self._lower = lower
        self._inv_piv = inv_piv
        self._ratio = ratio

    def solve(self, rhs) -> np.ndarray:
        n = self.n
        r = [float(v) for v in rhs]
        if len(r) != n:
            raise ValueError(f"rhs has length {len(r)}, expected {n}")
        lower, inv_piv, ratio = self._lower, self._inv_piv, self._ratio
        y = [0.0] * n
        prev = 0.0
        for i in range(n):
            if i > 0:
                prev = (r[i] - lower[i - 1] * prev) * inv_piv[i]
            else:
                prev = r[0] * inv_piv[0]
            y[i] = prev
        for i in range(n - 2, -1, -1):
            y[i] -= ratio[i] * y[i + 1]
        return np.array(y)


def thomas_solve(system: TriDiagonalSystem) -> np.ndarray:
    """Solve ``system`` by the Thomas algorithm.

    Raises
    ------
    SingularSystemError
        If a pivot smaller than 1e-300 in magnitude is met.
    """
    fac = ThomasFactorization(system.lower, system.diag, system.upper)
    return fac.solve(system.rhs)


def dominance_margin(system: TriDiagonalSystem) -> float:
    """min_i |a_ii| - sum_{j != i} |a_ij|; positive means strictly dominant."""
    off = np.zeros(system.n)
    off[1:] += np.abs(system.lower)
    off[:-1] += np.abs(system.upper)
    return float(np.min(np.abs(system.diag) - off))
