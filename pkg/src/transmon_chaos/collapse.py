"""Data-collapse fitting for the coupling axis.

Observable traces y(T) taken at different Josephson energies are rescaled
as T -> T * E_J^mu; at the right exponent the traces superpose.  The fit
scans mu on a grid, interpolates every rescaled trace onto a common
log-spaced abscissa grid restricted to the shared range, and scores the
mean cross-trace variance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_MU_GRID = np.arange(0.30, 0.8001, 0.005)
_COMMON_GRID_POINTS = 64


@dataclass(frozen=True)
class CollapseTrace:
    """One observable trace y(T) at fixed Josephson energy (GHz units)."""

    e_j: float
    t_values: np.ndarray
    y_values: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t_values, dtype=float)
        y = np.asarray(self.y_values, dtype=float)
        if t.ndim != 1 or t.shape != y.shape:
            raise ValueError("trace needs matching 1-d T and y arrays")
        if len(t) < 8:
            raise ValueError("each trace needs at least 8 points")
        if np.any(t <= 0) or np.any(np.diff(t) <= 0):
            raise ValueError("T values must be positive and strictly increasing")
        object.__setattr__(self, "t_values", t)
        object.__setattr__(self, "y_values", y)


@dataclass(frozen=True)
class CollapseFit:
    """Scan result: ``mu`` minimizes ``residuals`` over ``mu_grid``."""

    mu: float
    residual: float
    mu_grid: np.ndarray
    residuals: np.ndarray
    degenerate: bool

    def as_dict(self) -> dict:
        return {
            "mu": self.mu,
            "residual": self.residual,
            "degenerate": self.degenerate,
            "mu_grid": self.mu_grid.tolist(),
            "residuals": self.residuals.tolist(),
        }


def _residual_at(traces, mu: float) -> float:
    logs = []
    for tr in traces:
        x = np.log(tr.t_values * tr.e_j**mu)
        logs.append((x, tr.y_values))
    lo = max(x[0] for x, _ in logs)
    hi = min(x[-1] for x, _ in logs)
    if hi <= lo:
        return np.nan
    grid = np.linspace(lo, hi, _COMMON_GRID_POINTS)
    stacked = np.stack([np.interp(grid, x, y) for x, y in logs])
    return float(np.mean(np.var(stacked, axis=0)))


def fit_collapse_exponent(traces, mu_grid=None) -> CollapseFit:
    """Scan the rescaling exponent and return the best collapse.

    Raises if fewer than 3 traces are given, if the Josephson energies span
    less than a factor of 3, or if the rescaled abscissa ranges share no
    overlap anywhere on the scan.  A residual curve that is flat at zero
    (identical traces) is reported with the ``degenerate`` flag set and an
    arbitrary grid point as ``mu``.
    """
    traces = list(traces)
    if len(traces) < 3:
        raise ValueError("need at least 3 traces for a collapse fit")
    e_js = np.array([tr.e_j for tr in traces], dtype=float)
    if np.any(e_js <= 0):
        raise ValueError("traces need positive Josephson energies")
    if e_js.max() / e_js.min() < 3.0:
        raise ValueError("traces must span at least a factor 3 in E_J")

    grid = DEFAULT_MU_GRID if mu_grid is None else np.asarray(mu_grid, dtype=float)
    residuals = np.array([_residual_at(traces, mu) for mu in grid])
    if np.all(np.isnan(residuals)):
        raise ValueError("rescaled trace ranges are disjoint for every scanned mu")

    finite = np.where(np.isnan(residuals), np.inf, residuals)
    best = int(np.argmin(finite))
    span = np.nanmax(residuals) - np.nanmin(residuals)
    degenerate = bool(np.nanmax(residuals) < 1e-20 or
                      span < 1e-14 * max(1.0, np.nanmax(residuals)))
    return CollapseFit(
        mu=float(grid[best]),
        residual=float(residuals[best]),
        mu_grid=grid,
        residuals=residuals,
        degenerate=degenerate,
    )
