"""Single-transmon charge-basis solver.

A transmon is a Cooper-pair box deep in the E_J >> E_C regime.  In the
charge basis |m>, m = -n_max..n_max, the Hamiltonian

    H = 4 E_C n^2 - E_J cos(phi)

is tridiagonal: diagonal 4*E_C*m^2, off-diagonal -E_J/2 between adjacent
charge states.  This module diagonalizes that matrix exactly and returns
the low-lying levels together with the charge-operator matrix elements in
the eigenbasis, which are all the downstream many-body code needs.

All energies are in GHz (h = 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal, eigvalsh_tridiagonal

from .errors import ConvergenceError

DEFAULT_CUTOFF_TOL = 1e-8  # GHz; level shift allowed under n_max -> n_max + 4


@dataclass(frozen=True)
class TransmonParams:
    """Parameters of one transmon.

    e_c, e_j : charging and Josephson energies in GHz.
    n_max    : charge cutoff; basis spans m = -n_max..n_max.
    levels   : number of eigenstates retained (d).
    """

    e_c: float
    e_j: float
    n_max: int = 15
    levels: int = 4

    def __post_init__(self):
        if self.e_c <= 0:
            raise ValueError(f"e_c must be positive, got {self.e_c}")
        if self.e_j < 0:
            raise ValueError(f"e_j must be non-negative, got {self.e_j}")
        if self.n_max < 3:
            raise ValueError(f"n_max must be >= 3, got {self.n_max}")
        if not 1 <= self.levels <= 2 * self.n_max + 1:
            raise ValueError(
                f"levels must be in [1, {2 * self.n_max + 1}], got {self.levels}"
            )


@dataclass(frozen=True)
class SingleTransmonSolution:
    """Retained eigenlevels and charge matrix elements of one transmon.

    levels          : ascending energies relative to the ground state (GHz).
    charge_elements : d x d real symmetric matrix <k| n |l>; zero whenever
                      k - l is even (charge-parity selection rule), and
                      gauge-fixed so <k| n |k+1> > 0 where nonzero.
    params          : the input parameters.
    """

    levels: np.ndarray
    charge_elements: np.ndarray
    params: TransmonParams = field(repr=False)

    @property
    def anharmonicity(self) -> float:
        """(e2 - e1) - (e1 - e0); approaches -E_C deep in the transmon regime."""
        if len(self.levels) < 3:
            raise ValueError("need at least 3 levels for the anharmonicity")
        e = self.levels
        return float((e[2] - e[1]) - (e[1] - e[0]))


def _charge_tridiagonal(e_c: float, e_j: float, n_max: int):
    m = np.arange(-n_max, n_max + 1, dtype=float)
    diag = 4.0 * e_c * m**2
    offdiag = np.full(2 * n_max, -e_j / 2.0)
    return diag, offdiag, m


def _parity_purify(vals: np.ndarray, vecs: np.ndarray, tol: float = 1e-10):
    """Resolve degenerate eigenvector clusters into parity eigenstates.

    The charge-basis Hamiltonian commutes with m -> -m reflection, so
    nondegenerate eigenvectors are automatically parity-pure.  Exact
    degeneracies (only possible at E_J = 0, where the tridiagonal matrix
    reduces to a diagonal one) leave the solver free to mix parities; this
    projects each degenerate cluster back onto even/odd combinations with
    the odd member first, matching the E_J -> 0+ limit of the ordering.
    """
    scale = max(1.0, float(np.max(np.abs(vals))))
    dim = vecs.shape[0]
    out = vecs.copy()
    i = 0
    while i < len(vals):
        j = i + 1
        while j < len(vals) and vals[j] - vals[i] < tol * scale:
            j += 1
        if j - i > 1:
            block = out[:, i:j]
            even = (block + block[::-1, :]) / 2.0
            odd = (block - block[::-1, :]) / 2.0
            cols = []
            for part in (odd, even):
                q, r = np.linalg.qr(part)
                keep = np.abs(np.diag(r)) > 1e-8
                cols.append(q[:, keep])
            merged = np.hstack(cols)
            if merged.shape[1] != j - i:  # pragma: no cover - defensive
                raise ConvergenceError("could not parity-resolve a degenerate cluster")
            out[:, i:j] = merged[:, : j - i]
        i = j
    assert out.shape == (dim, len(vals))
    return out


def solve_single_transmon(
    params: TransmonParams, cutoff_tol: float = DEFAULT_CUTOFF_TOL
) -> SingleTransmonSolution:
    """Diagonalize one transmon in the charge basis.

    Returns the ``params.levels`` lowest eigenlevels (relative to the
    ground state) and the charge-operator matrix elements in the retained
    eigenbasis.  Raises :class:`ConvergenceError` if enlarging the charge
    cutoff by 4 moves any retained level by more than ``cutoff_tol`` GHz,
    which signals an unconverged truncation.
    """
    d = params.levels
    diag, off, m = _charge_tridiagonal(params.e_c, params.e_j, params.n_max)
    vals, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(0, d - 1))

    diag_big, off_big, _ = _charge_tridiagonal(params.e_c, params.e_j, params.n_max + 4)
    vals_big = eigvalsh_tridiagonal(
        diag_big, off_big, select="i", select_range=(0, d - 1)
    )
    shift = np.max(np.abs((vals - vals[0]) - (vals_big - vals_big[0])))
    if shift > cutoff_tol:
        raise ConvergenceError(
            f"charge cutoff n_max={params.n_max} unconverged: levels move by "
            f"{shift:.3e} GHz under n_max+4 (tolerance {cutoff_tol:.1e})"
        )

    vecs = _parity_purify(vals, vecs)

    # Gauge: make <k| n |k+1> positive by flipping eigenvector signs in
    # sequence.  At E_J = 0 some of these elements vanish identically and
    # the corresponding signs are left as produced.
    weighted = vecs * m[:, None]
    for k in range(d - 1):
        elem = float(weighted[:, k] @ vecs[:, k + 1])
        if elem < -1e-14:
            vecs[:, k + 1] *= -1.0
            weighted[:, k + 1] *= -1.0

    charge = vecs.T @ weighted
    charge = (charge + charge.T) / 2.0
    # Charge parity forbids even |k - l| elements; clip the numerical dust
    # so the selection-rule sparsity is exact downstream.
    k_idx = np.arange(d)
    even_mask = ((k_idx[:, None] - k_idx[None, :]) % 2) == 0
    charge[even_mask] = 0.0

    return SingleTransmonSolution(
        levels=vals - vals[0], charge_elements=charge, params=params
    )


def transmon_frequency(e_c: float, e_j: float) -> float:
    """Harmonic-approximation frequency nu = sqrt(8 E_J E_C) in GHz."""
    return float(np.sqrt(8.0 * e_j * e_c))


def effective_scales(e_c, e_j_list, t, lattice):
    """Rotating-wave frequencies and hopping amplitudes.

    nu_i = sqrt(8 E_{J_i} E_C) per site and
    t_ij = T / (4 sqrt(2 E_C)) * (E_{J_i} E_{J_j})**(1/4) per edge.

    These feed intuition and reporting only; the simulated Hamiltonian is
    always assembled from the exact charge-basis solutions.
    """
    e_j = np.asarray(e_j_list, dtype=float)
    if np.any(e_j <= 0):
        raise ValueError("effective scales require all E_J > 0")
    nu = np.sqrt(8.0 * e_j * e_c)
    hop = {
        (i, j): t / (4.0 * np.sqrt(2.0 * e_c)) * (e_j[i] * e_j[j]) ** 0.25
        for (i, j) in lattice.edges
    }
    return nu, hop
