"""Many-body Hamiltonian assembly in the truncated product basis.

H = sum_i sum_k eps_i^(k) |k><k|_i  +  T * sum_<ij> n_i (x) n_j

projected onto a :class:`~transmon_chaos.basis.ManyBodyBasis`.  Matrix
elements whose target occupation tuple falls outside the basis (window
truncation) are discarded.  Because the per-site charge operator only
connects levels of opposite parity, every off-diagonal entry changes the
occupations of exactly the two sites of one edge by odd amounts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import ManyBodyBasis
from .lattice import Lattice


@dataclass(frozen=True)
class CouplingStructure:
    """Precomputed sparsity pattern of the coupling term for one (basis, lattice).

    The pattern depends only on the basis and the edge list, so sweeps over
    disorder realizations build it once and refill values per realization.
    Arrays hold one entry per upper-triangle nonzero: source row, target
    column, the edge's two sites and the four level indices involved.
    """

    rows: np.ndarray
    cols: np.ndarray
    site_i: np.ndarray
    level_ai: np.ndarray
    level_aip: np.ndarray
    site_j: np.ndarray
    level_bj: np.ndarray
    level_bjp: np.ndarray
    dim: int


def build_coupling_structure(basis: ManyBodyBasis, lattice: Lattice) -> CouplingStructure:
    if lattice.n_sites != basis.n_sites:
        raise ValueError(
            f"lattice has {lattice.n_sites} sites but basis has {basis.n_sites}"
        )
    d = basis.levels
    occ = basis.states
    dim = basis.size

    # Per-site transitions allowed by the parity selection rule.
    odd_pairs = [(a, ap) for a in range(d) for ap in range(d) if (a - ap) % 2 == 1]

    rows, cols = [], []
    e_i, ai_l, aip_l = [], [], []
    e_j, bj_l, bjp_l = [], [], []

    scratch = occ.copy()
    for (i, j) in lattice.edges:
        occ_i = occ[:, i]
        occ_j = occ[:, j]
        for (a, ap) in odd_pairs:
            rows_a = np.nonzero(occ_i == a)[0]
            if rows_a.size == 0:
                continue
            for (b, bp) in odd_pairs:
                sel = rows_a[occ_j[rows_a] == b]
                if sel.size == 0:
                    continue
                scratch[sel, i] = ap
                scratch[sel, j] = bp
                for s in sel:
                    key = scratch[s].tobytes()
                    t = basis._lookup.get(key)
                    if t is not None and t > s:
                        rows.append(s)
                        cols.append(t)
                        e_i.append(i)
                        ai_l.append(a)
                        aip_l.append(ap)
                        e_j.append(j)
                        bj_l.append(b)
                        bjp_l.append(bp)
                scratch[sel, i] = a
                scratch[sel, j] = b

    as_arr = lambda x, dt: np.asarray(x, dtype=dt)
    return CouplingStructure(
        rows=as_arr(rows, np.intp), cols=as_arr(cols, np.intp),
        site_i=as_arr(e_i, np.intp), level_ai=as_arr(ai_l, np.intp),
        level_aip=as_arr(aip_l, np.intp),
        site_j=as_arr(e_j, np.intp), level_bj=as_arr(bj_l, np.intp),
        level_bjp=as_arr(bjp_l, np.intp), dim=dim,
    )


def assemble_hamiltonian(structure: CouplingStructure, basis: ManyBodyBasis,
                         solutions, t: float) -> np.ndarray:
    """Dense real-symmetric H from per-site solutions and a coupling strength."""
    if len(solutions) != basis.n_sites:
        raise ValueError(f"need one solution per site ({basis.n_sites}), got {len(solutions)}")
    d = basis.levels
    for s in solutions:
        if s.levels.shape[0] < d:
            raise ValueError("per-site solution retains fewer levels than the basis uses")

    levels = np.stack([s.levels[:d] for s in solutions])           # (N, d)
    charges = np.stack([s.charge_elements[:d, :d] for s in solutions])  # (N, d, d)

    h = np.zeros((structure.dim, structure.dim))
    diag = levels[np.arange(basis.n_sites)[None, :], basis.states.astype(np.intp)].sum(axis=1)
    if t != 0.0 and structure.rows.size:
        vals = t * (charges[structure.site_i, structure.level_ai, structure.level_aip]
                    * charges[structure.site_j, structure.level_bj, structure.level_bjp])
        h[structure.rows, structure.cols] = vals
        h += h.T
    np.fill_diagonal(h, diag)
    return h


def build_many_body_hamiltonian(solutions, lattice: Lattice, t: float,
                                basis: ManyBodyBasis) -> np.ndarray:
    """One-shot assembly (builds the coupling structure internally)."""
    structure = build_coupling_structure(basis, lattice)
    return assemble_hamiltonian(structure, basis, solutions, t)
