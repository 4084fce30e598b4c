"""Computational-state tracking and Walsh analysis of the spectrum.

The diagonal of the coupled-array Hamiltonian over its 2^N computational
levels E_b defines an Ising-type expansion

    E_b = sum_{b'} c_{b'} * prod_i (-1)^{b_i b'_i},

whose coefficients (single-qubit splittings, ZZ couplings, ZZZ terms, ...)
follow from a Walsh-Hadamard transform of the level map.  The nontrivial
step is identifying which eigenlevels are the computational ones: labels
are exact at zero coupling and are carried through avoided crossings by
eigenvector-overlap matching as the coupling is stepped up (diabatic
tracking).

Bitstring convention: character i of the label string is site i, and the
integer index of a bitstring is ``int(label, 2)`` (site 0 is the most
significant bit).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .basis import ManyBodyBasis
from .hamiltonian import CouplingStructure, assemble_hamiltonian

REFINE_OVERLAP = 0.9   # halve the step below this assignment quality
ABORT_OVERLAP = 0.5    # below this a label counts as ambiguous
DEFAULT_MAX_STEP = 1e-4  # GHz (0.1 MHz)
_MIN_STEP_FRACTION = 2.0**-12


@dataclass(frozen=True)
class StepPolicy:
    """Adaptive step control for diabatic tracking."""

    max_step: float = DEFAULT_MAX_STEP
    refine_overlap: float = REFINE_OVERLAP
    abort_overlap: float = ABORT_OVERLAP

    @property
    def min_step(self) -> float:
        return self.max_step * _MIN_STEP_FRACTION


@dataclass
class WalshSpectrum:
    """Computational-level map and its Walsh coefficients for one coupling.

    ``levels`` and ``coefficients`` are arrays of length 2^N indexed by the
    bitstring integer; ``tracking_quality`` holds the worst assignment
    overlap each label encountered on the way up in coupling, and
    ``ambiguous`` marks labels whose quality fell below the abort
    threshold (their values are reported but untrustworthy).
    """

    n_sites: int
    coupling: float
    levels: np.ndarray
    coefficients: np.ndarray
    tracking_quality: np.ndarray
    ambiguous: np.ndarray

    def level_map(self) -> dict:
        return {bitstring(b, self.n_sites): float(self.levels[b])
                for b in range(2**self.n_sites)}

    def coefficient(self, label: str) -> float:
        return float(self.coefficients[int(label, 2)])


def bitstring(index: int, n_sites: int) -> str:
    return format(index, f"0{n_sites}b")


def walsh_transform(levels) -> np.ndarray:
    """Coefficients c_b = 2^-N sum_{b'} (-1)^{b . b'} E_{b'}.

    In-place butterfly transform, O(N 2^N).  The transform is its own
    inverse up to the 2^N normalization, so ``walsh_transform`` applied to
    the coefficients times 2^N reproduces the levels.
    """
    e = np.array(levels, dtype=float).ravel()
    n = e.size
    if n == 0 or (n & (n - 1)) != 0:
        raise ValueError(f"level map must hold 2^N entries, got {n}")
    if not np.all(np.isfinite(e)):
        raise ValueError("level map is incomplete (non-finite entries)")
    h = 1
    while h < n:
        for start in range(0, n, 2 * h):
            a = e[start : start + h].copy()
            b = e[start + h : start + 2 * h].copy()
            e[start : start + h] = a + b
            e[start + h : start + 2 * h] = a - b
        h *= 2
    return e / n


def inverse_walsh_transform(coefficients) -> np.ndarray:
    c = np.asarray(coefficients, dtype=float)
    return walsh_transform(c) * c.size


def _greedy_assignment(overlaps: np.ndarray) -> np.ndarray:
    """Assign each row (label) a distinct column (eigenstate), greedily by
    descending overlap; ties broken by index for determinism."""
    n_labels, n_cols = overlaps.shape
    order = np.argsort(overlaps, axis=None)[::-1]
    assigned = np.full(n_labels, -1, dtype=np.intp)
    col_taken = np.zeros(n_cols, dtype=bool)
    remaining = n_labels
    for flat in order:
        row, col = divmod(int(flat), n_cols)
        if assigned[row] >= 0 or col_taken[col]:
            continue
        assigned[row] = col
        col_taken[col] = True
        remaining -= 1
        if remaining == 0:
            break
    return assigned


def track_computational_states(basis: ManyBodyBasis, structure: CouplingStructure,
                               solutions, targets, policy: StepPolicy | None = None,
                               snapshot_callback=None):
    """Follow the 2^N computational labels from T = 0 to each target coupling.

    At T = 0 every label is an exact product state.  The coupling is then
    increased in adaptive steps: after each dense diagonalization, labels
    are matched to eigenvectors by globally greedy assignment on the
    overlap matrix |<tracked | eigenvector>|; a step whose worst assignment
    overlap falls below the refine threshold is retried at half size, so
    diabatic behavior at narrow anticrossings emerges from the matching.
    Labels whose quality drops below the abort threshold are flagged
    ambiguous and reported with partial confidence.

    Returns a list of :class:`WalshSpectrum` (coefficients included), one
    per requested target, in ascending target order.
    """
    policy = policy or StepPolicy()
    targets = np.atleast_1d(np.asarray(targets, dtype=float))
    if np.any(targets < 0):
        raise ValueError("target couplings must be non-negative")
    order = np.argsort(targets)
    sorted_targets = targets[order]

    n = basis.n_sites
    comp = basis.computational_indices()
    if len(comp) != 2**n:
        raise ValueError(
            f"basis exposes {len(comp)} computational states, need 2^{n}; "
            "the excitation window must cover occupations 0..1 on every site"
        )
    # Label order: computational_indices is lexicographic in occupations,
    # which coincides with ascending bitstring integers.
    d = basis.levels
    site_levels = np.stack([s.levels[:d] for s in solutions])
    e0 = site_levels[np.arange(n)[None, :], basis.states[comp].astype(np.intp)].sum(axis=1)

    quality = np.ones(2**n)
    tracked = np.zeros((basis.size, 2**n))
    tracked[comp, np.arange(2**n)] = 1.0

    results = []

    def snapshot(t_value, energies):
        amb = quality < policy.abort_overlap
        coeffs = walsh_transform(energies)
        results.append(WalshSpectrum(
            n_sites=n, coupling=float(t_value), levels=energies.copy(),
            coefficients=coeffs, tracking_quality=quality.copy(),
            ambiguous=amb,
        ))
        if snapshot_callback is not None:
            snapshot_callback(results[-1])

    t_now = 0.0
    energies_now = e0.copy()
    target_iter = iter(sorted_targets)
    pending = next(target_iter, None)

    while pending is not None and pending <= t_now + 1e-18:
        snapshot(pending, energies_now)
        pending = next(target_iter, None)

    step = policy.max_step
    streak = 0
    while pending is not None:
        t_next = min(t_now + step, pending)
        h = assemble_hamiltonian(structure, basis, solutions, t_next)
        vals, vecs = scipy.linalg.eigh(h, check_finite=False)
        overlaps = np.abs(tracked.T @ vecs)
        assignment = _greedy_assignment(overlaps)
        assigned_overlap = overlaps[np.arange(2**n), assignment]
        worst = float(assigned_overlap.min())

        if worst < policy.refine_overlap and step > policy.min_step \
                and t_next - t_now > policy.min_step:
            step = max(step / 2.0, policy.min_step)
            streak = 0
            continue

        quality = np.minimum(quality, assigned_overlap)
        tracked = vecs[:, assignment]
        energies_now = vals[assignment]
        t_now = t_next
        streak += 1
        if streak >= 2 and step < policy.max_step:
            step = min(step * 2.0, policy.max_step)
            streak = 0

        while pending is not None and t_now >= pending - 1e-18:
            snapshot(pending, energies_now)
            pending = next(target_iter, None)

    # restore caller's target order
    inverse = np.empty_like(order)
    inverse[order] = np.arange(len(order))
    return [results[i] for i in inverse]


@dataclass(frozen=True)
class WalshGroups:
    """Walsh coefficient magnitudes grouped for reporting.

    Weight-1 coefficients stay individual (one per site); coefficients of
    weight >= 2 are grouped by the maximal index distance between two set
    bits, the dominant locality scale of the couplings.
    """

    weight1: dict
    by_distance: dict
    members: dict = field(repr=False)

    def group_means(self) -> dict:
        out = {f"h_{site}": val for site, val in self.weight1.items()}
        out.update({f"dist_{d}": val for d, val in self.by_distance.items()})
        return out


def max_bit_distance(index: int, n_sites: int) -> int:
    positions = [i for i in range(n_sites) if (index >> (n_sites - 1 - i)) & 1]
    return positions[-1] - positions[0] if len(positions) >= 2 else 0


def group_walsh(spectrum: WalshSpectrum) -> WalshGroups:
    """Group |c_b| by locality class (see :class:`WalshGroups`)."""
    n = spectrum.n_sites
    c = np.abs(spectrum.coefficients)
    weight1 = {}
    members: dict = {}
    sums: dict = {}
    counts: dict = {}
    for b in range(1, 2**n):
        weight = bin(b).count("1")
        label = bitstring(b, n)
        if weight == 1:
            site = label.index("1")
            weight1[site] = float(c[b])
            members[f"h_{site}"] = [label]
            continue
        dist = max_bit_distance(b, n)
        sums[dist] = sums.get(dist, 0.0) + float(c[b])
        counts[dist] = counts.get(dist, 0) + 1
        members.setdefault(f"dist_{dist}", []).append(label)
    by_distance = {d: sums[d] / counts[d] for d in sorted(sums)}
    return WalshGroups(weight1=weight1, by_distance=by_distance, members=members)
