"""Truncated product-state bases for the many-body problem.

States are occupation tuples (n_1..n_N) with n_i in 0..d-1, enumerated in
lexicographic order (leftmost site most significant).  An optional
excitation window restricts the total occupation sum to [k_min, k_max];
the window is a numerical cutoff, not a symmetry projection, because the
charge coupling is only approximately number-conserving.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .errors import BasisSizeError
from .lattice import Lattice

DEFAULT_STATE_CAP = 200_000


def occupation_count_table(n_sites: int, d: int) -> np.ndarray:
    """ways[L, s] = number of length-L tuples with digits 0..d-1 summing to s."""
    max_sum = n_sites * (d - 1)
    ways = np.zeros((n_sites + 1, max_sum + 1), dtype=np.int64)
    ways[0, 0] = 1
    for length in range(1, n_sites + 1):
        for digit in range(d):
            ways[length, digit:] += ways[length - 1, : max_sum + 1 - digit]
    return ways


def stratum_size(n_sites: int, k: int, d: int) -> int:
    """Number of basis states with total occupation exactly k.

    Equals the stars-and-bars count C(N + k - 1, k) whenever d > k, since
    the per-site cap cannot bind.
    """
    if d > k:
        return comb(n_sites + k - 1, k)
    return int(occupation_count_table(n_sites, d)[n_sites, k])


@dataclass(frozen=True)
class ManyBodyBasis:
    """Ordered collection of occupation tuples with O(1) bidirectional lookup."""

    n_sites: int
    levels: int
    window: tuple | None
    states: np.ndarray = field(repr=False)
    _lookup: dict = field(repr=False, compare=False)

    def __len__(self) -> int:
        return self.states.shape[0]

    @property
    def size(self) -> int:
        return self.states.shape[0]

    def index_of(self, occupations) -> int:
        key = bytes(bytearray(occupations))
        try:
            return self._lookup[key]
        except KeyError:
            raise KeyError(f"occupation tuple {tuple(occupations)} not in basis") from None

    def occupations_of(self, index: int) -> tuple:
        return tuple(int(x) for x in self.states[index])

    def contains(self, occupations) -> bool:
        return bytes(bytearray(occupations)) in self._lookup

    def total_occupations(self) -> np.ndarray:
        return self.states.sum(axis=1, dtype=np.int64)

    def stratum_indices(self, k: int) -> np.ndarray:
        return np.nonzero(self.total_occupations() == k)[0]

    def stratum_sizes(self) -> dict:
        """Counts of states per total-occupation stratum present in the basis."""
        totals = self.total_occupations()
        ks, counts = np.unique(totals, return_counts=True)
        return {int(k): int(c) for k, c in zip(ks, counts)}

    def computational_indices(self) -> np.ndarray:
        """Indices of states with every occupation 0 or 1, in label order."""
        return np.nonzero(self.states.max(axis=1) <= 1)[0]


def enumerate_basis(n_sites: int, d: int, window: tuple | None = None,
                    state_cap: int = DEFAULT_STATE_CAP) -> ManyBodyBasis:
    """Enumerate the (optionally windowed) product basis in lexicographic order."""
    if d < 2:
        raise ValueError(f"need at least 2 levels per site, got d={d}")
    if n_sites < 1:
        raise ValueError("need at least one site")
    max_sum = n_sites * (d - 1)
    if window is None:
        k_min, k_max = 0, max_sum
    else:
        k_min, k_max = int(window[0]), int(window[1])
        if k_min > k_max:
            raise ValueError(f"empty excitation window {window}")
        k_min = max(k_min, 0)
        k_max = min(k_max, max_sum)
        if k_min > k_max:
            raise ValueError(f"excitation window {window} excludes every state")

    ways = occupation_count_table(n_sites, d)
    total = int(ways[n_sites, k_min : k_max + 1].sum())
    if total > state_cap:
        raise BasisSizeError(
            f"basis would hold {total} states, above the cap of {state_cap}; "
            "narrow the excitation window or lower d"
        )

    states = np.empty((total, n_sites), dtype=np.uint8)
    current = np.zeros(n_sites, dtype=np.uint8)
    row = 0

    def fill(pos: int, partial: int):
        nonlocal row
        if pos == n_sites:
            states[row] = current
            row += 1
            return
        remaining = n_sites - pos - 1
        for digit in range(d):
            s = partial + digit
            if s > k_max:
                break
            if s + remaining * (d - 1) < k_min:
                continue
            current[pos] = digit
            fill(pos + 1, s)
        current[pos] = 0

    fill(0, 0)
    assert row == total
    lookup = {states[i].tobytes(): i for i in range(total)}
    win = None if window is None else (k_min, k_max)
    return ManyBodyBasis(n_sites, d, win, states, lookup)


def select_permutation_multiplet(basis: ManyBodyBasis, lattice: Lattice,
                                 excitations) -> np.ndarray:
    """Indices of the permutation multiplet with a given excitation pattern.

    ``excitations`` maps each sublattice label to the number of its sites in
    state |1> (all other occupations 0); for lattices without a pattern, a
    plain integer gives the total number of excited sites.  Only
    computational states (occupations <= 1) qualify.
    """
    if isinstance(excitations, int):
        label_sites = {None: np.arange(lattice.n_sites)}
        wanted = {None: excitations}
    else:
        if lattice.pattern is None:
            raise ValueError("per-sublattice excitation counts need a patterned lattice")
        wanted = dict(excitations)
        label_sites = {
            label: np.asarray(lattice.sites_with_label(label), dtype=np.intp)
            for label in wanted
        }
        covered = set()
        for sites in label_sites.values():
            covered.update(int(s) for s in sites)
        if covered != set(range(lattice.n_sites)):
            missing = sorted(set(range(lattice.n_sites)) - covered)
            raise ValueError(f"excitation spec does not cover sites {missing}")
    for label, count in wanted.items():
        if count < 0 or count > len(label_sites[label]):
            raise ValueError(f"cannot excite {count} of {len(label_sites[label])} "
                             f"sites on sublattice {label!r}")

    occ = basis.states
    mask = occ.max(axis=1) <= 1
    for label, sites in label_sites.items():
        mask &= occ[:, sites].sum(axis=1) == wanted[label]
    indices = np.nonzero(mask)[0]
    if indices.size == 0:
        raise ValueError("empty permutation multiplet for the given spec")
    return indices
