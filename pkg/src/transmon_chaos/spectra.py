"""Dense diagonalization and excitation-bundle bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .basis import ManyBodyBasis
from .errors import ConvergenceError


@dataclass
class SpectrumResult:
    """Eigenvalues (ascending, GHz), optional eigenvectors and bundle tags.

    Eigenvector columns align with eigenvalues; components follow the
    originating basis order.  ``metadata`` carries parameters and seed for
    provenance.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None
    bundle_index: np.ndarray | None = None
    metadata: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)


@dataclass(frozen=True)
class BundleSelection:
    """Contiguous eigenvalue block assigned to one excitation bundle.

    ``overlap_flagged`` is set when the spectral gap to a neighboring
    bundle does not exceed the bundle's own largest internal spacing, which
    happens deep in the chaotic regime; downstream statistics should check
    it before trusting the assignment.
    """

    k: int
    start: int
    stop: int
    overlap_flagged: bool
    gap_below: float
    gap_above: float
    max_internal_spacing: float

    @property
    def size(self) -> int:
        return self.stop - self.start

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.start, self.stop)


def diagonalize(h: np.ndarray, want_vectors: bool = False, metadata: dict | None = None
                ) -> SpectrumResult:
    """Full spectrum of a dense real-symmetric matrix, ascending.

    Dense LAPACK solve: O(dim^3) time, O(dim^2) memory; intended for
    dimensions up to roughly 2e4.  Solver non-convergence is re-raised as
    :class:`ConvergenceError` with diagnostics.
    """
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    if not np.allclose(h, h.T, rtol=0.0, atol=1e-10):
        raise ValueError("matrix is not symmetric")
    try:
        if want_vectors:
            vals, vecs = scipy.linalg.eigh(h, check_finite=False)
        else:
            vals = scipy.linalg.eigvalsh(h, check_finite=False)
            vecs = None
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover - solver dependent
        raise ConvergenceError(f"dense eigensolver failed on dim={h.shape[0]}: {exc}") from exc
    return SpectrumResult(eigenvalues=vals, eigenvectors=vecs, metadata=metadata or {})


def select_bundle(spectrum: SpectrumResult, k: int, basis: ManyBodyBasis) -> BundleSelection:
    """Locate the k-excitation bundle inside an energy-sorted spectrum.

    The spectrum must come from a basis whose window covers stratum k (or
    from the full basis).  Bundles are assumed energy-ordered by total
    excitation number, so the block of the M_k lowest-stratum states sits
    after all lower strata; the gap check validates that assumption and
    flags overlap instead of failing.
    """
    sizes = basis.stratum_sizes()
    if k not in sizes:
        raise ValueError(f"basis window does not cover excitation stratum {k}")
    if spectrum.dim != basis.size:
        raise ValueError("spectrum dimension does not match basis size")
    start = sum(count for kk, count in sizes.items() if kk < k)
    stop = start + sizes[k]

    vals = spectrum.eigenvalues
    block = vals[start:stop]
    spacings = np.diff(block)
    max_internal = float(spacings.max()) if spacings.size else 0.0
    gap_below = float(block[0] - vals[start - 1]) if start > 0 else np.inf
    gap_above = float(vals[stop] - block[-1]) if stop < len(vals) else np.inf
    flagged = min(gap_below, gap_above) <= max_internal
    return BundleSelection(k, start, stop, flagged, gap_below, gap_above, max_internal)


def tag_bundles(spectrum: SpectrumResult, basis: ManyBodyBasis) -> np.ndarray:
    """Per-eigenvalue bundle tags for every stratum present in the basis."""
    tags = np.empty(spectrum.dim, dtype=np.int64)
    offset = 0
    for k, count in sorted(basis.stratum_sizes().items()):
        tags[offset : offset + count] = k
        offset += count
    if offset != spectrum.dim:
        raise ValueError("stratum sizes do not cover the spectrum")
    return tags
