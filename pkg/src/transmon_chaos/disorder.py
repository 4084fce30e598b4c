"""Disorder models for Josephson-energy spreads.

Two named schemes tie the spread to the device scales:

* scheme A (weak, natural disorder):    delta_E_J = sqrt(E_C * E_J / 8),
  equivalent to a frequency spread delta_nu ~ E_C / 2;
* scheme B (strong, engineered spread): delta_E_J = sqrt(18 * E_C * E_J),
  equivalent to delta_nu ~ 6 * E_C.

``fixed_sigma`` takes an explicit spread, and ``pattern`` draws each site
around its sublattice mean.  Every sample is redrawn until E_J/E_C >= 20 so
the charge-basis solver stays in the transmon regime.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateDisorderError
from .lattice import Lattice
from .seeding import gaussian

SCHEMES = ("A", "B", "fixed_sigma", "pattern")
EJ_EC_FLOOR = 20.0
_MAX_REDRAWS = 1000


def scheme_sigma(scheme: str, e_c: float, e_j: float) -> float:
    """Josephson-energy spread implied by a named scheme."""
    if scheme == "A":
        return float(np.sqrt(e_c * e_j / 8.0))
    if scheme == "B":
        return float(np.sqrt(18.0 * e_c * e_j))
    raise ValueError(f"scheme {scheme!r} has no derived spread")


def frequency_spread(e_c: float, e_j: float, sigma_ej: float) -> float:
    """delta_nu = sqrt(2 E_C / E_J) * delta_E_J (linearized nu(E_J))."""
    return float(np.sqrt(2.0 * e_c / e_j) * sigma_ej)


@dataclass(frozen=True)
class DisorderModel:
    """Gaussian E_J disorder with deterministic per-site sampling.

    ``sigma_ej`` is derived for schemes A/B (and must not be supplied),
    mandatory for ``fixed_sigma``, and optional for ``pattern`` (default 0).
    """

    scheme: str
    e_c: float
    sigma_ej: float | None = None
    pattern_means: dict | None = field(default=None)
    seed: int = 0

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}; expected one of {SCHEMES}")
        if self.scheme in ("A", "B") and self.sigma_ej is not None:
            raise ValueError("schemes A/B derive sigma_ej; do not supply it")
        if self.scheme == "fixed_sigma" and self.sigma_ej is None:
            raise ValueError("fixed_sigma requires an explicit sigma_ej")
        if self.sigma_ej is not None and self.sigma_ej < 0:
            raise ValueError("sigma_ej must be non-negative")
        if self.scheme == "pattern" and not self.pattern_means:
            raise ValueError("pattern scheme requires pattern_means")

    def sigma_for(self, base_e_j: float) -> float:
        if self.scheme in ("A", "B"):
            return scheme_sigma(self.scheme, self.e_c, base_e_j)
        return float(self.sigma_ej or 0.0)


def sample_disorder(model: DisorderModel, lattice: Lattice, base_e_j: float) -> np.ndarray:
    """Draw per-site Josephson energies.

    Each site draws independently from a Gaussian with mean ``base_e_j``
    (or its sublattice mean for the pattern scheme) and the model's spread;
    the draw depends only on (seed, site index, redraw attempt), so a given
    site's value never changes when other sites are added or re-ordered.
    Samples below the E_J/E_C >= 20 transmon-regime floor are redrawn, at
    most 1000 times per site.
    """
    values = np.empty(lattice.n_sites)
    floor = EJ_EC_FLOOR * model.e_c
    for site in range(lattice.n_sites):
        if model.scheme == "pattern":
            if lattice.pattern is None or lattice.pattern[site] is None:
                raise ValueError(f"pattern scheme needs a sublattice label at site {site}")
            label = lattice.pattern[site]
            try:
                mean = model.pattern_means[label]
            except KeyError as exc:
                raise ValueError(f"no pattern mean for sublattice {label!r}") from exc
            sigma = model.sigma_for(base_e_j)
        else:
            mean = base_e_j
            sigma = model.sigma_for(base_e_j)
        if sigma == 0.0:
            if mean < floor:
                raise DegenerateDisorderError(
                    f"mean E_J={mean} GHz violates E_J/E_C >= {EJ_EC_FLOOR} with zero spread"
                )
            values[site] = mean
            continue
        for attempt in range(_MAX_REDRAWS):
            x = mean + sigma * gaussian(model.seed, site, attempt)
            if x >= floor:
                values[site] = x
                break
        else:
            raise DegenerateDisorderError(
                f"site {site}: no sample with E_J/E_C >= {EJ_EC_FLOOR} in "
                f"{_MAX_REDRAWS} attempts (mean={mean}, sigma={sigma})"
            )
    return values
