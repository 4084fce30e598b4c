"""System descriptions and the per-realization diagnostic pipeline.

A :class:`SystemSpec` fully describes one simulated array: geometry,
energies, disorder scheme, truncations, and the excitation bundle under
study.  :func:`prepare_system` does the seed-independent work once (basis
enumeration, coupling sparsity pattern); :func:`run_realization` then maps
one derived seed to the requested diagnostics.  Both are pure functions of
their inputs, so realizations parallelize freely.
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict

import numpy as np

from .basis import ManyBodyBasis, enumerate_basis, select_permutation_multiplet, DEFAULT_STATE_CAP
from .disorder import DisorderModel, sample_disorder
from .hamiltonian import CouplingStructure, build_coupling_structure, assemble_hamiltonian
from .lattice import Lattice, build_lattice
from .seeding import mix64
from .single_transmon import TransmonParams, solve_single_transmon
from .spectra import diagonalize, select_bundle
from .statistics import spacing_ratios, ipr
from .walsh import StepPolicy, group_walsh, track_computational_states

KNOWN_DIAGNOSTICS = ("kl", "ipr", "walsh", "multiplet")


@dataclass(frozen=True)
class SystemSpec:
    """Complete description of one disordered transmon array study."""

    geometry: str = "chain"
    n_sites: int = 10
    e_c: float = 0.25
    e_j: float = 12.5
    coupling: float = 0.003
    scheme: str = "A"
    sigma_ej: float | None = None
    pattern: str | None = None
    pattern_means: dict | None = None
    bundle_k: int = 5
    n_max: int = 15
    levels: int | None = None       # per-site d; default bundle_k + 3
    window_pad: int | None = 2      # excitation window [k - pad, k + pad]; None = full space
    edge_file: str | None = None
    state_cap: int = DEFAULT_STATE_CAP
    multiplet_excitations: dict | None = None
    walsh_max_step: float = 1e-4
    walsh_levels: int = 4           # per-site d for computational-state tracking

    def resolved_levels(self) -> int:
        return self.levels if self.levels is not None else self.bundle_k + 3

    def window(self) -> tuple | None:
        if self.window_pad is None:
            return None
        return (max(self.bundle_k - self.window_pad, 0), self.bundle_k + self.window_pad)

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class PreparedSystem:
    """Seed-independent precomputation shared by all realizations."""

    spec: SystemSpec
    lattice: Lattice
    basis: ManyBodyBasis
    structure: CouplingStructure
    walsh_basis: ManyBodyBasis | None = None
    walsh_structure: CouplingStructure | None = None
    multiplet_indices: np.ndarray | None = None


def build_system_lattice(spec: SystemSpec) -> Lattice:
    return build_lattice(spec.geometry, n_sites=spec.n_sites, pattern=spec.pattern,
                         edge_file=spec.edge_file)


def prepare_system(spec: SystemSpec, diagnostics=("kl", "ipr")) -> PreparedSystem:
    unknown = set(diagnostics) - set(KNOWN_DIAGNOSTICS)
    if unknown:
        raise ValueError(f"unknown diagnostics {sorted(unknown)}; expected {KNOWN_DIAGNOSTICS}")
    lattice = build_system_lattice(spec)
    basis = enumerate_basis(lattice.n_sites, spec.resolved_levels(), spec.window(),
                            state_cap=spec.state_cap)
    structure = build_coupling_structure(basis, lattice)
    prepared = PreparedSystem(spec, lattice, basis, structure)

    if "walsh" in diagnostics:
        wbasis = enumerate_basis(lattice.n_sites, spec.walsh_levels, None,
                                 state_cap=spec.state_cap)
        prepared.walsh_basis = wbasis
        prepared.walsh_structure = build_coupling_structure(wbasis, lattice)
    if "multiplet" in diagnostics:
        if spec.multiplet_excitations is None:
            raise ValueError("multiplet diagnostics need multiplet_excitations in the spec")
        spec_counts = {k: int(v) for k, v in spec.multiplet_excitations.items()}
        prepared.multiplet_indices = select_permutation_multiplet(basis, lattice, spec_counts)
    return prepared


def disorder_model_for(spec: SystemSpec, seed: int) -> DisorderModel:
    return DisorderModel(scheme=spec.scheme, e_c=spec.e_c, sigma_ej=spec.sigma_ej,
                         pattern_means=spec.pattern_means, seed=seed)


def solve_sites(spec: SystemSpec, e_j_values, levels: int):
    return [
        solve_single_transmon(TransmonParams(spec.e_c, float(ej), spec.n_max, levels))
        for ej in e_j_values
    ]


def _multiplet_diagnostics(prepared: PreparedSystem, spectrum) -> dict:
    """KL-ready ratios and IPR restricted to a permutation multiplet.

    Eigenstates are attributed to the multiplet by their total weight on
    its basis states (the multiplet-size largest weights win); in the
    separated-multiplet regimes this coincides with the energy block.
    """
    member = prepared.multiplet_indices
    vecs = spectrum.eigenvectors
    weights = np.sum(vecs[member, :] ** 2, axis=0)
    chosen = np.sort(np.argsort(weights)[::-1][: len(member)])
    energies = np.sort(spectrum.eigenvalues[chosen])
    sample = spacing_ratios(energies)
    return {
        "ratios": sample.values,
        "degenerate_collapsed": sample.n_degenerate_collapsed,
        "ipr": ipr(spectrum, chosen),
        "min_weight": float(weights[chosen].min()),
    }


def run_realization(prepared: PreparedSystem, seed: int, diagnostics=("kl", "ipr"),
                    coupling: float | None = None, walsh_targets=None) -> dict:
    """All requested diagnostics for one disorder realization.

    Returns a plain-dict payload (JSON-friendly scalars and lists) so the
    sweep engine can checkpoint it verbatim.
    """
    spec = prepared.spec
    t = spec.coupling if coupling is None else float(coupling)
    model = disorder_model_for(spec, seed)
    e_j_values = sample_disorder(model, prepared.lattice, spec.e_j)

    payload: dict = {"seed": seed, "coupling": t, "e_j_values": e_j_values.tolist()}

    need_bundle = {"kl", "ipr", "multiplet"} & set(diagnostics)
    if need_bundle:
        solutions = solve_sites(spec, e_j_values, prepared.basis.levels)
        h = assemble_hamiltonian(prepared.structure, prepared.basis, solutions, t)
        want_vectors = bool({"ipr", "multiplet"} & set(diagnostics))
        spectrum = diagonalize(h, want_vectors=want_vectors,
                               metadata={"seed": seed, "coupling": t})
        bundle = select_bundle(spectrum, spec.bundle_k, prepared.basis)
        payload["bundle_overlap"] = bool(bundle.overlap_flagged)

        if "kl" in diagnostics:
            sample = spacing_ratios(spectrum.eigenvalues[bundle.start : bundle.stop])
            payload["ratios"] = sample.values.tolist()
            payload["degenerate_collapsed"] = sample.n_degenerate_collapsed
        if "ipr" in diagnostics:
            payload["ipr"] = ipr(spectrum, bundle.indices)
        if "multiplet" in diagnostics:
            mult = _multiplet_diagnostics(prepared, spectrum)
            payload["multiplet_ratios"] = mult["ratios"].tolist()
            payload["multiplet_degenerate_collapsed"] = mult["degenerate_collapsed"]
            payload["multiplet_ipr"] = mult["ipr"]
            payload["multiplet_min_weight"] = mult["min_weight"]

    if "walsh" in diagnostics:
        targets = [t] if walsh_targets is None else list(walsh_targets)
        solutions = solve_sites(spec, e_j_values, prepared.walsh_basis.levels)
        policy = StepPolicy(max_step=spec.walsh_max_step)
        spectra = track_computational_states(
            prepared.walsh_basis, prepared.walsh_structure, solutions, targets, policy
        )
        walsh_payload = []
        for ws in spectra:
            groups = group_walsh(ws)
            walsh_payload.append({
                "coupling": ws.coupling,
                "groups": groups.group_means(),
                "worst_quality": float(ws.tracking_quality.min()),
                "n_ambiguous": int(ws.ambiguous.sum()),
            })
        payload["walsh"] = walsh_payload

    return payload


def realization_seed(master_seed: int, *indices: int) -> int:
    return mix64(master_seed, *indices)
