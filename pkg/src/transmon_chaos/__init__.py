"""Exact diagonalization and chaos/localization diagnostics for
disordered coupled-transmon arrays.

The package covers the full pipeline: charge-basis single-transmon
solutions, lattice and disorder models, truncated many-body
diagonalization, spectral-ratio / IPR / Walsh-coefficient diagnostics,
disorder-ensemble sweeps, data-collapse fitting, and a CLI that emits CSV
tables and SVG figures.  All energies are in GHz (h = 1).
"""

__version__ = "0.1.0"

from .basis import ManyBodyBasis, enumerate_basis, select_permutation_multiplet, stratum_size
from .collapse import CollapseFit, CollapseTrace, fit_collapse_exponent
from .disorder import DisorderModel, sample_disorder, scheme_sigma
from .errors import (BasisSizeError, CheckpointError, ConfigMismatchError,
                     ConvergenceError, DegenerateDisorderError,
                     MergeOverlapError, TransmonChaosError)
from .hamiltonian import (CouplingStructure, assemble_hamiltonian,
                          build_coupling_structure, build_many_body_hamiltonian)
from .lattice import Lattice, build_lattice, load_lattice_from_file
from .pipeline import PreparedSystem, SystemSpec, prepare_system, run_realization
from .single_transmon import (SingleTransmonSolution, TransmonParams,
                              effective_scales, solve_single_transmon,
                              transmon_frequency)
from .spectra import BundleSelection, SpectrumResult, diagonalize, select_bundle, tag_bundles
from .statistics import (KLReport, RatioSample, ipr, kl_divergence,
                         normalized_kl, reference_distribution, spacing_ratios)
from .sweep import SweepConfig, SweepResult, merge_results, resume_sweep, run_sweep
from .walsh import (StepPolicy, WalshGroups, WalshSpectrum, group_walsh,
                    inverse_walsh_transform, track_computational_states,
                    walsh_transform)

__all__ = [
    "__version__",
    "BasisSizeError", "BundleSelection", "CheckpointError", "CollapseFit",
    "CollapseTrace", "ConfigMismatchError", "ConvergenceError",
    "CouplingStructure", "DegenerateDisorderError", "DisorderModel",
    "KLReport", "Lattice", "ManyBodyBasis", "MergeOverlapError",
    "PreparedSystem", "RatioSample", "SingleTransmonSolution",
    "SpectrumResult", "StepPolicy", "SweepConfig", "SweepResult",
    "SystemSpec", "TransmonChaosError", "TransmonParams", "WalshGroups",
    "WalshSpectrum", "assemble_hamiltonian", "build_coupling_structure",
    "build_lattice", "build_many_body_hamiltonian", "diagonalize",
    "effective_scales", "enumerate_basis", "fit_collapse_exponent",
    "group_walsh", "inverse_walsh_transform", "ipr", "kl_divergence",
    "load_lattice_from_file", "merge_results", "normalized_kl",
    "prepare_system", "reference_distribution", "resume_sweep",
    "run_realization", "run_sweep", "sample_disorder", "scheme_sigma",
    "select_bundle", "select_permutation_multiplet", "solve_single_transmon",
    "spacing_ratios", "stratum_size", "tag_bundles",
    "track_computational_states", "transmon_frequency", "walsh_transform",
]
