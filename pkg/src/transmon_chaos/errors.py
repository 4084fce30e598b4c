"""Exception types shared across the package."""


class TransmonChaosError(Exception):
    """Base class for all package-specific errors."""


class ConvergenceError(TransmonChaosError):
    """A numerical result did not converge (charge cutoff too small,
    eigensolver failure, ...)."""


class BasisSizeError(TransmonChaosError):
    """Requested many-body basis exceeds the configured state cap."""


class DegenerateDisorderError(TransmonChaosError):
    """Disorder model cannot produce samples satisfying the E_J/E_C guard."""


class CheckpointError(TransmonChaosError):
    """Checkpoint file is unreadable, corrupt, or inconsistent."""


class ConfigMismatchError(CheckpointError):
    """Checkpoint was written for a different sweep configuration."""


class MergeOverlapError(TransmonChaosError):
    """Attempt to merge sweep results with overlapping realization sets."""
