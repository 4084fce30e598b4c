"""Deterministic, implementation-portable random streams.

All randomness in the package is derived from a 64-bit master seed through
the splitmix64 mixing function, and Gaussian deviates are produced by
inverse-CDF transformation of the mixed bits.  This keeps every draw a pure
function of (seed, indices), so disorder realizations and sweep tasks are
bit-reproducible across runs, machines, and execution orders.
"""

from __future__ import annotations

from scipy.special import ndtri

_MASK64 = (1 << 64) - 1
_MIX_OFFSET = 0x6A09E667F3BCC909  # fractional bits of sqrt(2), fixed accumulator start


def splitmix64(z: int) -> int:
    """One splitmix64 finalization round (public-domain constants)."""
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def mix64(*parts: int) -> int:
    """Hash an ordered tuple of integers to a 64-bit value.

    The accumulator starts from a fixed offset and folds each part through
    one splitmix64 round: ``acc = splitmix64(acc ^ part)``.  Negative parts
    are reduced modulo 2^64 first.
    """
    acc = _MIX_OFFSET
    for p in parts:
        acc = splitmix64(acc ^ (int(p) & _MASK64))
    return acc


def uniform01(*parts: int) -> float:
    """Map mixed bits to a double in the open interval (0, 1).

    Uses the top 53 bits shifted to the unit interval with a half-step
    offset, so the inverse normal CDF never sees 0 or 1.
    """
    z = mix64(*parts)
    return ((z >> 11) + 0.5) / float(1 << 53)


def gaussian(*parts: int) -> float:
    """Standard normal deviate via inverse-CDF of :func:`uniform01`."""
    return float(ndtri(uniform01(*parts)))


def derive_task_seed(master_seed: int, *indices: int) -> int:
    """Stable per-task seed from the master seed and task indices.

    Used by the sweep engine with (axis indices..., realization index) so
    every (grid point, realization) task owns an independent, reproducible
    stream regardless of scheduling.
    """
    return mix64(master_seed, *indices)
