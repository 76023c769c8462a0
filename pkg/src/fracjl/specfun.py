"""Scalar special functions used throughout the package.

Everything downstream (criticality margins, threshold curves, singular
amplitudes) reduces to log-gamma, digamma and trigamma evaluations at
strictly positive arguments, so these are kept as small, well-tested
scalar routines.  Arguments at or below zero are rejected: no formula in
scope ever evaluates a gamma-family function at a pole.
"""

from __future__ import annotations

import math
from typing import NamedTuple

__all__ = [
    "EULER_GAMMA",
    "DomainError",
    "log_gamma",
    "digamma",
    "trigamma",
    "NormalizationConstants",
    "normalization_constants",
]

EULER_GAMMA = 0.5772156649015328606

# Asymptotic tails are applied only once the argument has been shifted
# above this value; below it the upward recurrence is exact arithmetic.
_ASYMPTOTIC_CUTOFF = 10.0

# Coefficients of the large-z expansion psi(z) ~ log z - 1/(2z) - sum c_k z^(-2k)
# (Bernoulli numbers B_{2k}/(2k)); truncation error < 1e-15 for z >= 10.
_DIGAMMA_TAIL = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)

# psi'(z) ~ 1/z + 1/(2 z^2) + sum d_k z^(-2k-1) with d_k = B_{2k}.
_TRIGAMMA_TAIL = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
)


class DomainError(ValueError):
    """Raised when a parameter leaves the admissible region."""


def _require_positive(z: float, fn: str) -> float:
    z = float(z)
    if not math.isfinite(z) or z <= 0.0:
        raise DomainError(f"{fn} requires a finite argument > 0, got {z!r}")
    return z


def log_gamma(z: float) -> float:
    """Natural log of the gamma function for z > 0.

    Backed by the C library ``lgamma`` (sign is irrelevant on the positive
    axis), which is accurate to a couple of ulp across the supported range.
    """
    z = _require_positive(z, "log_gamma")
    return math.lgamma(z)


def digamma(z: float) -> float:
    """Logarithmic derivative of the gamma function for z > 0.

    Upward recurrence psi(z) = psi(z+1) - 1/z shifts the argument above
    the asymptotic cutoff, then the de Moivre tail is summed.
    """
    z = _require_positive(z, "digamma")
    acc = 0.0
    while z < _ASYMPTOTIC_CUTOFF:
        acc -= 1.0 / z
        z += 1.0
    w = 1.0 / (z * z)
    tail = 0.0
    for c in reversed(_DIGAMMA_TAIL):
        tail = (tail + c) * w
    return acc + math.log(z) - 0.5 / z - tail


def trigamma(z: float) -> float:
    """Derivative of digamma for z > 0; always strictly positive."""
    z = _require_positive(z, "trigamma")
    acc = 0.0
    while z < _ASYMPTOTIC_CUTOFF:
        acc += 1.0 / (z * z)
        z += 1.0
    w = 1.0 / (z * z)
    tail = 0.0
    for c in reversed(_TRIGAMMA_TAIL):
        tail = (tail + c) * w
    return acc + 1.0 / z + 0.5 * w + tail / z


class NormalizationConstants(NamedTuple):
    """Normalizations tied to the fractional Laplacian of order 2s."""

    c_ns: float
    kappa_s: float


def normalization_constants(N: int, s: float) -> NormalizationConstants:
    """Singular-integral constant C_{N,s} and the extension constant kappa_s.

    C_{N,s} = 2^{2s} s (1-s) pi^{-N/2} Gamma(N/2 + s) / Gamma(2 - s)
    kappa_s = 2^{1-2s} Gamma(1-s) / Gamma(s)

    Requires 0 < s < 1 and N >= 1.  Both constants are strictly positive
    in that range and vanish only in the limits s -> 0 or s -> 1 (the
    first one, through the factor s(1-s)).
    """
    if N < 1:
        raise DomainError(f"dimension must satisfy N >= 1, got {N}")
    s = float(s)
    if not 0.0 < s < 1.0:
        raise DomainError(f"order must satisfy 0 < s < 1, got {s}")
    log_c = (
        2.0 * s * math.log(2.0)
        + math.log(s)
        + math.log1p(-s)
        - 0.5 * N * math.log(math.pi)
        + log_gamma(0.5 * N + s)
        - log_gamma(2.0 - s)
    )
    log_kappa = (1.0 - 2.0 * s) * math.log(2.0) + log_gamma(1.0 - s) - log_gamma(s)
    return NormalizationConstants(math.exp(log_c), math.exp(log_kappa))
