"""The explicit singular power-law solution and its stability test.

For admissible parameters the profile  u(r) = amplitude * r^(-decay)
solves the weighted problem exactly, with the amplitude determined by
the spectral multiplier.  Everything here is closed form: the solution
is represented by (amplitude, decay), never by samples on a grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .criticality import (
    DEFAULT_TOL,
    Classification,
    Label,
    ProblemParams,
    classify,
    decay_exponent,
    hardy_constant,
    sobolev_exponent,
    spectral_lambda,
)
from .specfun import DomainError, log_gamma

__all__ = [
    "SingularSolution",
    "build_singular",
    "riesz_constant",
    "log_riesz_constant",
    "amplitude_identity_residual",
    "StabilityResult",
    "singular_stability",
    "IntegrabilityFlags",
    "integrability_flags",
    "scaled_profile",
]


def _distributional_floor(N: int, s: float, ell: float) -> float:
    """Exponent floor (N + l) / (N - 2s) above which the power profile
    solves the equation distributionally."""
    return (N + ell) / (N - 2.0 * s)


@dataclass(frozen=True)
class SingularSolution:
    """Closed-form singular radial solution amplitude * r^(-decay).

    ``weak_regime`` records whether p > p_S, i.e. whether the profile is
    additionally a locally finite-energy weak solution rather than only
    a distributional one.
    """

    amplitude: float
    decay: float
    params: ProblemParams
    weak_regime: bool

    def __call__(self, r: float) -> float:
        if r <= 0.0:
            raise DomainError(f"radius must be positive, got {r!r}")
        return self.amplitude * r ** (-self.decay)


def build_singular(params: ProblemParams) -> SingularSolution:
    """Construct the singular solution for p above the distributional floor.

    decay = (2s + l)/(p - 1);  amplitude^(p-1) = spectral_lambda(beta)
    with beta = (N - 2s)/2 - decay.  The profile is strictly decreasing
    and blows up at the origin.
    """
    N, s, ell = params.N, params.s, params.ell
    p = params.require_p()
    floor = _distributional_floor(N, s, ell)
    if p <= floor:
        raise DomainError(
            f"singular profile needs p > (N+l)/(N-2s) = {floor}, got p={p!r}"
        )
    theta = decay_exponent(s, ell, p)
    beta = 0.5 * (N - 2.0 * s) - theta
    amp = spectral_lambda(beta, N, s) ** (1.0 / (p - 1.0))
    return SingularSolution(
        amplitude=amp,
        decay=theta,
        params=params,
        weak_regime=p > sobolev_exponent(N, s, ell),
    )


def log_riesz_constant(alpha: float, N: int) -> float:
    """Log of the Riesz-kernel normalization, for 0 < alpha < N.

    log( pi^{N/2} 2^alpha Gamma(alpha/2) / Gamma((N - alpha)/2) )
    """
    if not (0.0 < alpha < N):
        raise DomainError(f"need 0 < alpha < N, got alpha={alpha!r}, N={N!r}")
    return (
        0.5 * N * math.log(math.pi)
        + alpha * math.log(2.0)
        + log_gamma(0.5 * alpha)
        - log_gamma(0.5 * (N - alpha))
    )


def riesz_constant(alpha: float, N: int) -> float:
    """Riesz-kernel normalization; strictly positive, diverges as alpha -> N."""
    return math.exp(log_riesz_constant(alpha, N))


def amplitude_identity_residual(params: ProblemParams) -> float:
    """Relative gap between the two closed forms of the amplitude.

    The (p-1)-th power of the amplitude equals both the ratio of Riesz
    constants at the two homogeneities involved and the spectral
    multiplier at the stability offset.  Both routes are evaluated in
    log space; returns |riesz_route - lambda_route| / lambda_route.
    """
    N, s, ell = params.N, params.s, params.ell
    p = params.require_p()
    floor = _distributional_floor(N, s, ell)
    if p <= floor:
        raise DomainError(
            f"identity needs p > (N+l)/(N-2s) = {floor}, got p={p!r}"
        )
    theta = decay_exponent(s, ell, p)
    source_power = (ell + 2.0 * s * p) / (p - 1.0)  # = theta + 2s, in (0, N)
    log_riesz_route = log_riesz_constant(N - theta, N) - log_riesz_constant(
        N - source_power, N
    )
    beta = 0.5 * (N - 2.0 * s) - theta
    lam = spectral_lambda(beta, N, s)
    return abs(math.exp(log_riesz_route) - lam) / lam


@dataclass(frozen=True)
class StabilityResult:
    """Outcome of the linearized-stability inequality for the singular
    solution: p * spectral_lambda(beta) <= hardy_constant."""

    stable: bool
    margin: float
    classification: Classification


def singular_stability(params: ProblemParams, tol: float = DEFAULT_TOL) -> StabilityResult:
    """Stability of the singular solution, for p > p_S.

    Stable exactly when the point is critical or supercritical; the
    margin hardy_constant - p * spectral_lambda(beta) is reported.  The
    tolerance is shared with classify so the two predicates agree at
    every point.
    """
    N, s, ell = params.N, params.s, params.ell
    p = params.require_p()
    if p <= sobolev_exponent(N, s, ell):
        raise DomainError(f"stability test needs p > p_S, got p={p!r}")
    theta = decay_exponent(s, ell, p)
    beta = 0.5 * (N - 2.0 * s) - theta
    lam0 = hardy_constant(N, s)
    value = p * spectral_lambda(beta, N, s)
    cls = classify(params, tol)
    stable = cls.label in (Label.CRITICAL, Label.SUPERCRITICAL)
    return StabilityResult(stable=stable, margin=lam0 - value, classification=cls)


@dataclass(frozen=True)
class IntegrabilityFlags:
    """Which solution regimes the exponent reaches.

    distributional: p above (N+l)/(N-2s), tempered-distribution solution;
    weak: p above p_S, locally finite-energy weak solution;
    decay_below_half: decay < (N-2s)/2, needed for local H^s membership.
    """

    distributional: bool
    weak: bool
    decay_below_half: bool


def integrability_flags(params: ProblemParams) -> IntegrabilityFlags:
    N, s, ell = params.N, params.s, params.ell
    p = params.require_p()
    theta = decay_exponent(s, ell, p)
    return IntegrabilityFlags(
        distributional=p > _distributional_floor(N, s, ell),
        weak=p > sobolev_exponent(N, s, ell),
        decay_below_half=theta < 0.5 * (N - 2.0 * s),
    )


def scaled_profile(
    f: Callable[[float], float], alpha: float, decay: float
) -> Callable[[float], float]:
    """Member of the scaling family: r -> alpha * f(alpha^(1/decay) * r).

    The singular solution is the fixed point of every such map, and the
    maps compose as a multiplicative group in alpha.
    """
    if alpha <= 0.0:
        raise DomainError(f"scaling parameter must be positive, got {alpha!r}")
    if decay <= 0.0:
        raise DomainError(f"decay exponent must be positive, got {decay!r}")
    stretch = alpha ** (1.0 / decay)

    def g(r: float) -> float:
        return alpha * f(stretch * r)

    return g
