"""Criticality analysis for the weighted fractional Lane-Emden problem.

The equation (-Delta)^s u = |x|^l |u|^(p-1) u in dimension N carries a
trichotomy for the exponent p: comparing p * lambda(beta) with the Hardy
constant lambda(0) splits (p_S, infinity) into subcritical, critical and
supercritical ranges in the Joseph-Lundgren sense.

All decisions are made in a reduced coordinate x in [0, A] with
A = (N - 2s)/4: x = 0 corresponds to p = p_S, x = A to p = infinity, and
the criticality test becomes the comparison of a smooth ratio of gamma
functions against a p-independent threshold.  The reduced form is finite
on the closed interval, so the p = infinity endpoint needs no IEEE
infinities inside any formula.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .specfun import DomainError, digamma, log_gamma, trigamma

__all__ = [
    "DEFAULT_TOL",
    "Label",
    "ProblemParams",
    "ReducedPoint",
    "Classification",
    "sobolev_exponent",
    "spectral_lambda",
    "hardy_constant",
    "decay_exponent",
    "spectral_offset",
    "reduced_sup",
    "to_reduced",
    "from_reduced",
    "reduced_from_x",
    "jl_ratio",
    "log_jl_ratio",
    "log_jl_ratio_d1",
    "log_jl_ratio_d2",
    "jl_threshold",
    "log_jl_threshold",
    "margin_at_infinity",
    "margin_at_infinity_ds",
    "classify",
]

# Relative half-width of the band around the threshold that is reported
# as Critical.  Crossings located by the root finders land within 1e-12
# in the reduced coordinate, far inside this band.
DEFAULT_TOL = 1e-9


def _check_base(N: float, s: float, ell: float, *, integer_N: bool = False) -> None:
    """Validate the standing assumptions of the model.

    N may be real-valued for internal threshold analysis; the public
    classification entry point insists on integers.
    """
    if integer_N and float(N) != int(N):
        raise DomainError(f"dimension must be an integer, got {N!r}")
    if N < 1:
        raise DomainError(f"dimension must satisfy N >= 1, got {N!r}")
    if not (0.0 < s < 1.0):
        raise DomainError(f"order must satisfy 0 < s < 1, got {s!r}")
    if N <= 2.0 * s:
        raise DomainError(f"need N > 2s, got N={N!r}, s={s!r}")
    if ell <= -2.0 * s:
        raise DomainError(f"weight exponent must satisfy l > -2s, got l={ell!r}, s={s!r}")


@dataclass(frozen=True)
class ProblemParams:
    """A validated parameter point (N, s, l) with optional exponent p.

    Constraints: N integer >= 1, 0 < s < 1, N > 2s, l > -2s and, when
    present, p > 1.
    """

    N: int
    s: float
    ell: float
    p: Optional[float] = None

    def __post_init__(self) -> None:
        _check_base(self.N, self.s, self.ell, integer_N=True)
        if self.p is not None and not self.p > 1.0:
            raise DomainError(f"exponent must satisfy p > 1, got {self.p!r}")

    def require_p(self) -> float:
        if self.p is None:
            raise DomainError("operation requires the exponent p")
        return self.p


class Label(enum.Enum):
    SUBCRITICAL = "subcritical"
    CRITICAL = "critical"
    SUPERCRITICAL = "supercritical"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


def sobolev_exponent(N: float, s: float, ell: float) -> float:
    """Critical Sobolev-type exponent p_S = (N + 2s + 2l) / (N - 2s)."""
    _check_base(N, s, ell)
    return (N + 2.0 * s + 2.0 * ell) / (N - 2.0 * s)


def spectral_lambda(alpha: float, N: float, s: float) -> float:
    """Multiplier of (-Delta)^s on the homogeneous profile family.

    lambda(alpha) = 2^{2s} G(A+s+a) G(A+s-a) / (G(A-a) G(A+a)) with
    A + s = (N+2s)/4, A = (N-2s)/4 and a = alpha/2.  Defined for
    |alpha| < (N-2s)/2; symmetric in alpha; computed in log space so
    large dimensions cannot overflow.
    """
    if N < 1 or not (0.0 < s < 1.0) or N <= 2.0 * s:
        raise DomainError(f"need N >= 1, 0 < s < 1 and N > 2s, got N={N!r}, s={s!r}")
    a = 0.5 * alpha
    upper = 0.25 * (N + 2.0 * s)
    lower = 0.25 * (N - 2.0 * s)
    if abs(a) >= lower:
        raise DomainError(
            f"spectral_lambda needs |alpha| < (N-2s)/2, got alpha={alpha!r} with N={N!r}, s={s!r}"
        )
    log_val = (
        2.0 * s * math.log(2.0)
        + log_gamma(upper + a)
        + log_gamma(upper - a)
        - log_gamma(lower - a)
        - log_gamma(lower + a)
    )
    return math.exp(log_val)


def hardy_constant(N: float, s: float) -> float:
    """Best constant in the fractional Hardy inequality; equals spectral_lambda(0)."""
    return spectral_lambda(0.0, N, s)


def decay_exponent(s: float, ell: float, p: float) -> float:
    """Decay rate theta0 = (2s + l)/(p - 1) of the explicit singular profile."""
    if not p > 1.0:
        raise DomainError(f"exponent must satisfy p > 1, got {p!r}")
    if not (0.0 < s < 1.0) or ell <= -2.0 * s:
        raise DomainError(f"need 0 < s < 1 and l > -2s, got s={s!r}, l={ell!r}")
    return (2.0 * s + ell) / (p - 1.0)


def spectral_offset(N: float, s: float, ell: float, p: float) -> float:
    """Offset beta = (N-2s)/2 - theta0 fed to spectral_lambda by the stability test.

    Strictly increasing in p on (p_S, infinity), with range (0, (N-2s)/2).
    """
    _check_base(N, s, ell)
    if p <= sobolev_exponent(N, s, ell):
        raise DomainError(f"spectral_offset needs p > p_S, got p={p!r}")
    return 0.5 * (N - 2.0 * s) - decay_exponent(s, ell, p)


def reduced_sup(N: float, s: float) -> float:
    """Right endpoint A = (N - 2s)/4 of the reduced interval."""
    if N <= 2.0 * s:
        raise DomainError(f"need N > 2s, got N={N!r}, s={s!r}")
    return 0.25 * (N - 2.0 * s)


@dataclass(frozen=True)
class ReducedPoint:
    """A point of the reduced interval [0, A].

    ``gap`` stores A - x explicitly.  Exponents p near infinity map to
    gaps near zero; keeping the gap (not just x) preserves full relative
    precision through the round trip p -> x -> p and in the gamma
    arguments A + s - x = s + gap and A + 1 - x = 1 + gap.

    gap == 0 is the sentinel for p = infinity.
    """

    A: float
    s: float
    ell: float
    gap: float

    def __post_init__(self) -> None:
        if self.A <= 0.0:
            raise DomainError(f"reduced endpoint must be positive, got {self.A!r}")
        if not (-1e-12 <= self.gap <= self.A * (1 + 1e-12)):
            raise DomainError(
                f"reduced coordinate out of range: gap={self.gap!r} with A={self.A!r}"
            )

    @property
    def x(self) -> float:
        return self.A - self.gap

    @property
    def at_infinity(self) -> bool:
        return self.gap == 0.0


def to_reduced(N: float, s: float, ell: float, p: float) -> ReducedPoint:
    """Map an exponent p >= p_S to its reduced coordinate.

    p = p_S lands on x = 0; math.inf maps to the gap-zero sentinel.
    """
    _check_base(N, s, ell)
    A = reduced_sup(N, s)
    if math.isinf(p):
        return ReducedPoint(A=A, s=s, ell=ell, gap=0.0)
    if p < sobolev_exponent(N, s, ell):
        raise DomainError(f"to_reduced needs p >= p_S, got p={p!r}")
    gap = min(0.5 * (2.0 * s + ell) / (p - 1.0), A)
    return ReducedPoint(A=A, s=s, ell=ell, gap=gap)


def from_reduced(rp: ReducedPoint) -> float:
    """Inverse of to_reduced; the gap-zero sentinel returns math.inf."""
    if rp.at_infinity:
        return math.inf
    return 1.0 + 0.5 * (2.0 * rp.s + rp.ell) / rp.gap


def reduced_from_x(N: float, s: float, ell: float, x: float) -> ReducedPoint:
    """Build a reduced point from the coordinate x in [0, A] directly."""
    _check_base(N, s, ell)
    A = reduced_sup(N, s)
    if not (0.0 <= x <= A):
        raise DomainError(f"reduced coordinate must lie in [0, {A}], got {x!r}")
    return ReducedPoint(A=A, s=s, ell=ell, gap=A - x)


def log_jl_threshold(N: float, s: float) -> float:
    """Log of the threshold value 2 [lnG(A+s) - lnG(A)]."""
    A = reduced_sup(N, s)
    if not (0.0 < s < 1.0):
        raise DomainError(f"order must satisfy 0 < s < 1, got {s!r}")
    return 2.0 * (log_gamma(A + s) - log_gamma(A))


def jl_threshold(N: float, s: float) -> float:
    """Threshold value (Gamma(A+s)/Gamma(A))^2 compared against jl_ratio."""
    return math.exp(log_jl_threshold(N, s))


def log_jl_ratio(rp: ReducedPoint) -> float:
    """Log of the criticality ratio at a reduced point.

    Written in the pole-free form
      log(gap + s + l/2) + lnG(s + gap) - lnG(1 + gap) + lnG(A+s+x) - lnG(A+x)
    which is finite on the whole closed interval including gap = 0.
    """
    A, s, ell, gap = rp.A, rp.s, rp.ell, rp.gap
    x = rp.x
    prefactor = gap + s + 0.5 * ell
    if prefactor <= 0.0:
        raise DomainError(f"prefactor not positive at gap={gap!r}, s={s!r}, l={ell!r}")
    return (
        math.log(prefactor)
        + log_gamma(s + gap)
        - log_gamma(1.0 + gap)
        + log_gamma(A + s + x)
        - log_gamma(A + x)
    )


def jl_ratio(rp: ReducedPoint) -> float:
    """Criticality ratio g(x); strictly positive on [0, A].

    Satisfies p * spectral_lambda(2x) = 2^{2s} * jl_ratio(x), so the sign
    of jl_ratio - jl_threshold reproduces the stability comparison.
    """
    return math.exp(log_jl_ratio(rp))


def log_jl_ratio_d1(rp: ReducedPoint) -> float:
    """First derivative of log_jl_ratio in x, via digamma."""
    if rp.at_infinity or rp.gap >= rp.A:
        raise DomainError("derivative defined on the open interval 0 < x < A")
    A, s, ell, gap = rp.A, rp.s, rp.ell, rp.gap
    x = rp.x
    return (
        -1.0 / (gap + s + 0.5 * ell)
        - digamma(s + gap)
        + digamma(1.0 + gap)
        + digamma(A + s + x)
        - digamma(A + x)
    )


def log_jl_ratio_d2(rp: ReducedPoint) -> float:
    """Second derivative of log_jl_ratio in x, via trigamma.

    Strictly negative for -2s < l <= 0 (log-concavity of the ratio).
    """
    if rp.at_infinity or rp.gap >= rp.A:
        raise DomainError("derivative defined on the open interval 0 < x < A")
    A, s, ell, gap = rp.A, rp.s, rp.ell, rp.gap
    x = rp.x
    return (
        -1.0 / (gap + s + 0.5 * ell) ** 2
        + trigamma(s + gap)
        - trigamma(1.0 + gap)
        + trigamma(A + s + x)
        - trigamma(A + x)
    )


def margin_at_infinity(s: float, N: float, ell: float) -> float:
    """Margin of the criticality test at the p = infinity endpoint.

    Equals log_jl_ratio at gap = 0 minus log_jl_threshold, evaluated in
    the cancellation-free form

      log(s + l/2) + lnG(s) + lnG(N/2) - lnG((N-2s)/2)
        - 2 lnG((N+2s)/4) + 2 lnG((N-2s)/4).

    Positive means every exponent is subcritical; negative means a
    finite crossing exists.  N may be real.  s = 1 is admitted whenever
    N > 2 (the closed-form classical endpoint); otherwise 0 < s < 1.
    """
    if N < 1:
        raise DomainError(f"dimension must satisfy N >= 1, got {N!r}")
    if not (0.0 < s <= 1.0):
        raise DomainError(f"order must satisfy 0 < s <= 1, got {s!r}")
    if N <= 2.0 * s:
        raise DomainError(f"need N > 2s, got N={N!r}, s={s!r}")
    if s + 0.5 * ell <= 0.0:
        raise DomainError(f"need s > -l/2, got s={s!r}, l={ell!r}")
    return (
        math.log(s + 0.5 * ell)
        + log_gamma(s)
        + log_gamma(0.5 * N)
        - log_gamma(0.5 * (N - 2.0 * s))
        - 2.0 * log_gamma(0.25 * (N + 2.0 * s))
        + 2.0 * log_gamma(0.25 * (N - 2.0 * s))
    )


def margin_at_infinity_ds(s: float, N: float, ell: float) -> float:
    """Derivative of margin_at_infinity in the order s.

    1/(s + l/2) + psi(s) + psi((N-2s)/2) - psi((N+2s)/4) - psi((N-2s)/4)
    """
    if N < 1:
        raise DomainError(f"dimension must satisfy N >= 1, got {N!r}")
    if not (0.0 < s <= 1.0):
        raise DomainError(f"order must satisfy 0 < s <= 1, got {s!r}")
    if N <= 2.0 * s:
        raise DomainError(f"need N > 2s, got N={N!r}, s={s!r}")
    if s + 0.5 * ell <= 0.0:
        raise DomainError(f"need s > -l/2, got s={s!r}, l={ell!r}")
    return (
        1.0 / (s + 0.5 * ell)
        + digamma(s)
        + digamma(0.5 * (N - 2.0 * s))
        - digamma(0.25 * (N + 2.0 * s))
        - digamma(0.25 * (N - 2.0 * s))
    )


@dataclass(frozen=True)
class Classification:
    """Outcome of the trichotomy test at one parameter point.

    ``margin`` is the signed distance jl_ratio - jl_threshold; it is None
    on the p <= p_S branch where the reduced coordinate does not exist.
    ``at_infinity`` marks the p = infinity endpoint.
    """

    label: Label
    margin: Optional[float]
    at_infinity: bool = False


def _classify_reduced(rp: ReducedPoint, N: float, s: float, tol: float) -> Classification:
    threshold = jl_threshold(N, s)
    margin = jl_ratio(rp) - threshold
    if abs(margin) <= tol * threshold:
        label = Label.CRITICAL
    elif margin > 0.0:
        label = Label.SUBCRITICAL
    else:
        label = Label.SUPERCRITICAL
    return Classification(label=label, margin=margin, at_infinity=rp.at_infinity)


def classify(params: ProblemParams, tol: float = DEFAULT_TOL) -> Classification:
    """Joseph-Lundgren trichotomy for a validated parameter point.

    Exponents p <= p_S are subcritical unconditionally.  Beyond p_S the
    sign of jl_ratio - jl_threshold decides, with a relative band of
    width tol around the threshold reported as Critical.  p = math.inf
    is accepted and classified through the endpoint margin.
    """
    if tol <= 0.0:
        raise DomainError(f"tolerance must be positive, got {tol!r}")
    p = params.require_p() if not _is_infinite_p(params) else math.inf
    if not math.isinf(p) and p <= sobolev_exponent(params.N, params.s, params.ell):
        return Classification(label=Label.SUBCRITICAL, margin=None)
    rp = to_reduced(params.N, params.s, params.ell, p)
    return _classify_reduced(rp, params.N, params.s, tol)


def _is_infinite_p(params: ProblemParams) -> bool:
    return params.p is not None and math.isinf(params.p)
