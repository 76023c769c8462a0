"""Joseph-Lundgren exponents and every threshold curve of the phase diagram.

Root finding happens in the reduced coordinate x in (0, A), which is a
bounded interval regardless of how large the exponent p gets; exponents
are mapped back only after the root has converged.  Infinite exponents
are reported as math.inf; no formula is ever evaluated there (the
reduced endpoint x = A carries that information instead).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from scipy.optimize import brentq, minimize_scalar

from .criticality import (
    DEFAULT_TOL,
    Label,
    ProblemParams,
    from_reduced,
    jl_ratio,
    jl_threshold,
    log_jl_ratio,
    log_jl_threshold,
    margin_at_infinity,
    margin_at_infinity_ds,
    reduced_from_x,
    reduced_sup,
    sobolev_exponent,
)
from .specfun import DomainError, digamma

__all__ = [
    "Crossing",
    "CriticalSet",
    "ThresholdReport",
    "WeightThresholds",
    "joseph_lundgren_exponent",
    "critical_set",
    "order_threshold",
    "order_thresholds_negative_weight",
    "turning_order",
    "weight_thresholds",
    "weight_bound",
    "weight_threshold_slope",
    "min_supercritical_dimension",
    "threshold_report",
    "classical_jl_exponent",
    "classical_jl_exponent_weighted",
]

# Reduced-coordinate resolution of every bisection and of the scans.
_X_TOL = 1e-12
# Uniform samples of the first scan pass over (0, A).
_SCAN_SAMPLES = 4096
# Subdivision factor of the adaptive refinement pass.
_REFINE_FACTOR = 16


def _gap_margin(N: float, s: float, ell: float) -> Callable[[float], float]:
    """Sign function of the criticality test as a function of x in [0, A]."""
    thr = log_jl_threshold(N, s)

    def phi(x: float) -> float:
        return log_jl_ratio(reduced_from_x(N, s, ell, x)) - thr

    return phi


def joseph_lundgren_exponent(N: int, s: float, ell: float) -> float:
    """The unique Joseph-Lundgren exponent for weights -2s < l <= 0.

    Returns math.inf when every p > 1 is subcritical (endpoint margin
    >= 0); otherwise the unique root of the criticality margin, located
    by bracketed root finding in the reduced coordinate to 1e-12.

    Positive weights are rejected: uniqueness fails there, use
    critical_set instead.
    """
    if ell > 0.0:
        raise DomainError(
            "joseph_lundgren_exponent requires l <= 0 (the crossing can be "
            "non-unique for positive weights; use critical_set)"
        )
    ProblemParams(int(N), s, ell)
    if margin_at_infinity(s, N, ell) >= 0.0:
        return math.inf
    phi = _gap_margin(N, s, ell)
    A = reduced_sup(N, s)
    x_root = brentq(phi, 0.0, A, xtol=_X_TOL)
    return from_reduced(reduced_from_x(N, s, ell, x_root))


@dataclass(frozen=True)
class Crossing:
    """One zero of the criticality margin.

    ``tangential`` marks zeros where the margin touches without changing
    sign (even multiplicity); these are flagged, never dropped.
    """

    x: float
    p: float
    multiplicity: int
    tangential: bool


@dataclass(frozen=True)
class CriticalSet:
    """All Joseph-Lundgren critical exponents at fixed (N, s, l).

    ``intervals`` holds one label per maximal open interval between
    consecutive crossings, starting at p_S and ending at infinity, so
    ``len(intervals) == len(crossings) + 1``.
    """

    N: int
    s: float
    ell: float
    p_sobolev: float
    crossings: Tuple[Crossing, ...]
    intervals: Tuple[Label, ...]

    @property
    def exponents(self) -> Tuple[float, ...]:
        return tuple(c.p for c in self.crossings)

    @property
    def is_empty(self) -> bool:
        return not self.crossings


def _scan_roots(
    phi: Callable[[float], float], A: float, tol: float
) -> Tuple[List[float], List[Tuple[float, float]]]:
    """Locate sign changes and tangential touches of phi on (0, A).

    Returns (transversal roots, list of (x, |phi|) tangential touches).
    One refinement pass subdivides any cell whose values come close to
    zero relative to the local variation, so near-tangential pairs are
    not skipped by the uniform grid.
    """
    n = _SCAN_SAMPLES
    xs = [A * i / n for i in range(n + 1)]
    vals = [phi(x) for x in xs]

    def refine(lo_idx: int) -> Tuple[List[float], List[float]]:
        a, b = xs[lo_idx], xs[lo_idx + 1]
        sub_x = [a + (b - a) * j / _REFINE_FACTOR for j in range(1, _REFINE_FACTOR)]
        return sub_x, [phi(x) for x in sub_x]

    fine_x: List[float] = []
    fine_v: List[float] = []
    for i in range(n):
        local_var = abs(vals[i + 1] - vals[i])
        near = min(abs(vals[i]), abs(vals[i + 1])) < 10.0 * max(local_var, tol)
        fine_x.append(xs[i])
        fine_v.append(vals[i])
        if near:
            sx, sv = refine(i)
            fine_x.extend(sx)
            fine_v.extend(sv)
    fine_x.append(xs[n])
    fine_v.append(vals[n])

    roots: List[float] = []
    for i in range(len(fine_x) - 1):
        v0, v1 = fine_v[i], fine_v[i + 1]
        if v0 == 0.0:
            roots.append(fine_x[i])
        elif v0 * v1 < 0.0:
            roots.append(brentq(phi, fine_x[i], fine_x[i + 1], xtol=_X_TOL))
    if fine_v[-1] == 0.0:
        roots.append(fine_x[-1])

    # Tangential touches: local minima of |phi| that reach the critical
    # band without a sign change around them.
    touches: List[Tuple[float, float]] = []
    for i in range(1, len(fine_x) - 1):
        v = fine_v[i]
        if abs(v) <= abs(fine_v[i - 1]) and abs(v) <= abs(fine_v[i + 1]):
            if fine_v[i - 1] * v > 0.0 and v * fine_v[i + 1] > 0.0:
                res = minimize_scalar(
                    lambda x: abs(phi(x)),
                    bounds=(fine_x[i - 1], fine_x[i + 1]),
                    method="bounded",
                    options={"xatol": _X_TOL},
                )
                if abs(res.fun) <= tol:
                    touches.append((float(res.x), float(res.fun)))
    return roots, touches


def _dedupe(points: List[float], spacing: float) -> List[float]:
    out: List[float] = []
    for x in sorted(points):
        if not out or x - out[-1] > spacing:
            out.append(x)
    return out


def critical_set(
    N: int, s: float, ell: float, tol: float = DEFAULT_TOL
) -> CriticalSet:
    """Locate every Joseph-Lundgren critical exponent at fixed (N, s, l).

    A uniform scan plus one adaptive refinement pass finds all sign
    changes of the criticality margin over the reduced interval; each
    bracket is polished to 1e-12.  For l <= 0 log-concavity guarantees
    at most one crossing and the result agrees with
    joseph_lundgren_exponent.
    """
    ProblemParams(int(N), s, ell)
    phi = _gap_margin(N, s, ell)
    A = reduced_sup(N, s)
    log_band = math.log1p(tol)
    roots, touches = _scan_roots(phi, A, log_band)
    roots = _dedupe(roots, 4.0 * _X_TOL)

    crossings: List[Crossing] = []
    for x in roots:
        rp = reduced_from_x(N, s, ell, x)
        crossings.append(
            Crossing(x=x, p=from_reduced(rp), multiplicity=1, tangential=False)
        )
    for x, _ in touches:
        if any(abs(x - c.x) <= 4.0 * _X_TOL for c in crossings):
            continue
        rp = reduced_from_x(N, s, ell, x)
        crossings.append(
            Crossing(x=x, p=from_reduced(rp), multiplicity=2, tangential=True)
        )
    crossings.sort(key=lambda c: c.x)

    # Interval labels from midpoint signs; the last interval abuts x = A.
    bounds = [0.0] + [c.x for c in crossings] + [A]
    labels: List[Label] = []
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        mid = 0.5 * (lo + hi)
        v = phi(mid)
        labels.append(Label.SUBCRITICAL if v > 0.0 else Label.SUPERCRITICAL)

    return CriticalSet(
        N=int(N),
        s=s,
        ell=ell,
        p_sobolev=sobolev_exponent(N, s, ell),
        crossings=tuple(crossings),
        intervals=tuple(labels),
    )


def order_threshold(N: int) -> float:
    """The unique order s_N at which the finite-exponent regime ends.

    Defined only for N in {8, 9} with zero weight: below the threshold
    the Joseph-Lundgren exponent is finite, at or above it every p is
    subcritical.  For N <= 7 the exponent is infinite for every order
    and for N >= 10 it is finite for every order, so no threshold
    exists on either side.
    """
    if N not in (8, 9):
        raise DomainError(
            "order_threshold exists only for N in {8, 9}: for N <= 7 the "
            "critical exponent is infinite at every order, for N >= 10 it "
            "is finite at every order"
        )
    f = lambda s: margin_at_infinity(s, N, 0.0)
    return brentq(f, 1e-6, 1.0 - 1e-12, xtol=_X_TOL)


def order_thresholds_negative_weight(N: int, ell: float) -> Tuple[float, float]:
    """Order window (s_lower, s_upper) of the endpoint-margin sign change
    for negative weights.

    The endpoint margin tends to -infinity at s = -l/2 and is positive
    near the upper end of the admissible orders when N < 10 + 4l;
    s_lower is the first sign change and s_upper the last.  For
    2 <= N <= 6 monotonicity forces them equal, which is asserted.  For
    N = 1 the admissible orders end at 1/2 and the crossing is unique.
    """
    if not (-2.0 < ell < 0.0):
        raise DomainError(f"requires -2 < l < 0, got {ell!r}")
    if N < 1 or float(N) != int(N):
        raise DomainError(f"dimension must be a positive integer, got {N!r}")
    N = int(N)
    if N == 1:
        if ell <= -1.0:
            raise DomainError(f"for N=1 the weight must satisfy l > -1, got {ell!r}")
        s_left, s_right = -0.5 * ell, 0.5
    else:
        if N >= 10.0 + 4.0 * ell:
            raise DomainError(
                "endpoint margin is negative for every admissible order when "
                "N >= 10 + 4l (finite exponent throughout); see "
                "min_supercritical_dimension"
            )
        s_left, s_right = max(0.0, -0.5 * ell), 1.0

    f = lambda s: margin_at_infinity(s, N, ell)
    span = s_right - s_left
    lo = s_left + 1e-9 * span
    hi = s_right - 1e-9 * span
    grid = 2048
    ss = [lo + (hi - lo) * i / grid for i in range(grid + 1)]
    vs = [f(s) for s in ss]
    roots: List[float] = []
    for i in range(grid):
        if vs[i] == 0.0:
            roots.append(ss[i])
        elif vs[i] * vs[i + 1] < 0.0:
            roots.append(brentq(f, ss[i], ss[i + 1], xtol=_X_TOL))
    if not roots:
        raise DomainError(
            f"no sign change of the endpoint margin found for N={N}, l={ell}"
        )
    s_lower, s_upper = roots[0], roots[-1]
    if 1 <= N <= 6 and abs(s_upper - s_lower) > 1e-10:
        raise DomainError(
            f"monotone regime N={N} produced distinct order thresholds "
            f"{s_lower} != {s_upper}"
        )
    if 1 <= N <= 6:
        s_upper = s_lower
    return s_lower, s_upper


def turning_order(N: int) -> float:
    """Order at which the endpoint margin stops decreasing (zero weight).

    For N >= 8 the margin's s-derivative starts negative; by convexity
    it crosses zero at most once.  Returns the crossing, or 1.0 when the
    derivative stays negative on the whole interval.  For N = 7 the
    derivative is already positive at s = 0+ and no turning point
    exists.
    """
    if N < 8 or float(N) != int(N):
        raise DomainError(
            "turning_order requires an integer N >= 8 (for N = 7 the "
            "endpoint margin is increasing from the start)"
        )
    N = int(N)
    f = lambda s: margin_at_infinity_ds(s, N, 0.0)
    lo, hi = 1e-9, 1.0 - 1e-12
    if f(hi) <= 0.0:
        return 1.0
    return brentq(f, lo, hi, xtol=_X_TOL)


def weight_bound(x: float, N: float, s: float) -> float:
    """Pointwise largest weight keeping x subcritical.

    L(x) = (2 / g0(x)) (A - x + s) (Mtilde - g0(x)) with g0 the
    zero-weight criticality ratio: the point x satisfies the weighted
    test with weight l exactly when l >= L(x).
    """
    rp = reduced_from_x(N, s, 0.0, x)
    g0 = jl_ratio(rp)
    mt = jl_threshold(N, s)
    return 2.0 / g0 * (rp.gap + s) * (mt - g0)


def weight_threshold_slope(N: float) -> float:
    """Small-order slope limit of the endpoint weight bound, divided by s.

    Equals -2 [2 psi(N/4) - psi(1) - psi(N/2)]; at N = 8 this is -1/3.
    """
    if N < 8:
        raise DomainError(f"slope limit applies for N >= 8, got {N!r}")
    return -2.0 * (2.0 * digamma(0.25 * N) - digamma(1.0) - digamma(0.5 * N))


@dataclass(frozen=True)
class WeightThresholds:
    """The three weight thresholds organizing the positive-weight diagram.

    ell1: below it the endpoint (p = infinity) is supercritical, giving
          a single crossing pair;
    ell2: largest pointwise weight bound over the supercritical-capable
          range; weights strictly between ell1 and ell2 produce the
          bounded supercritical window;
    ell3: at or above it every exponent is subcritical.

    x_tilde is the zero-weight crossing, x_peak the maximizer of the
    pointwise bound.
    """

    ell1: float
    ell2: float
    ell3: float
    x_tilde: float
    x_peak: float


def weight_thresholds(N: int, s: float) -> WeightThresholds:
    """Compute the weight thresholds at dimension N >= 8 and order s.

    Requires the endpoint margin at zero weight to be negative (N in
    {8, 9} below the order threshold, or any N >= 10), otherwise the
    zero-weight ratio never dips below the threshold and the quantities
    are undefined.
    """
    if N < 8 or float(N) != int(N):
        raise DomainError(f"weight_thresholds requires an integer N >= 8, got {N!r}")
    N = int(N)
    ProblemParams(N, s, 0.0)
    if margin_at_infinity(s, N, 0.0) >= 0.0:
        raise DomainError(
            "weight thresholds are undefined: the zero-weight ratio stays "
            "above the threshold at this order (every positive weight is "
            "subcritical-only)"
        )
    A = reduced_sup(N, s)
    mt = jl_threshold(N, s)

    phi0 = _gap_margin(N, s, 0.0)
    x_tilde = brentq(phi0, 0.0, A, xtol=_X_TOL)

    g0_at_A = jl_ratio(reduced_from_x(N, s, 0.0, A))
    ell1 = 2.0 * s / g0_at_A * (mt - g0_at_A)
    ell3 = 2.0 / g0_at_A * (A - x_tilde + s) * (mt - g0_at_A)

    # Maximize the pointwise bound over [x_tilde, A]: grid scan, then a
    # bounded polish around the best cell.
    grid = 1024
    best_i, best_v = 0, -math.inf
    xs = [x_tilde + (A - x_tilde) * i / grid for i in range(grid + 1)]
    for i, x in enumerate(xs):
        v = weight_bound(x, N, s)
        if v > best_v:
            best_i, best_v = i, v
    lo = xs[max(0, best_i - 1)]
    hi = xs[min(grid, best_i + 1)]
    res = minimize_scalar(
        lambda x: -weight_bound(x, N, s),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": _X_TOL},
    )
    x_peak = float(res.x)
    # the sup over the closed interval includes the endpoint, whose bound
    # is exactly ell1: clamp so ell1 <= ell2 holds to the last ulp
    ell2 = max(best_v, -float(res.fun), ell1)
    return WeightThresholds(ell1=ell1, ell2=ell2, ell3=ell3, x_tilde=x_tilde, x_peak=x_peak)


def min_supercritical_dimension(s: float, ell: float) -> int:
    """Smallest integer dimension N >= 2 with negative endpoint margin.

    The margin is strictly decreasing in N and tends to -infinity, so a
    doubling search followed by integer bisection terminates.  From that
    dimension upward, large exponents are supercritical.
    """
    if not (0.0 < s < 1.0):
        raise DomainError(f"order must satisfy 0 < s < 1, got {s!r}")
    if ell <= -2.0 * s:
        raise DomainError(f"weight must satisfy l > -2s, got {ell!r}")
    f = lambda N: margin_at_infinity(s, float(N), ell)
    if f(2) < 0.0:
        return 2
    hi = 4
    while f(hi) >= 0.0:
        hi *= 2
        # the margin decays only like s*log(N), so tiny orders with
        # positive weights can push the answer beyond float range
        if hi > 2**512:
            raise DomainError(
                "minimal supercritical dimension exceeds the representable "
                f"range for s={s!r}, l={ell!r}"
            )
    lo = hi // 2  # f(lo) >= 0 > f(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if f(mid) < 0.0:
            hi = mid
        else:
            lo = mid
    return hi


def classical_jl_exponent(N: int) -> float:
    """Local-operator (order one) Joseph-Lundgren exponent.

    Infinite for N <= 10; for N >= 11:
      ((N-2)^2 - 4N + 8 sqrt(N-1)) / ((N-2)(N-10)).
    """
    if N < 1 or float(N) != int(N):
        raise DomainError(f"dimension must be a positive integer, got {N!r}")
    N = int(N)
    if N <= 10:
        return math.inf
    return ((N - 2.0) ** 2 - 4.0 * N + 8.0 * math.sqrt(N - 1.0)) / (
        (N - 2.0) * (N - 10.0)
    )


def classical_jl_exponent_weighted(N: int, ell: float) -> float:
    """Weighted local-operator threshold exponent.

    Infinite for 2 <= N <= 10 + 4l; for N > 10 + 4l:
      ((N-2)^2 - 2(l+2)(l+N) + 2 sqrt((l+2)^3 (l+2N-2))) / ((N-2)(N-4l-10)).
    Reduces to classical_jl_exponent at l = 0.
    """
    if N < 2 or float(N) != int(N):
        raise DomainError(f"dimension must be an integer >= 2, got {N!r}")
    if ell <= -2.0:
        raise DomainError(f"weight must satisfy l > -2, got {ell!r}")
    N = int(N)
    if N <= 10.0 + 4.0 * ell:
        return math.inf
    disc = (ell + 2.0) ** 3 * (ell + 2.0 * N - 2.0)
    return ((N - 2.0) ** 2 - 2.0 * (ell + 2.0) * (ell + N) + 2.0 * math.sqrt(disc)) / (
        (N - 2.0) * (N - 4.0 * ell - 10.0)
    )


@dataclass(frozen=True)
class ThresholdReport:
    """Every threshold that is well-defined for a given parameter query.

    Fields stay None when the defining hypothesis fails for the inputs;
    ``notes`` records why, one line per skipped threshold.
    """

    N: Optional[int] = None
    s: Optional[float] = None
    ell: Optional[float] = None
    order_threshold: Optional[float] = None
    order_window: Optional[Tuple[float, float]] = None
    turning_order: Optional[float] = None
    weight_thresholds: Optional[WeightThresholds] = None
    min_supercritical_dim: Optional[int] = None
    notes: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.order_threshold is not None:
            if not 0.0 < self.order_threshold < 1.0:
                raise RuntimeError(f"order threshold outside (0,1): {self.order_threshold}")
        if self.order_window is not None:
            lo, hi = self.order_window
            if not lo <= hi:
                raise RuntimeError(f"order window out of order: {self.order_window}")
        if self.weight_thresholds is not None:
            wt = self.weight_thresholds
            if not 0.0 < wt.ell1 <= wt.ell2:
                raise RuntimeError(f"weight thresholds out of order: {wt}")

    @property
    def is_empty(self) -> bool:
        return (
            self.order_threshold is None
            and self.order_window is None
            and self.turning_order is None
            and self.weight_thresholds is None
            and self.min_supercritical_dim is None
        )


def threshold_report(
    N: Optional[int] = None,
    s: Optional[float] = None,
    ell: Optional[float] = None,
) -> ThresholdReport:
    """Gather every threshold whose hypotheses the inputs satisfy.

    Which thresholds are attempted depends on which parameters are
    supplied: the zero-weight order thresholds need N, the negative
    weight order window needs N and l < 0, the weight thresholds need N
    and s, and the minimal supercritical dimension needs s and l.
    """
    notes: List[str] = []
    values: Dict[str, object] = {}

    def attempt(field_name: str, fn) -> None:
        try:
            values[field_name] = fn()
        except DomainError as exc:
            notes.append(f"{field_name}: {exc}")

    if N is not None and (ell is None or ell == 0.0):
        attempt("order_threshold", lambda: order_threshold(N))
        attempt("turning_order", lambda: turning_order(N))
    if N is not None and ell is not None and ell < 0.0:
        attempt("order_window", lambda: order_thresholds_negative_weight(N, ell))
    if N is not None and s is not None:
        attempt("weight_thresholds", lambda: weight_thresholds(N, s))
    if s is not None and ell is not None:
        attempt("min_supercritical_dim", lambda: min_supercritical_dimension(s, ell))

    return ThresholdReport(
        N=N,
        s=s,
        ell=ell,
        order_threshold=values.get("order_threshold"),
        order_window=values.get("order_window"),
        turning_order=values.get("turning_order"),
        weight_thresholds=values.get("weight_thresholds"),
        min_supercritical_dim=values.get("min_supercritical_dim"),
        notes=tuple(notes),
    )
