"""Bounded concave truncation of the identity map.

Given a cap M0 > 0, an exponent p > 1 and a factor mu in (0, 1), the
profile built here equals the identity up to M0, bends over through a
polynomial cutoff, and continues with the exact solution of

    tail'(u) = mu^(p-1) * tail(u)^p * u^(-p)

past the joint point zeta.  The result is C^1, concave past M0, bounded,
and satisfies the differential inequality

    profile'(u) * u^p >= mu^(p-1) * profile(u)^p

pointwise (with equality beyond zeta).  This is the device that turns an
unbounded supersolution into a bounded one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from scipy.optimize import brentq

from .specfun import DomainError

__all__ = [
    "CutoffProfile",
    "build_cutoff",
    "TruncationProfile",
    "build_truncation",
    "solve_zeta",
    "PropertyCheck",
    "TruncationReport",
    "verify_truncation",
]

_ZETA_TOL = 1e-12


@dataclass(frozen=True)
class CutoffProfile:
    """C^1 cutoff: 1 on [0, M0], cubic descent to 0 at M0 + 1.

    The descent is 1 - 3t^2 + 2t^3 with t = u - M0, so both endpoint
    slopes vanish and the antiderivative is an exact polynomial; the
    joint-point equation below therefore carries no quadrature error.
    """

    M0: float

    def __post_init__(self) -> None:
        if self.M0 <= 0.0:
            raise DomainError(f"cap must be positive, got {self.M0!r}")

    def value(self, u: float) -> float:
        if u < 0.0:
            raise DomainError(f"argument must be nonnegative, got {u!r}")
        if u <= self.M0:
            return 1.0
        t = u - self.M0
        if t >= 1.0:
            return 0.0
        return 1.0 - t * t * (3.0 - 2.0 * t)

    def slope(self, u: float) -> float:
        if u < 0.0:
            raise DomainError(f"argument must be nonnegative, got {u!r}")
        if u <= self.M0:
            return 0.0
        t = u - self.M0
        if t >= 1.0:
            return 0.0
        return -6.0 * t * (1.0 - t)

    def integral(self, u: float) -> float:
        """Exact antiderivative from 0: integral_0^u value."""
        if u < 0.0:
            raise DomainError(f"argument must be nonnegative, got {u!r}")
        if u <= self.M0:
            return u
        t = min(u - self.M0, 1.0)
        return self.M0 + t - t**3 + 0.5 * t**4


def build_cutoff(M0: float) -> CutoffProfile:
    """The fixed polynomial cutoff used by every truncation profile."""
    return CutoffProfile(M0=float(M0))


def _joint_equation(cutoff: CutoffProfile, mu: float, p: float):
    """F(u) = value(u) u^p - mu^(p-1) integral(u)^p on [M0, M0+1]."""
    c = mu ** (p - 1.0)

    def F(u: float) -> float:
        return cutoff.value(u) * u**p - c * cutoff.integral(u) ** p

    return F


def solve_zeta(mu: float, p: float, cutoff: CutoffProfile) -> float:
    """First root of the joint equation in (M0, M0+1), to 1e-12.

    F is positive at M0 (the cutoff is 1 there and mu < 1) and negative
    at M0 + 1 (the cutoff vanishes), so a bracket always exists; with
    the polynomial cutoff the sign changes exactly once.
    """
    if not (0.0 < mu < 1.0):
        raise DomainError(f"factor must satisfy 0 < mu < 1, got {mu!r}")
    if not p > 1.0:
        raise DomainError(f"exponent must satisfy p > 1, got {p!r}")
    F = _joint_equation(cutoff, mu, p)
    lo, hi = cutoff.M0, cutoff.M0 + 1.0
    if not (F(lo) > 0.0 and F(hi) < 0.0):  # guaranteed by construction
        raise RuntimeError("joint equation lost its sign bracket")
    n = 256
    a, fa = lo, F(lo)
    for i in range(1, n + 1):
        b = lo + (hi - lo) * i / n
        fb = F(b)
        if fa > 0.0 >= fb:
            return brentq(F, a, b, xtol=_ZETA_TOL)
        a, fa = b, fb
    raise RuntimeError("joint equation produced no sign change on the scan")


@dataclass(frozen=True)
class TruncationProfile:
    """The truncated profile and its closed-form concave tail."""

    mu: float
    p: float
    M0: float
    cutoff: CutoffProfile
    zeta: float
    psi_at_zeta: float  # integral of the cutoff up to zeta

    def tail(self, u: float) -> float:
        """Closed-form tail for u >= zeta.

        tail(u) = ( psi^(1-p) + mu^(p-1) (u^(1-p) - zeta^(1-p)) )^(-1/(p-1))
        """
        if u < self.zeta:
            raise DomainError(f"tail defined for u >= zeta = {self.zeta}, got {u!r}")
        q = self.p - 1.0
        base = self.psi_at_zeta ** (-q) + self.mu**q * (u ** (-q) - self.zeta ** (-q))
        return base ** (-1.0 / q)

    def tail_limit(self) -> float:
        """Finite limit of the tail as u -> infinity (boundedness)."""
        q = self.p - 1.0
        base = self.psi_at_zeta ** (-q) - self.mu**q * self.zeta ** (-q)
        return base ** (-1.0 / q)

    def value(self, u: float) -> float:
        if u < 0.0:
            raise DomainError(f"argument must be nonnegative, got {u!r}")
        if u <= self.zeta:
            return self.cutoff.integral(u)
        return self.tail(u)

    __call__ = value

    def slope(self, u: float) -> float:
        """One-sided-consistent derivative; C^1 across the joint point."""
        if u < 0.0:
            raise DomainError(f"argument must be nonnegative, got {u!r}")
        if u <= self.zeta:
            return self.cutoff.value(u)
        t = self.tail(u)
        return self.mu ** (self.p - 1.0) * t**self.p * u ** (-self.p)


def build_truncation(mu: float, p: float, M0: float) -> TruncationProfile:
    """Assemble the truncation profile for a cap M0 > 0."""
    cutoff = build_cutoff(M0)
    zeta = solve_zeta(mu, p, cutoff)
    return TruncationProfile(
        mu=mu,
        p=p,
        M0=cutoff.M0,
        cutoff=cutoff,
        zeta=zeta,
        psi_at_zeta=cutoff.integral(zeta),
    )


@dataclass(frozen=True)
class PropertyCheck:
    name: str
    passed: bool
    worst: float
    location: Optional[float]


@dataclass(frozen=True)
class TruncationReport:
    checks: Tuple[PropertyCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_violation(self) -> Optional[PropertyCheck]:
        for c in self.checks:
            if not c.passed:
                return c
        return None


def default_grid(profile: TruncationProfile, count: int = 2000) -> List[float]:
    """Evaluation grid reaching well past the joint point.

    The upper end covers the approach to the finite tail limit: ten
    times the remaining tail rise past zeta, mapped back through the
    closed form.
    """
    rise = profile.tail_limit() - profile.psi_at_zeta
    u_max = profile.zeta + 10.0 * max(rise, 1.0)
    return [u_max * i / count for i in range(count + 1)]


def verify_truncation(
    profile: TruncationProfile,
    grid: Optional[Sequence[float]] = None,
    rel_tol: float = 1e-10,
) -> TruncationReport:
    """Check the defining properties of the profile on a grid.

    - identity on [0, M0];
    - C^1 matching of the two branches at the joint point;
    - slope in (0, 1], nonincreasing; profile below the identity;
    - the differential inequality, strict below the joint point and an
      identity beyond it (relative tolerance rel_tol);
    - bounded second differences (Lipschitz slope proxy) and a finite
      tail limit.
    """
    if grid is None:
        grid = default_grid(profile)
    grid = sorted(float(u) for u in grid)
    mu, p = profile.mu, profile.p
    c = mu ** (p - 1.0)
    checks: List[PropertyCheck] = []

    def record(name: str, passed: bool, worst: float, loc: Optional[float]) -> None:
        checks.append(PropertyCheck(name=name, passed=passed, worst=worst, location=loc))

    # identity region
    worst, loc = 0.0, None
    for u in grid:
        if u <= profile.M0:
            err = abs(profile.value(u) - u)
            if err > worst:
                worst, loc = err, u
    record("identity_below_cap", worst <= rel_tol * max(1.0, profile.M0), worst, loc)

    # C^1 joint
    left = profile.cutoff.value(profile.zeta)
    right = c * profile.psi_at_zeta**p * profile.zeta ** (-p)
    jump = abs(left - right)
    record("c1_joint", jump <= 1e-10, jump, profile.zeta)

    # slope range and monotonicity, profile below identity
    prev_slope = None
    worst_rng, loc_rng = 0.0, None
    worst_mon, loc_mon = 0.0, None
    worst_below, loc_below = 0.0, None
    for u in grid:
        sl = profile.slope(u)
        if sl <= 0.0 or sl > 1.0 + 1e-12:
            excess = max(-sl, sl - 1.0)
            if excess > worst_rng:
                worst_rng, loc_rng = excess, u
        if prev_slope is not None and sl > prev_slope + 1e-12:
            if sl - prev_slope > worst_mon:
                worst_mon, loc_mon = sl - prev_slope, u
        prev_slope = sl
        if u > 0.0:
            over = profile.value(u) - u
            if over > worst_below:
                worst_below, loc_below = over, u
    record("slope_in_unit_interval", worst_rng == 0.0, worst_rng, loc_rng)
    record("slope_nonincreasing", worst_mon == 0.0, worst_mon, loc_mon)
    record("below_identity", worst_below <= rel_tol, worst_below, loc_below)

    # differential inequality: strict below zeta (u > 0), equality above
    worst_ineq, loc_ineq = 0.0, None
    worst_eq, loc_eq = 0.0, None
    for u in grid:
        if u <= 0.0:
            continue
        lhs = profile.slope(u) * u**p
        rhs = c * profile.value(u) ** p
        scale = max(abs(lhs), abs(rhs), 1e-300)
        if u <= profile.zeta:
            gap = (rhs - lhs) / scale
            if gap > worst_ineq:
                worst_ineq, loc_ineq = gap, u
        else:
            gap = abs(lhs - rhs) / scale
            if gap > worst_eq:
                worst_eq, loc_eq = gap, u
    record("differential_inequality", worst_ineq <= rel_tol, worst_ineq, loc_ineq)
    record("tail_equality", worst_eq <= rel_tol, worst_eq, loc_eq)

    # concave tail: slope differences nonpositive past zeta
    tail_pts = [u for u in grid if u > profile.zeta]
    worst_cc, loc_cc = 0.0, None
    for u0, u1 in zip(tail_pts[:-1], tail_pts[1:]):
        d = profile.slope(u1) - profile.slope(u0)
        if d > worst_cc:
            worst_cc, loc_cc = d, u1
    record("tail_concave", worst_cc <= 1e-10, worst_cc, loc_cc)

    # bounded second differences and finite tail limit
    finite = math.isfinite(profile.tail_limit())
    record("tail_limit_finite", finite, 0.0 if finite else math.inf, None)
    slopes = [profile.slope(u) for u in grid]
    max_slope_jump = max(
        (abs(s1 - s0) for s0, s1 in zip(slopes[:-1], slopes[1:])), default=0.0
    )
    spacing = max(
        (u1 - u0 for u0, u1 in zip(grid[:-1], grid[1:]) if u1 > u0), default=1.0
    )
    lipschitz = max_slope_jump / spacing if spacing > 0 else math.inf
    record("slope_lipschitz_bounded", math.isfinite(lipschitz), lipschitz, None)

    return TruncationReport(checks=tuple(checks))
