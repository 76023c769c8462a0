"""Built-in verification suite.

Every check pins an analytically known value or structural property of
the library at a stated tolerance and can run standalone through the
CLI (``fracjl selftest``) or under pytest.  Checks draw their samples
from seeded generators, so two runs perform identical work.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from typing import Callable, List, Tuple

from .criticality import (
    DEFAULT_TOL,
    Label,
    ProblemParams,
    classify,
    hardy_constant,
    jl_ratio,
    log_jl_ratio_d1,
    log_jl_ratio_d2,
    margin_at_infinity,
    margin_at_infinity_ds,
    reduced_from_x,
    reduced_sup,
    sobolev_exponent,
    spectral_lambda,
    spectral_offset,
    to_reduced,
)
from .exponents import (
    classical_jl_exponent,
    critical_set,
    joseph_lundgren_exponent,
    order_threshold,
    weight_threshold_slope,
    weight_thresholds,
)
from .scan import Axis, ScanSpec, render_csv, run_scan
from .singular import amplitude_identity_residual
from .truncation import build_truncation, verify_truncation

__all__ = ["CheckFailure", "CheckResult", "CHECKS", "run_check", "run_all"]


class CheckFailure(AssertionError):
    """A check failed; the message carries expected and actual values."""


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    elapsed: float


def _fail(name: str, expected: str, actual: str) -> None:
    raise CheckFailure(f"{name}: expected {expected}, got {actual}")


def _sample_point(rng: random.Random, max_log_ratio: float = 3.0) -> ProblemParams:
    """A random admissible parameter point with p above the Sobolev exponent."""
    while True:
        N = rng.randint(1, 30)
        s = rng.uniform(0.02, 0.98)
        if N <= 2.0 * s:
            continue
        ell = rng.uniform(-2.0 * s + 0.02, 3.0)
        p_s = sobolev_exponent(N, s, ell)
        p = p_s * (1.0 + 10.0 ** rng.uniform(-3.0, max_log_ratio))
        return ProblemParams(N, s, ell, p)


def check_equivalence_identity(tol: float = DEFAULT_TOL) -> str:
    """p * lambda(beta) == 2^{2s} * ratio(x) to 1e-10 on 1e4 random points,
    in under a second."""
    rng = random.Random(1)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(10_000):
        params = _sample_point(rng)
        N, s, ell, p = params.N, params.s, params.ell, params.p
        beta = spectral_offset(N, s, ell, p)
        lhs = p * spectral_lambda(beta, N, s)
        rhs = 2.0 ** (2.0 * s) * jl_ratio(to_reduced(N, s, ell, p))
        rel = abs(lhs - rhs) / rhs
        worst = max(worst, rel)
        if rel > 1e-10:
            _fail("equivalence identity", "rel diff <= 1e-10", f"{rel:.3e} at {params}")
    elapsed = time.perf_counter() - start
    if elapsed >= 1.0:
        _fail("equivalence identity runtime", "< 1 s", f"{elapsed:.2f} s")
    return f"worst rel diff {worst:.2e} over 1e4 points in {elapsed:.2f} s"


def check_endpoint_closed_form(tol: float = DEFAULT_TOL) -> str:
    """Endpoint margin at order one equals log[(1 + l/2) * 4 / (N/2 - 1)]
    with the sign flipping exactly at N = 10 + 4l."""
    worst = 0.0
    for ell in (-1.0, -0.5, 0.0, 1.0, 2.0):
        flip = 10.0 + 4.0 * ell
        for N in range(3, 31):
            value = margin_at_infinity(1.0, N, ell)
            closed = math.log((1.0 + 0.5 * ell) * 4.0 / (0.5 * N - 1.0))
            err = abs(value - closed)
            worst = max(worst, err)
            if err > 1e-10:
                _fail("endpoint closed form", "|diff| <= 1e-10", f"{err:.3e} at N={N}, l={ell}")
            if N < flip and not value > 0.0:
                _fail("endpoint sign", f"> 0 for N < {flip}", f"{value:.3e} at N={N}, l={ell}")
            if N > flip and not value < 0.0:
                _fail("endpoint sign", f"< 0 for N > {flip}", f"{value:.3e} at N={N}, l={ell}")
            if N == flip and abs(value) > 1e-10:
                _fail("endpoint zero", "|value| <= 1e-10 at N = 10 + 4l", f"{value:.3e}")
    return f"closed form matched to {worst:.2e} for N in 3..30, five weights"


def check_derivative_anchors(tol: float = DEFAULT_TOL) -> str:
    """Small-order limits of the endpoint-margin derivative at N = 7, 8."""
    d7 = margin_at_infinity_ds(1e-6, 7, 0.0)
    ref7 = 0.4 + 4.0 * math.log(2.0) - math.pi
    if abs(d7 - ref7) > 1e-4:
        _fail("derivative anchor N=7", f"{ref7} +- 1e-4", f"{d7}")
    d8 = margin_at_infinity_ds(1e-6, 8, 0.0)
    ref8 = -1.0 / 6.0
    if abs(d8 - ref8) > 1e-4:
        _fail("derivative anchor N=8", f"{ref8} +- 1e-4", f"{d8}")
    return f"N=7 diff {abs(d7 - ref7):.2e}, N=8 diff {abs(d8 - ref8):.2e}"


def check_slope_anchor(tol: float = DEFAULT_TOL) -> str:
    """Small-order slope of the endpoint weight bound at N = 8 equals -1/3."""
    value = weight_threshold_slope(8)
    err = abs(value + 1.0 / 3.0)
    if err > 1e-12:
        _fail("slope anchor", "-1/3 +- 1e-12", f"{value}")
    return f"slope {value:.15f}, diff {err:.2e}"


def check_turning_point(tol: float = DEFAULT_TOL) -> str:
    """The zero-weight log-ratio derivative vanishes at x = 1/2 and changes
    sign there, whenever the reduced interval is long enough."""
    rng = random.Random(5)
    count = 0
    worst = 0.0
    while count < 20:
        N = rng.randint(1, 30)
        s = rng.uniform(0.02, 0.98)
        if N <= 2.0 * s or reduced_sup(N, s) <= 0.5 + 1e-9:
            continue
        count += 1
        A = reduced_sup(N, s)
        d_mid = log_jl_ratio_d1(reduced_from_x(N, s, 0.0, 0.5))
        worst = max(worst, abs(d_mid))
        if abs(d_mid) > 1e-10:
            _fail("turning point", "|d1(1/2)| <= 1e-10", f"{d_mid:.3e} at N={N}, s={s}")
        below = rng.uniform(0.05, 0.45)
        above = 0.5 + (A - 0.5) * rng.uniform(0.1, 0.9)
        d_below = log_jl_ratio_d1(reduced_from_x(N, s, 0.0, below))
        d_above = log_jl_ratio_d1(reduced_from_x(N, s, 0.0, above))
        if not d_below > 0.0:
            _fail("turning point sign", "d1 > 0 below 1/2", f"{d_below:.3e} at x={below}")
        if not d_above < 0.0:
            _fail("turning point sign", "d1 < 0 above 1/2", f"{d_above:.3e} at x={above}")
    return f"worst |d1(1/2)| = {worst:.2e} over 20 samples"


def check_concavity(tol: float = DEFAULT_TOL) -> str:
    """Strict log-concavity of the ratio for nonpositive weights."""
    rng = random.Random(6)
    trials = 0
    while trials < 50:
        N = rng.randint(1, 30)
        s = rng.uniform(0.02, 0.98)
        if N <= 2.0 * s:
            continue
        ell = rng.uniform(-2.0 * s + 1e-3, 0.0)
        trials += 1
        A = reduced_sup(N, s)
        for i in range(1, 101):
            x = A * i / 101.0
            d2 = log_jl_ratio_d2(reduced_from_x(N, s, ell, x))
            if not d2 < 0.0:
                _fail(
                    "concavity",
                    "d2 < 0 on the open interval",
                    f"{d2:.3e} at N={N}, s={s}, l={ell}, x={x}",
                )
    return "d2 < 0 at 100 interior points for 50 random (N, s, l <= 0)"


def check_subcritical_regimes(tol: float = DEFAULT_TOL) -> str:
    """Dimensions with no finite crossing: empty critical set and
    subcritical classification along a 100-point exponent grid."""
    cases = [(1, s) for s in (0.1, 0.3, 0.45)]
    cases += [(N, s) for N in range(2, 8) for s in (0.1, 0.5, 0.9)]
    for N, s in cases:
        cs = critical_set(N, s, 0.0, tol)
        if not cs.is_empty:
            _fail(
                "subcritical regime",
                f"empty critical set at N={N}, s={s}",
                f"{len(cs.crossings)} crossings",
            )
        for k in range(100):
            p = 1.0 + 10.0 ** (-2.0 + 6.0 * k / 99.0)
            label = classify(ProblemParams(N, s, 0.0, p), tol).label
            if label is not Label.SUBCRITICAL:
                _fail(
                    "subcritical regime",
                    f"subcritical at N={N}, s={s}, p={p}",
                    label.value,
                )
    return "21 regimes, empty sets and all-subcritical 100-point grids"


def check_order_threshold_trichotomy(tol: float = DEFAULT_TOL) -> str:
    """Existence of the order threshold for N = 8, 9 and the exponent
    trichotomy around the finite crossing."""
    details = []
    for N in (8, 9):
        s_n = order_threshold(N)
        if not (0.0 < s_n < 1.0):
            _fail("order threshold", "inside (0, 1)", f"{s_n} at N={N}")
        p_fin = joseph_lundgren_exponent(N, 0.8 * s_n, 0.0)
        if math.isinf(p_fin):
            _fail("order threshold", f"finite exponent at s=0.8*s_{N}", "infinite")
        p_inf = joseph_lundgren_exponent(N, s_n + 0.5 * (1.0 - s_n), 0.0)
        if not math.isinf(p_inf):
            _fail("order threshold", f"infinite exponent above s_{N}", f"{p_inf}")
        at = classify(ProblemParams(N, 0.8 * s_n, 0.0, p_fin), tol)
        if at.label is not Label.CRITICAL:
            _fail("order threshold", "critical at the crossing", at.label.value)
        below = classify(ProblemParams(N, 0.8 * s_n, 0.0, p_fin * (1.0 - 1e-3)), tol)
        above = classify(ProblemParams(N, 0.8 * s_n, 0.0, p_fin * (1.0 + 1e-3)), tol)
        if below.label is not Label.SUBCRITICAL or above.label is not Label.SUPERCRITICAL:
            _fail(
                "order threshold trichotomy",
                "subcritical below / supercritical above the crossing",
                f"{below.label.value} / {above.label.value}",
            )
        details.append(f"s_{N}={s_n:.12f}, crossing p={p_fin:.6f}")
    return "; ".join(details)


def check_classical_recovery(tol: float = DEFAULT_TOL) -> str:
    """Order-one limits: crossing matches the classical exponent, and the
    spectral multiplier collapses to (N-2)^2/4 - alpha^2."""
    for N in (11, 12, 15):
        p_jl = joseph_lundgren_exponent(N, 1.0 - 1e-7, 0.0)
        p_cl = classical_jl_exponent(N)
        rel = abs(p_jl - p_cl) / p_cl
        if rel > 1e-4:
            _fail("classical recovery", "rel diff <= 1e-4", f"{rel:.3e} at N={N}")
    rng = random.Random(9)
    s = 1.0 - 1e-9
    worst = 0.0
    for _ in range(200):
        N = rng.randint(3, 30)
        bound = 0.5 * (N - 2.0 * s)
        alpha = rng.uniform(-0.9, 0.9) * bound
        lam = spectral_lambda(alpha, N, s)
        closed = 0.25 * (N - 2.0) ** 2 - alpha * alpha
        rel = abs(lam - closed) / abs(closed)
        worst = max(worst, rel)
        if rel > 1e-6:
            _fail(
                "classical multiplier",
                "rel diff <= 1e-6",
                f"{rel:.3e} at N={N}, alpha={alpha}",
            )
    return f"three crossings within 1e-4; multiplier worst rel {worst:.2e}"


def check_positive_weight_window(tol: float = DEFAULT_TOL) -> str:
    """The positive-weight supercritical window at N = 8, small order:
    sub/super/sub pattern with two coincident crossing pairs (four
    exponents counted with multiplicity), and emptiness at large weight."""
    start = time.perf_counter()
    N, s = 8, 0.05
    wt = weight_thresholds(N, s)
    if not (0.0 < wt.ell1 < wt.ell2):
        _fail("weight thresholds", "0 < ell1 < ell2", f"{wt.ell1}, {wt.ell2}")
    ell_mid = 0.5 * (wt.ell1 + wt.ell2)
    cs = critical_set(N, s, ell_mid, tol)
    labels = [lab.value for lab in cs.intervals]
    if labels != ["subcritical", "supercritical", "subcritical"]:
        _fail("window pattern", "sub/super/sub", str(labels))
    paired = sum(2 if not c.tangential else c.multiplicity for c in cs.crossings)
    if paired != 4:
        _fail(
            "window multiplicity",
            "four exponents counted with multiplicity (two coincident pairs)",
            f"{paired} from {len(cs.crossings)} crossings",
        )
    for c in cs.crossings:
        cls = classify(ProblemParams(N, s, ell_mid, c.p), tol)
        if cls.label is not Label.CRITICAL:
            _fail("window crossing", "critical at each located crossing", cls.label.value)
    cs_high = critical_set(N, s, wt.ell3, tol)
    if not cs_high.is_empty:
        _fail(
            "window emptiness",
            "empty critical set at the all-subcritical weight",
            f"{len(cs_high.crossings)} crossings",
        )
    elapsed = time.perf_counter() - start
    if elapsed >= 5.0:
        _fail("window runtime", "< 5 s", f"{elapsed:.2f} s")
    return (
        f"window ({wt.ell1:.6g}, {wt.ell2:.6g}), crossings at "
        f"p={[round(c.p, 4) for c in cs.crossings]} in {elapsed:.2f} s"
    )


def check_negative_weight_finiteness(tol: float = DEFAULT_TOL) -> str:
    """Slightly negative weights below the order threshold keep the
    crossing finite (the order threshold only moves up)."""
    for N in (8, 9):
        s_n = order_threshold(N)
        s = 0.8 * s_n
        lo = max(-2.0 * s, 0.25 * (N - 10.0))
        ell = 0.25 * lo  # small in magnitude, inside (lo, 0)
        p = joseph_lundgren_exponent(N, s, ell)
        if math.isinf(p):
            _fail(
                "negative weight finiteness",
                f"finite exponent at N={N}, s={s:.4f}, l={ell:.4f}",
                "infinite",
            )
        cls = classify(ProblemParams(N, s, ell, p), tol)
        if cls.label is not Label.CRITICAL:
            _fail("negative weight crossing", "critical at the crossing", cls.label.value)
    return "finite crossings for N=8,9 below the order threshold with l < 0"


def check_amplitude_identity(tol: float = DEFAULT_TOL) -> str:
    """Two closed forms of the singular amplitude agree to 1e-10 on 1e3
    random points; the Hardy constant at (3, 1/2) is 2/pi."""
    rng = random.Random(12)
    worst = 0.0
    for _ in range(1000):
        params = _sample_point(rng)
        res = amplitude_identity_residual(params)
        worst = max(worst, res)
        if res > 1e-10:
            _fail("amplitude identity", "residual <= 1e-10", f"{res:.3e} at {params}")
    hc = hardy_constant(3, 0.5)
    err = abs(hc - 2.0 / math.pi)
    if err > 1e-12:
        _fail("hardy constant", "2/pi +- 1e-12", f"{hc}")
    return f"worst residual {worst:.2e}; hardy diff {err:.2e}"


def check_truncation_profile(tol: float = DEFAULT_TOL) -> str:
    """Fifty random truncation profiles satisfy the full property list in
    under two seconds."""
    rng = random.Random(13)
    start = time.perf_counter()
    for _ in range(50):
        mu = rng.uniform(0.05, 0.95)
        p = rng.uniform(1.05, 10.0)
        m0 = 10.0 ** rng.uniform(-1.0, 1.0)
        profile = build_truncation(mu, p, m0)
        report = verify_truncation(profile)
        if not report.passed:
            bad = report.first_violation
            _fail(
                "truncation profile",
                f"all properties at mu={mu:.4f}, p={p:.4f}, M0={m0:.4f}",
                f"{bad.name} worst={bad.worst:.3e} at u={bad.location}",
            )
    elapsed = time.perf_counter() - start
    if elapsed >= 2.0:
        _fail("truncation runtime", "< 2 s", f"{elapsed:.2f} s")
    return f"50 random profiles verified in {elapsed:.2f} s"


def check_scan_determinism(tol: float = DEFAULT_TOL) -> str:
    """Two identical 200 x 200 scans render byte-identical output."""
    spec = ScanSpec(
        N=8,
        axes=(Axis("s", 0.05, 0.95, 200), Axis("p", 1.5, 50.0, 200)),
        fixed={"l": 0.0},
        fmt="csv",
        tol=tol,
    )
    first = render_csv(run_scan(spec))
    second = render_csv(run_scan(spec))
    if first != second:
        _fail("scan determinism", "byte-identical renders", "renders differ")
    return f"two 200x200 scans agree ({len(first)} bytes)"


CHECKS: Tuple[Tuple[str, Callable[[float], str]], ...] = (
    ("equivalence-identity", check_equivalence_identity),
    ("endpoint-closed-form", check_endpoint_closed_form),
    ("derivative-anchors", check_derivative_anchors),
    ("slope-anchor", check_slope_anchor),
    ("turning-point", check_turning_point),
    ("concavity", check_concavity),
    ("subcritical-regimes", check_subcritical_regimes),
    ("order-threshold-trichotomy", check_order_threshold_trichotomy),
    ("classical-recovery", check_classical_recovery),
    ("positive-weight-window", check_positive_weight_window),
    ("negative-weight-finiteness", check_negative_weight_finiteness),
    ("amplitude-identity", check_amplitude_identity),
    ("truncation-profile", check_truncation_profile),
    ("scan-determinism", check_scan_determinism),
)


def run_check(name: str, fn: Callable[[float], str], tol: float) -> CheckResult:
    start = time.perf_counter()
    try:
        detail = fn(tol)
        passed = True
    except CheckFailure as exc:
        detail = str(exc)
        passed = False
    elapsed = time.perf_counter() - start
    return CheckResult(name=name, passed=passed, detail=detail, elapsed=elapsed)


def run_all(tol: float = DEFAULT_TOL) -> List[CheckResult]:
    return [run_check(name, fn, tol) for name, fn in CHECKS]
