"""Bending an unbounded supersolution flat: the truncation profile.

Below the cap the profile is the identity; past the joint point it
follows the closed-form solution of  f'(u) = mu^(p-1) f(u)^p u^(-p),
which stays bounded.  The construction keeps C^1 regularity and the
pointwise differential inequality that supersolution arguments need.
Saves truncation_profile.png next to this script when matplotlib is
available.
"""

import os

import numpy as np

from fracjl import ProblemParams, build_singular, build_truncation, verify_truncation

# cap taken from a genuinely supercritical point so the numbers mean something
params = ProblemParams(12, 0.9, 0.0, 6.0)
cap = build_singular(params)(1.0)
mu, p = 0.5, params.p

profile = build_truncation(mu, p, cap)
print(f"cap M0 = {cap:.12f} (singular solution at radius 1)")
print(f"mu = {mu}, p = {p}")
print(f"joint point zeta  = {profile.zeta:.12f}  (inside (M0, M0+1))")
print(f"value at zeta     = {profile.psi_at_zeta:.12f} (< zeta)")
print(f"bounded limit     = {profile.tail_limit():.12f}")

left = profile.cutoff.value(profile.zeta)
right = mu ** (p - 1.0) * profile.psi_at_zeta**p * profile.zeta ** (-p)
print(f"one-sided slopes at zeta: {left:.12f} vs {right:.12f} (C^1 match)")

report = verify_truncation(profile)
print()
print("property report:")
for check in report.checks:
    print(f"  {'ok ' if check.passed else 'BAD'} {check.name:28s} worst deviation {check.worst:.2e}")
assert report.passed

print()
print("relative slack in  slope(u) u^p >= mu^(p-1) value(u)^p:")
c = mu ** (p - 1.0)
for u in (0.25 * cap, cap, profile.zeta, 2.0 * profile.zeta, 20.0 * profile.zeta):
    lhs = profile.slope(u) * u**p
    rhs = c * profile.value(u) ** p
    side = "strict" if u < profile.zeta else "equality"
    print(f"  u = {u:10.4f}: {(lhs - rhs) / max(lhs, rhs):+.3e}  ({side})")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not available; skipping the figure")
else:
    u = np.linspace(0.0, profile.zeta + 4.0, 800)
    values = [profile.value(float(t)) for t in u]
    slopes = [profile.slope(float(t)) for t in u]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    ax1.plot(u, values, label="profile")
    ax1.plot(u, u, "--", color="gray", label="identity")
    ax1.axvline(profile.zeta, color="tab:red", lw=0.8, label="joint point")
    ax1.axhline(profile.tail_limit(), color="tab:green", lw=0.8, label="bounded limit")
    ax1.set_xlabel("u"), ax1.set_ylabel("profile(u)"), ax1.legend()
    ax2.plot(u, slopes)
    ax2.axvline(profile.zeta, color="tab:red", lw=0.8)
    ax2.set_xlabel("u"), ax2.set_ylabel("slope"), ax2.set_ylim(0, 1.05)
    fig.tight_layout()
    out = os.path.join(os.path.dirname(os.path.abspath(__file__)), "truncation_profile.png")
    fig.savefig(out, dpi=120)
    print(f"figure saved to {out}")
