"""The explicit singular solution and its stability inequality.

amplitude * r^(-decay) solves the weighted problem exactly; the
amplitude has two closed forms (a ratio of Riesz-kernel constants and
the spectral multiplier) whose agreement is checked here, and stability
holds exactly on the critical-or-supercritical side of the trichotomy.
"""

import numpy as np

from fracjl import (
    ProblemParams,
    amplitude_identity_residual,
    build_singular,
    hardy_constant,
    integrability_flags,
    joseph_lundgren_exponent,
    scaled_profile,
    singular_stability,
)

params = ProblemParams(3, 0.5, 0.0, 5.0)
sol = build_singular(params)
print(f"N={params.N}, s={params.s}, l={params.ell}, p={params.p}")
print(f"decay     = {sol.decay}")
print(f"amplitude = {sol.amplitude:.15f}")
print(f"u(1)      = {sol(1.0):.15f}")
print(f"two-route amplitude residual = {amplitude_identity_residual(params):.2e}")
print(f"flags: {integrability_flags(params)}")

print()
print("=== scaling family: the singular profile is the fixed point ===")
rng = np.random.default_rng(42)
worst = 0.0
for alpha in (0.3, 1.0, 4.7):
    mapped = scaled_profile(sol, alpha, sol.decay)
    for r in rng.uniform(0.2, 5.0, size=5):
        worst = max(worst, abs(mapped(r) - sol(r)) / sol(r))
print(f"worst relative deviation over the family: {worst:.2e}")

print()
print("=== stability margin along p at N=12, s=0.7, l=0 ===")
N, s, ell = 12, 0.7, 0.0
p_jl = joseph_lundgren_exponent(N, s, ell)
lam0 = hardy_constant(N, s)
print(f"p_jl = {p_jl:.6f}, hardy constant = {lam0:.6f}")
probes = sorted(set(np.round(np.linspace(0.6, 1.8, 7) * p_jl, 4)) | {p_jl})
for p in probes:
    result = singular_stability(ProblemParams(N, s, ell, float(p)))
    print(
        f"p = {p:9.4f}: stable={str(result.stable):5s} "
        f"margin={result.margin:+.4e} [{result.classification.label.value}]"
    )
print("(the margin changes sign exactly at p_jl)")
