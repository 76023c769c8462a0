"""Walking the Joseph-Lundgren trichotomy at a handful of points.

The classifier compares p * lambda(beta) against the Hardy constant; in
reduced coordinates that is a smooth ratio of gamma functions against a
fixed threshold.  This script classifies a few landmark points and then
walks an exponent grid through a crossing to show the label flip.
"""

import math

from fracjl import (
    ProblemParams,
    classify,
    hardy_constant,
    joseph_lundgren_exponent,
    sobolev_exponent,
)

print("=== fixed points ===")
for N, s, ell, p in [
    (5, 0.5, 0.0, 3.0),      # low dimension: everything subcritical
    (3, 0.5, 0.0, 1.5),      # below the Sobolev exponent
    (12, 0.9, 0.0, 50.0),    # high dimension, large exponent
    (8, 0.2, 0.0, 5.0),      # just below the N=8 order threshold
    (8, 0.2, 0.0, 12.0),
]:
    result = classify(ProblemParams(N, s, ell, p))
    margin = "None" if result.margin is None else f"{result.margin:+.3e}"
    print(f"N={N:2d} s={s:.2f} l={ell:+.1f} p={p:6.2f} -> {result.label.value:13s} margin={margin}")

print()
print("=== crossing walk at N=8, s=0.2, l=0 ===")
N, s, ell = 8, 0.2, 0.0
p_s = sobolev_exponent(N, s, ell)
p_jl = joseph_lundgren_exponent(N, s, ell)
print(f"p_sobolev = {p_s:.6f}")
print(f"p_jl      = {p_jl:.6f}")
print(f"hardy constant = {hardy_constant(N, s):.6f}")
print()
for factor in (0.5, 0.9, 0.99, 1.0, 1.01, 1.1, 2.0):
    p = p_jl * factor
    result = classify(ProblemParams(N, s, ell, p))
    print(f"p = {p:9.5f} ({factor:5.2f} * p_jl) -> {result.label.value}")

print()
print("Above the order threshold the crossing escapes to infinity:")
p_inf = joseph_lundgren_exponent(8, 0.6, 0.0)
print(f"joseph_lundgren_exponent(8, 0.6, 0) = {p_inf}")
assert math.isinf(p_inf)
