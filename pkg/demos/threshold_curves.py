"""Threshold curves of the phase diagram.

The decisive quantity at infinite exponent is the endpoint margin
H(s, N, l): positive means every exponent is subcritical, negative means
a finite crossing exists.  This script traces H in the order s for
several dimensions, extracts the thresholds, and tabulates the minimal
supercritical dimension over a grid of (s, l).
"""

import numpy as np

from fracjl import (
    margin_at_infinity,
    min_supercritical_dimension,
    order_threshold,
    order_thresholds_negative_weight,
    threshold_report,
    turning_order,
)

print("=== zero-weight order thresholds ===")
for N in (8, 9):
    s_n = order_threshold(N)
    t_n = turning_order(N)
    print(f"N={N}: finite crossing for s < {s_n:.12f}; margin minimum at s = {t_n:.12f}")

print()
print("=== endpoint margin H(s, N, 0) along s ===")
ss = np.linspace(0.05, 0.95, 10)
header = "s:      " + "  ".join(f"{s:7.3f}" for s in ss)
print(header)
for N in (7, 8, 9, 10, 11):
    row = []
    for s in ss:
        row.append(f"{margin_at_infinity(float(s), N, 0.0):+7.4f}")
    print(f"N={N:2d}:   " + "  ".join(row))
print("(sign change along a row = the order threshold of that dimension)")

print()
print("=== negative-weight order windows ===")
for N, ell in [(1, -0.5), (3, -0.5), (6, -0.8), (8, -0.3)]:
    lo, hi = order_thresholds_negative_weight(N, ell)
    tag = "single point" if lo == hi else "window"
    print(f"N={N}, l={ell:+.1f}: s in ({lo:.9f}, {hi:.9f})  [{tag}]")

print()
print("=== minimal supercritical dimension ===")
print("(grows super-exponentially as s -> 0 with positive weight)")
print("l\\s  " + "".join(f"{s:>14.2f}" for s in (0.1, 0.3, 0.5, 0.7, 0.9)))
for ell in (-0.5, 0.0, 0.5, 1.0, 2.0):
    cells = []
    for s in (0.1, 0.3, 0.5, 0.7, 0.9):
        if ell <= -2.0 * s:
            cells.append(f"{'-':>14}")
            continue
        cells.append(f"{min_supercritical_dimension(s, ell):>14,d}")
    print(f"{ell:+.1f} " + "".join(cells))

print()
print("=== one-call report ===")
report = threshold_report(N=8, s=0.05, ell=0.0)
wt = report.weight_thresholds
print(f"order_threshold        = {report.order_threshold:.12f}")
print(f"turning_order          = {report.turning_order:.12f}")
print(f"weight thresholds      = {wt.ell1:.8g}, {wt.ell2:.8g}, {wt.ell3:.8g}")
print(f"min supercritical dim  = {report.min_supercritical_dim}")
