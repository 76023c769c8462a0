"""Critical-exponent structure in the three qualitative regimes.

For nonpositive weights the criticality margin is log-concave in the
reduced coordinate, so there is at most one crossing.  Positive weights
break concavity near the right endpoint: for N >= 8 and small orders a
bounded supercritical window opens between two crossings, and large
weights close it again.
"""

from fracjl import critical_set, weight_thresholds

BAR = "-" * 64


def show(N, s, ell, title):
    cs = critical_set(N, s, ell)
    print(BAR)
    print(f"{title}  (N={N}, s={s}, l={ell:.6g})")
    print(f"p_sobolev = {cs.p_sobolev:.6f}")
    if cs.is_empty:
        print("no critical exponent; every p > 1 is subcritical")
    else:
        for i, c in enumerate(cs.crossings, 1):
            kind = "tangential" if c.tangential else "transversal"
            print(f"  crossing {i}: p = {c.p:12.6f}  (x = {c.x:.9f}, {kind})")
        print("  intervals:", " | ".join(l.value for l in cs.intervals))


# regime 1: no crossing at all
show(5, 0.5, 0.0, "low dimension")

# regime 2: the single crossing of the nonpositive-weight theory
show(11, 0.6, 0.0, "unique crossing")
show(9, 0.3, -0.2, "unique crossing, negative weight")

# regime 3: the positive-weight window
N, s = 8, 0.05
wt = weight_thresholds(N, s)
print(BAR)
print(f"weight thresholds at N={N}, s={s}:")
print(f"  ell1 = {wt.ell1:.8g}   (endpoint threshold)")
print(f"  ell2 = {wt.ell2:.8g}   (largest pointwise bound)")
print(f"  ell3 = {wt.ell3:.8g}   (all-subcritical beyond here)")

show(N, s, 0.5 * wt.ell1, "below the window: one pair collapses to the endpoint")
show(N, s, 0.5 * (wt.ell1 + wt.ell2), "inside the window: bounded supercritical band")
show(N, s, wt.ell3, "at the closing weight: window gone")
