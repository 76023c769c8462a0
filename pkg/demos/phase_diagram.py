"""Phase diagrams in the (order, exponent) and (weight, exponent) planes.

Runs two grid scans at N = 8, writes them as CSV next to this script,
and renders PNG pictures when matplotlib is available.  The first plane
shows the single subcritical/supercritical boundary below the order
threshold; the second shows the bounded supercritical lobe that positive
weights carve out at small orders.
"""

import os

import numpy as np

from fracjl import Axis, ScanSpec, render_csv, run_scan, weight_thresholds
from fracjl.scan import write_atomic

HERE = os.path.dirname(os.path.abspath(__file__))
LABEL_CODE = {"subcritical": 0, "critical": 1, "supercritical": 2, "out-of-domain": -1}


def scan_to_grid(diagram):
    a0, a1 = diagram.axes
    grid = np.empty((a0.count, a1.count))
    for idx, cell in enumerate(diagram.cells):
        grid[idx // a1.count, idx % a1.count] = LABEL_CODE[cell.label]
    return grid


# --- (s, p) plane at zero weight -------------------------------------------
spec_sp = ScanSpec(
    N=8,
    axes=(Axis("s", 0.05, 0.95, 121), Axis("p", 1.5, 40.0, 121)),
    fixed={"l": 0.0},
    fmt="csv",
)
diagram_sp = run_scan(spec_sp)
write_atomic(os.path.join(HERE, "phase_s_p.csv"), render_csv(diagram_sp))
annotations = {a.name: a.value for a in diagram_sp.annotations}
print("scan 1: (s, p) at N=8, l=0 ->", os.path.join(HERE, "phase_s_p.csv"))
print("  order_threshold =", annotations["order_threshold"])
super_cells = sum(1 for c in diagram_sp.cells if c.label == "supercritical")
print(f"  supercritical cells: {super_cells} of {len(diagram_sp.cells)}")

# --- (l, p) plane at small order --------------------------------------------
wt = weight_thresholds(8, 0.05)
spec_lp = ScanSpec(
    N=8,
    axes=(Axis("l", 0.0, 3.0 * wt.ell2, 121), Axis("p", 1.1, 25.0, 121)),
    fixed={"s": 0.05},
    fmt="csv",
)
diagram_lp = run_scan(spec_lp)
write_atomic(os.path.join(HERE, "phase_l_p.csv"), render_csv(diagram_lp))
print("scan 2: (l, p) at N=8, s=0.05 ->", os.path.join(HERE, "phase_l_p.csv"))
print(f"  weight window: ({wt.ell1:.6g}, {wt.ell2:.6g}), closes at {wt.ell3:.6g}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.colors import ListedColormap
except ImportError:
    print("matplotlib not available; CSV files written, no figures")
else:
    cmap = ListedColormap(["#4878cf", "#111111", "#d65f5f"])
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4.5))

    g1 = scan_to_grid(diagram_sp)
    a0, a1 = diagram_sp.axes
    ax1.imshow(
        g1.T, origin="lower", aspect="auto", cmap=cmap, vmin=0, vmax=2,
        extent=[a0.lo, a0.hi, a1.lo, a1.hi],
    )
    ax1.axvline(annotations["order_threshold"], color="white", ls="--", lw=1)
    ax1.set_xlabel("order s"), ax1.set_ylabel("exponent p")
    ax1.set_title("N=8, l=0 (red = supercritical)")

    g2 = scan_to_grid(diagram_lp)
    b0, b1 = diagram_lp.axes
    ax2.imshow(
        g2.T, origin="lower", aspect="auto", cmap=cmap, vmin=0, vmax=2,
        extent=[b0.lo, b0.hi, b1.lo, b1.hi],
    )
    for threshold in (wt.ell1, wt.ell2, wt.ell3):
        ax2.axvline(threshold, color="white", ls="--", lw=1)
    ax2.set_xlabel("weight l"), ax2.set_ylabel("exponent p")
    ax2.set_title("N=8, s=0.05 (bounded supercritical lobe)")

    fig.tight_layout()
    out = os.path.join(HERE, "phase_diagram.png")
    fig.savefig(out, dpi=120)
    print(f"figure saved to {out}")
