"""Chaotic drivers: orbits, attractor bounds and bifurcation diagrams.

Run with ``python demos/01_chaotic_maps.py``; figures are written next to
this file when matplotlib is available.
"""
# %%
from pathlib import Path

import numpy as np

from chaotic_sigmoid import ChaoticMap, bifurcation_scan, estimate_alpha_bounds, iterate_map
from chaotic_sigmoid import lyapunov_exponent

HERE = Path(__file__).parent

# %% [markdown]
# The logistic map at r = 4 fills the whole unit interval. Its Lyapunov
# exponent is ln 2; the estimate below averages ln|f'(x)| along the orbit.

# %%
m = ChaoticMap.logistic(4.0)
orbit = iterate_map(m, x0=0.1, burn_in=1000, n=100_000)
print("first iterates:", np.round(orbit.samples[:8], 4))
print(f"lambda = {lyapunov_exponent(orbit.samples, m):.4f}  (ln 2 = {np.log(2):.4f})")

# %% [markdown]
# Attractor bounds feed the phi normalisation. For the logistic map the
# chaotic band runs from f(r/4) up to r/4.

# %%
print("\nlogistic map bounds")
for r in (3.5, 3.6, 3.7, 3.8, 3.9, 4.0):
    b = estimate_alpha_bounds(ChaoticMap.logistic(r))
    print(f"  r={r:.1f}  [{b.alpha_min:.3f}, {b.alpha_max:.3f}]   analytic top r/4={r / 4:.3f}")

# %% [markdown]
# The cubic map is odd-symmetric. Below r ~ 2.6 an orbit stays in the basin
# of its seed's sign, so the seed matters.

# %%
print("\ncubic map bounds by seed")
for r in (2.3, 2.5, 2.7, 2.9):
    cells = []
    for x0 in (0.9, -0.9):
        b = estimate_alpha_bounds(ChaoticMap.cubic(r), x0=x0)
        cells.append(f"x0={x0:+.1f}: [{b.alpha_min:+.3f}, {b.alpha_max:+.3f}]")
    print(f"  r={r:.1f}  " + "   ".join(cells))

# %%
logistic_scan = bifurcation_scan("logistic", 2.5, 4.0, 600, samples_per_r=200)
cubic_scan = bifurcation_scan("cubic", 2.3, 3.0, 300, samples_per_r=200)

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, axes = plt.subplots(1, 3, figsize=(15, 4))
    axes[0].plot(orbit.samples[:100], lw=0.8)
    axes[0].set(title="logistic orbit, r = 4", xlabel="t", ylabel="alpha(t)")
    axes[1].plot(logistic_scan.r, logistic_scan.x, ",k", alpha=0.3)
    axes[1].set(title="logistic bifurcation", xlabel="r")
    axes[2].plot(cubic_scan.r, cubic_scan.x, ",k", alpha=0.3)
    axes[2].set(title="cubic bifurcation (x0 = 0.1)", xlabel="r")
    fig.tight_layout()
    fig.savefig(HERE / "01_chaotic_maps.png", dpi=120)
    print("\nsaved", HERE / "01_chaotic_maps.png")
