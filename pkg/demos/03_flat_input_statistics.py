"""A single neuron on flat input: output spread and autocorrelation.

With w = 1, b = 0 and input 1.0 every bit of variation in the output comes
from phi(t).
"""
# %%
from pathlib import Path

import numpy as np

from chaotic_sigmoid import (
    ChaoticMap,
    DriverConfig,
    SpatioTemporalNeuron,
    autocorrelation,
    generate,
    sigma_sweep,
    std_dev,
)

HERE = Path(__file__).parent

# %%
for lo, hi in ((0.9, 1.1), (0.8, 1.2)):
    cfg = DriverConfig(ChaoticMap.logistic(4.0), phi_min=lo, phi_max=hi)
    out = generate(SpatioTemporalNeuron([1.0], 0.0, cfg), 1.0, 100_000)
    print(f"phi in ({lo}, {hi}): mean={out.mean():.4f} sigma={std_dev(out):.4f}")

# %% [markdown]
# Sigma grows linearly with the width of the phi range.

# %%
deltas = [round(0.1 * k, 1) for k in range(1, 11)]
rows = sigma_sweep(deltas)
d = np.array([r.delta_phi for r in rows])
s = np.array([r.sigma for r in rows])
slope = d @ s / (d @ d)
print("delta  sigma   slope*delta")
for di, si in zip(d, s):
    print(f"{di:4.1f}  {si:.4f}  {slope * di:.4f}")

# %%
cfg = DriverConfig(ChaoticMap.logistic(4.0))
out = generate(SpatioTemporalNeuron([1.0], 0.0, cfg), 1.0, 100_000)
rho = autocorrelation(out, 50)
print("max |rho(k)|, k=1..50:", np.abs(rho[1:]).max().round(4))

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, axes = plt.subplots(1, 3, figsize=(15, 4))
    axes[0].plot(out[:300], lw=0.8)
    axes[0].set(title="output, phi in (0.9, 1.1)", xlabel="t")
    axes[1].plot(d, s, "o-")
    axes[1].set(title="sigma vs phi range", xlabel="phi_max - phi_min")
    axes[2].stem(range(len(rho)), rho)
    axes[2].set(title="autocorrelation", xlabel="lag")
    fig.tight_layout()
    fig.savefig(HERE / "03_flat_input_statistics.png", dpi=120)
    print("saved", HERE / "03_flat_input_statistics.png")
