"""The time-varying sigmoid and the driver that sets its steepness."""
# %%
from pathlib import Path

import numpy as np

from chaotic_sigmoid import (
    AttractorBounds,
    ChaoticMap,
    DriverConfig,
    PhiBounds,
    TemporalDriver,
    activation,
    activation_derivative,
    to_affine,
)

HERE = Path(__file__).parent

# %% [markdown]
# The steepness phi scales the pre-activation. The derivative peaks at
# z = 0 with height phi / 4.

# %%
z = np.linspace(-6, 6, 241)
for phi in (1.0, 2.8):
    print(f"phi={phi}: S(0)={activation(0.0, phi)}, dS/dz(0)={activation_derivative(0.0, phi):.3f}")

# %% [markdown]
# phi(t) is a linear rescaling of the map state. The affine form
# phi0 + k alpha is the same line.

# %%
aff = to_affine(AttractorBounds(0.0, 1.0), PhiBounds(-2.7, 3.5))
print(f"phi0={aff.phi0}, k={aff.k:.3f}")

cfg = DriverConfig(ChaoticMap.logistic(4.0), alpha0=0.1, phi_min=-2.7, phi_max=3.5)
phi_t = TemporalDriver(cfg).phi_sequence(12)
print("phi(t):", np.round(phi_t, 3))

# %% [markdown]
# With a negative lower bound the curve flips orientation whenever phi(t) < 0.

# %%
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, (a, b) = plt.subplots(1, 2, figsize=(10, 4))
    for phi in (1.0, 2.8):
        a.plot(z, activation(z, phi), label=f"phi={phi}")
        a.plot(z, activation_derivative(z, phi), "--", label=f"dS/dz, phi={phi}")
    a.legend(fontsize=8)
    a.set(title="constant phi", xlabel="z")
    for phi in phi_t[:8]:
        b.plot(z, activation(z, phi), lw=0.8)
    b.set(title="instances along the driver", xlabel="z")
    fig.tight_layout()
    fig.savefig(HERE / "02_activation.png", dpi=120)
    print("saved", HERE / "02_activation.png")
