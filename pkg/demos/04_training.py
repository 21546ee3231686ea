"""Fitting a neuron to a chaotic series fed with flat input.

Two targets: a teacher neuron (exactly recoverable) and a rescaled logistic
orbit. On flat input only w + b is identifiable, so that is what we compare.
"""
# %%
from pathlib import Path

import numpy as np

from chaotic_sigmoid import (
    ChaoticMap,
    DriverConfig,
    SpatioTemporalNeuron,
    TrainConfig,
    generate,
    logistic_target,
    lyapunov_exponent,
    teacher_target,
    train,
)

HERE = Path(__file__).parent
N = 2000
cfg = DriverConfig(ChaoticMap.logistic(4.0), alpha0=0.1, phi_min=-2.7, phi_max=3.5)

# %%
teacher = SpatioTemporalNeuron([1.3], -0.2, cfg)
target = teacher_target(teacher, 1.0, N)
student, report = train(SpatioTemporalNeuron([0.0], 0.0, cfg), np.ones(N), target)
output = generate(student, 1.0, N)
m = cfg.map
print(f"teacher: epochs={report.epochs_run} mse={report.final_mse:.2e}")
print(f"  w+b = {student.weights[0] + student.bias:.6f} (teacher 1.1)")
print(f"  lambda target={lyapunov_exponent(target, m):.4f} output={lyapunov_exponent(output, m):.4f}")

# %% [markdown]
# The rescaled orbit is built from the same map state sequence that drives
# phi (burn-in 1001 lines it up with the driver's first emission), so a
# single neuron can follow it closely but not exactly.

# %%
orbit_target = logistic_target(m, 0.1, 1001, N)
fit, rep2 = train(SpatioTemporalNeuron([0.0], 0.0, cfg), np.ones(N), orbit_target,
                  TrainConfig(learning_rate=0.5, max_epochs=5000))
fit_out = generate(fit, 1.0, N)
print(f"orbit target: mse={rep2.final_mse:.3e} after {rep2.epochs_run} epochs, "
      f"w+b={fit.weights[0] + fit.bias:.4f}")
print(f"  lambda target={lyapunov_exponent(orbit_target, m):.4f} "
      f"output={lyapunov_exponent(fit_out, m):.4f}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, (a, b) = plt.subplots(2, 1, figsize=(10, 6), sharex=True)
    a.plot(target[:150], label="teacher target")
    a.plot(output[:150], "--", label="student")
    a.legend()
    b.plot(orbit_target[:150], label="rescaled orbit")
    b.plot(fit_out[:150], "--", label="fitted neuron")
    b.legend()
    b.set_xlabel("t")
    fig.tight_layout()
    fig.savefig(HERE / "04_training.png", dpi=120)
    print("saved", HERE / "04_training.png")
