"""Sigmoid neurons whose steepness is driven by a chaotic map."""
from .activation import (
    DriverConfig,
    PhiBounds,
    TemporalAffine,
    TemporalDriver,
    activation,
    activation_derivative,
    driver_step,
    normalize_phi,
    to_affine,
)
from .chaos import (
    AttractorBounds,
    BifurcationTable,
    ChaoticMap,
    MapKind,
    Orbit,
    bifurcation_scan,
    estimate_alpha_bounds,
    iterate_map,
    lyapunov_exponent,
    map_derivative,
    map_step,
)
from .diagnostics import (
    DiagnosticsReport,
    SigmaSweepRow,
    autocorrelation,
    diagnose,
    sigma_sweep,
    std_dev,
)
from .errors import (
    ChaoticSigmoidError,
    DegenerateBoundsError,
    DiagnosticsError,
    DivergenceError,
    DomainError,
    ShapeError,
    SingularityError,
    ZeroVarianceError,
)
from .neuron import (
    SpatioTemporalNeuron,
    TrainConfig,
    TrainReport,
    forward,
    generate,
    logistic_target,
    mse_loss,
    teacher_target,
    train,
)

__version__ = "0.1.0"
