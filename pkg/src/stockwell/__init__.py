"""Discrete orthonormal Stockwell transform and window-adapted frames."""
from .adapted import (
    AdaptedCoefficients,
    FrameReport,
    FrameViolation,
    band_norms,
    dual_analysis,
    forward_adapted,
    frame_analysis,
    frame_symbol,
    inverse_adapted,
    synthesize_adapted,
    synthesize_adapted_basis,
)
from .dost import DostCoefficients, evaluate_basis, forward, forward_direct, inverse, synthesize_basis
from .dyadic import Band, BandIndex, BandPartition, band_of_frequency, beta, nu, partition
from .localization import ConcentrationReport, concentration, concentration_sweep
from .stransform import TimeFreqMatrix, redundant_gaussian, redundant_windowed
from .windows import (
    FrameBounds,
    NonFinite,
    Window,
    WindowError,
    ZeroOnSupport,
    boxcar,
    gaussian,
    multiplier,
    parse_window,
    validate,
    z_norm,
)

__version__ = "0.1.0"
