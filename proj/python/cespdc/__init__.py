"""Correlation engine for sub-threshold cavity-enhanced SPDC."""

from ._core import (
    BogoliubovCoeffs,
    CavityParams,
    ConvergenceError,
    CorrelationComb,
    GainSetting,
    ModelComparison,
    MomentState,
    SingleModeParams,
    ThresholdError,
    VerificationCheck,
    VerificationReport,
    coeffs,
    compare_models,
    from_cavity,
    g2_comb,
    g2_envelope_normalized,
    g2_multi_finite_n,
    g2_single,
    gamma_fn,
    make_cavity,
    make_gain,
    make_gain_fraction,
    render_lorentzian,
    run_verification,
    squeezing_spectrum,
    steady_state,
    threshold,
    upsilon_fn,
)

__version__ = "0.1.0"

__all__ = [
    "BogoliubovCoeffs",
    "CavityParams",
    "ConvergenceError",
    "CorrelationComb",
    "GainSetting",
    "ModelComparison",
    "MomentState",
    "SingleModeParams",
    "ThresholdError",
    "VerificationCheck",
    "VerificationReport",
    "coeffs",
    "compare_models",
    "from_cavity",
    "g2_comb",
    "g2_envelope_normalized",
    "g2_multi_finite_n",
    "g2_single",
    "gamma_fn",
    "make_cavity",
    "make_gain",
    "make_gain_fraction",
    "render_lorentzian",
    "run_verification",
    "squeezing_spectrum",
    "steady_state",
    "threshold",
    "upsilon_fn",
]
