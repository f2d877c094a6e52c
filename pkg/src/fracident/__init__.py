"""Structural identifiability of the two-CPE fractional-order circuit model
under the Grünwald-Letnikov approximation."""

from .errors import (
    ConfigurationError,
    DegenerateStructureError,
    DomainError,
    FracIdentError,
    InputFormatError,
    ParameterError,
    RootFindingError,
)
from .gl_model import (
    GLSeries,
    IdentCoeffs,
    ModelParams,
    MonicTF,
    build_gl_series,
    example_params,
    expand_monic_tf,
    fit_sampling_period,
    gl_binomial_series,
    head_coeffs,
    model_tf,
)
from .identifiability import (
    AnalysisConfig,
    CandidateSolution,
    IdentifiabilityReport,
    Status,
    Verdict,
    analyze,
    build_octic,
    decide_verdict,
    exclusion_interval,
    filter_candidates,
    legacy_residuals,
    octic_from_heads,
    recover_alpha1,
    recover_parameters,
    verify_candidate,
)
from .numerics import DEFAULT_CONTEXT, PrecisionContext, RealPoly, classify_real_roots, find_roots

__version__ = "0.1.0"
