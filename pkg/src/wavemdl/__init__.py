"""MDL-optimal sparse wavelet representations for 1-D time series.

Public surface: the wavelet basis registry and periodized DWT, codelength
primitives, the optimal-sparsity selector with AIC/BIC baselines, the
time-series feature pipeline, dictionary-based anomaly detection, and
seeded synthetic generators.
"""
from .atypicality import (
    DetectionResult,
    DictionaryEntry,
    TypicalDictionary,
    atypical_codelength,
    build_dictionary,
    choose_tau,
    detect,
    merge_flagged_intervals,
    typical_codelength,
)
from .codelength import (
    CodelengthBreakdown,
    binary_entropy,
    index_cost_bound,
    log_star,
    parameter_cost,
    parameter_cost_rissanen,
    residual_cost,
)
from .dwt import (
    Band,
    CoefficientVector,
    Segment,
    forward_dwt,
    inverse_dwt,
    keep_largest,
    keep_smallest,
    magnitude_order,
)
from .errors import (
    DegenerateBaseline,
    DegenerateSignal,
    EmptyDictionary,
    EmptySeries,
    InsufficientData,
    InvalidArgument,
    InvalidData,
    InvalidK,
    InvalidLength,
    WavemdlError,
)
from .filters import WaveletBasis, default_library, get_basis, list_bases
from .pipeline import (
    DayStats,
    KProfile,
    TimeSeries,
    basis_codelengths,
    daily_stats,
    day_boundaries,
    downsample,
    k_profile,
    remove_outliers,
    select_basis,
    shift_ratio,
    sliding_windows,
)
from .selection import (
    SelectionCurve,
    SparseRepresentation,
    codelength_constants,
    mdl_objective,
    optimal_k,
    residual_floor,
    select_k_aic,
    select_k_bic,
    selection_curve,
    total_codelength,
)
from .synth import SynthSpec, gen_ar2, gen_challenge_like, gen_sparse_in_basis

__version__ = "0.1.0"
