"""Density-evolution thresholds of q-ary spatially coupled LDPC protograph
ensembles on the binary erasure channel, with flooding and windowed decoding.
"""

from ._core import COMPILED, get_backend
from .analysis import (
    ComplexityReport,
    LatencyReport,
    complexity_order,
    complexity_profile,
    latency_block_fsd,
    latency_wd,
)
from .errors import (
    DecodeFailureError,
    DegenerateBracketError,
    DimensionMismatchError,
    GrammarError,
    InvalidArgumentError,
    NonpositiveRateError,
    NoPlateauError,
    NumericError,
    ScldpcError,
    WindowTooSmallError,
)
from .pde import DecodeOutcome, FsdRunner, PdeConfig, run_fsd
from .protograph import (
    INFINITE_L,
    BaseMatrix,
    ComponentStack,
    CouplingInfo,
    EnsembleSpec,
    couple,
    design_rate,
    enumerate_edge_spreadings,
    make_block_base,
    make_classical_spreading,
    make_type_p_spreading,
    parse_ensemble,
)
from .subspace import (
    DeMessage,
    SubspaceTables,
    box_power,
    boxdot,
    boxtimes,
    coeff_C,
    coeff_V,
    delta_message,
    gaussian_binomial,
    get_tables,
    initial_message,
)
from .thresholds import (
    SaturationResult,
    ThresholdResult,
    bisect_threshold,
    capacity_gap,
    find_l_star,
    find_w_star,
    fsd_threshold,
    shannon_limit,
    wd_threshold,
)
from .windowed import WdOutcome, WdRunner, WindowConfig, run_wd, window_slice

__version__ = "0.1.0"
