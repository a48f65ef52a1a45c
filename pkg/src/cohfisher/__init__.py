"""Quantum Fisher information of partially coherent two-signal superpositions."""

from .errors import (
    CohFisherError,
    ContractError,
    ConvergenceError,
    DegenerateChannelError,
    IndeterminateDivergenceError,
    ResolutionError,
    UnreliableResultError,
    ValidationError,
)
from .fisher import (
    FisherReport,
    cr_bound,
    fisher_lambda,
    fisher_norm_channel,
    fisher_total_unnormalized,
    qfi_rank2,
    sorting_centroid,
    sorting_separation,
)
from .models import (
    MODELS,
    RankTwoDescriptor,
    WeightSpec,
    build_descriptor,
    incoherent_mixture,
    model_a,
    model_b,
    model_e,
    model_ls,
    model_tn,
)
from .optimize import (
    Optimum,
    maximize_precision,
    near_optimal_p_model_b,
    near_optimal_rate_model_b,
    near_optimal_weights_model_e,
)
from .psf import (
    MomentKernels,
    PsfModel,
    check_real_overlap,
    gaussian,
    load_profile,
    mom_im,
    moment_kernels,
    overlap_c,
    p2_overlap,
    p_variance,
    sampled,
    sampled_gaussian,
)
from .superposition import SuperpositionScalars, build_scalars, qfi_pure
from . import oracle, validation

__version__ = "0.1.0"
