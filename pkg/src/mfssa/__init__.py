"""Multivariate functional singular spectrum analysis over mixed-dimensional
domains: basis projection, Gram-weighted trajectory SVD, analyst grouping,
Hankel reconstruction and separability diagnostics."""

from .basis import (
    FunctionalBasis,
    SampleGrid,
    gram_matrix,
    make_bspline_basis,
    make_delta_basis,
    make_tensor_basis,
    project_samples,
)
from .classical import MssaDecomposition, mssa_decompose, mssa_embed, mssa_reconstruct
from .decomposition import (
    TrajectoryDecomposition,
    decompose,
    eigentriple_relations_check,
    render_left_functions,
    unfolding_permutation,
    vmfssa_oracle,
)
from .domains import DomainSpec, interval, rectangle
from .embedding import EmbeddingPlan, TrajectoryRep, adjoint_apply, embed, gram_sqrt
from .errors import MfssaError, NumericError, ProjectionError
from .hmfssa import (
    CommonDomainError,
    HmfssaDecomposition,
    HmfssaRep,
    hmfssa_decompose,
    hmfssa_embed,
    hmfssa_reconstruct,
)
from .mfts import (
    MFTS,
    NormalizationRecord,
    add,
    denormalize,
    evaluate,
    ingest,
    ingest_csv,
    ingest_dict,
    normalize,
    scale,
    to_dataset_dict,
)
from .reconstruction import Grouping, ReconstructionSet, hankelize, reconstruct
from .separability import wcorrelation_matrix, wcov, weights, wnorm
from .simulation import SimConfig, gamma0_for_norm, run_study, simulate_signal

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
