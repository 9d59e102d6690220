"""Exact Ext invariants of lambda-graph systems."""
from .builders import BuilderError, cuntz, cuntz_krieger, dyck, markov_coded
from .cuntz_krieger import a_hat, ck_compare, ck_six_term, ck_strong_ext, ck_weak_ext
from .documents import DocumentError, dumps_lgs, loads_lgs
from .ext import (
    ConsistencyError,
    GroupTower,
    InsufficientDepthError,
    KernelTruncation,
    SixTermReport,
    iota_hat,
    s_map,
    six_term_check,
    strong_ext0_truncated,
    strong_ext1_tower,
    weak_ext0_truncated,
    weak_ext1_tower,
)
from .intlinalg import (
    FGAbelianGroup,
    IntMatrix,
    LatticeBasis,
    cokernel,
    hermite_normal_form,
    invariant_factors,
    kernel_basis,
    smith_normal_form,
)
from .lgs import TruncatedLambdaGraphSystem, check_commutation, validate

__version__ = "0.1.0"
