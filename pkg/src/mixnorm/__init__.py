"""Operator norms, extremal forms and optimal constants for mixed
Littlewood-type inequalities on ``l_p x c_0 x ... x c_0``."""

__version__ = "0.1.0"

from .forms import (
    INF,
    CoefficientTensor,
    MixedNormScheme,
    SpaceSignature,
    admissible,
    build_extremal,
    evaluate,
    hl_exponents,
    make_form,
    make_sparse_form,
    mixed_norm,
    permute_slots,
)
from .lab import bilinear_sandwich, constant_report, gap_curve, ratio_certificate
from .norms import BudgetExceeded, NormCertificate, ascent_norm, dual_norm_witness, exact_norm
from .specfun import critical_p, find_p0, gamma, khinchine_A
from .tensorio import FormatError, read_form, write_form
