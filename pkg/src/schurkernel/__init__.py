"""Schur parameter sequences: kernel matrices, recurrence laws, rank and level
verdicts, and finite unitary colligation models."""

__version__ = "0.1.0"

from .config import DEFAULT, Config, Depths, Tolerances, load_config
from .core import DomainError, NotSchurError, SchurError, SchurSequence, Status, tail_products
from .transform import caratheodory_coefficients, schur_to_taylor, taylor_to_moments, taylor_to_schur
from .kernel import KernelError, build_bundle, gram_profile, hankel_q, l_table, lower_matrix, q_values
from .recurrence import LawError, RecurrenceLaw, extend, extract_law, rank1_extend, verify_law
from .colligation import Regime, build_model, ggt_isometry, naimark_moments, t_gf_matrix
from .classify import (
    Answer,
    HSVerdict,
    classify,
    helson_szego,
    is_rational,
    level_estimate,
    polynomial_type,
    psd_criterion,
    rank_of,
)
