"""Artin-Hasse exponentials and series over F_p with p-supported multiplicativity defect."""

from ._kernels import BACKEND
from .artinhasse import (
    AHSeries,
    ah_build,
    ah_rational_oracle,
    ep_bar,
    gerstenhaber_series,
    logderiv_target,
)
from .bivariate import BiSeries, bi_inv, bi_mul, bi_subst_sum, defect, is_additive, support_multiple_p
from .charp import (
    AdditiveLogDeriv,
    DecompResult,
    corollary_check,
    decompose,
    enumerate_small,
    logderiv_additive,
    remark_recurrence_check,
    synthesize,
    theorem_check,
)
from .documents import SeriesDocument
from .errors import *  # noqa: F401,F403
from .padic import GF, FpElem, PadicNum, PrecisionPolicy, fp_inv, padic_div_int, padic_in_p_zp, padic_mul, padic_reduce_modp
from .padiccrit import (
    LogCoefficients,
    PurePPowerExp,
    additive_logderiv_congruence,
    dwork_check,
    exp_dwork_check,
    lift_modp,
    ppower_exp_integrality,
    prop_cond1_check,
    prop_cond2_check,
    prop_equivalence,
    run_with_retry,
    theorem_via_proposition,
)
from .reports import CheckReport
from .series import (
    FpSeries,
    PadicSeries,
    ser_compose_scale,
    ser_derivative,
    ser_exp,
    ser_extract_pth,
    ser_inv,
    ser_log,
    ser_mul,
    ser_plug_xp,
)

__version__ = "0.1.0"
