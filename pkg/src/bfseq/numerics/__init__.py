from .config import Tolerance
from .quadrature import integrate_1d
from .roots import CRITICAL_BRACKETS, expand_bracket, find_root
from .special import (
    nct_pdf,
    norm_cdf,
    norm_logcdf,
    norm_quantile,
    norm_quantile_log,
    t_cdf,
    t_logpdf,
    t_pdf,
)

__all__ = [
    "CRITICAL_BRACKETS",
    "Tolerance",
    "expand_bracket",
    "find_root",
    "integrate_1d",
    "nct_pdf",
    "norm_cdf",
    "norm_logcdf",
    "norm_quantile",
    "norm_quantile_log",
    "t_cdf",
    "t_logpdf",
    "t_pdf",
]
