"""Exact-arithmetic tools for Lorentz representations and polynomial inequalities."""

from .classes import ClassTag, Membership, Sample, membership, sample
from .errors import (
    BadNestingError,
    ClassViolationError,
    DegreeDecreaseError,
    DegreeTooSmallError,
    IntervalMismatchError,
    LorentzPolyError,
    NonPositivePError,
    RejectionBudgetExceededError,
    ZeroInsideDiskError,
    ZeroPolynomialError,
)
from .lorentz import (
    LorentzDegreeResult,
    LorentzForm,
    elevate,
    from_power,
    lorentz_degree,
    lorentz_from_factors,
    restrict_interval,
    to_power,
)
from .norms import INF, NormValue, lp_norm, sup_norm
from .scalar_poly import Factors, PowerPoly, from_factors
from .search import degree_growth_experiment, maximize_ratio, pointwise_profile
from .verify import ALL_THEOREMS, Report, Verdict, batch_verify

__version__ = "0.1.0"
