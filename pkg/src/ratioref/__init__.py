"""Ratio-induced reference costs: the ``cosh(a log x) - 1`` mismatch penalty,
argmin meaning solvers over finite and log-convex dictionaries, geometric-mean
decision boundaries, scale windows, and mediated composition."""

from ._numeric import DomainError, PreconditionError, Surd
from .composition import (
    ChainPlan,
    MediationPlan,
    chain,
    chain_optimality_check,
    mediate,
    mediation_gain,
    product_mean,
)
from .decision import (
    BoundarySet,
    StabilityCertificate,
    boundaries,
    classify,
    robust_under,
    stability_radius,
)
from .meaning import (
    MeaningResult,
    ScaleWindow,
    backbone_window,
    capacity_bound,
    is_symbol,
    low_cost_window,
    mean,
    mean_total,
    near_balance_window,
)
from .multidim import continuity_probe, coordinatewise_equiv_check, mean_md
from .penalty import (
    CANONICAL,
    J,
    PenaltyParam,
    SublevelInterval,
    dalembert_residual,
    log_form,
    quadratic_bounds,
    sublevel,
)
from .spaces import (
    CostedSpace,
    Finite,
    Interval,
    LogBox,
    LogPolytope,
    intrinsic_cost,
    ref_cost,
    ref_cost_vec,
)

__version__ = "0.1.0"
