"""Approval-based committee voting with uncertain approvals.

Exact (rational) algorithms for social-welfare questions about a committee
when voters' approval sets are only known probabilistically, plus a
brute-force oracle that every fast path is checked against.
"""

from .core import (
    Instance,
    InvalidInputError,
    ResourceLimitError,
    approval_score,
    greedy_swm,
    is_swm,
    social_welfare,
)
from .distribution import WelfareDistribution, as_dist, sw_dist
from .models import (
    CandidateProbabilityModel,
    JointProbabilityModel,
    LotteryModel,
    cp_to_lottery,
    enumerate_plausible,
    lottery_to_joint,
    sample,
    validate,
)
from .necessity import Dominance, dominance_graph, dominates, exists_nec_swm, is_nec_swm, is_poss_swm
from .optimize import (
    OptimizationResult,
    RobustnessQuery,
    expected_sw,
    gen_unrobust_instance,
    max_exp_sw,
    max_swm,
    robust_check,
)
from .swmprob import swm_prob

__all__ = [
    "CandidateProbabilityModel",
    "Dominance",
    "Instance",
    "InvalidInputError",
    "JointProbabilityModel",
    "LotteryModel",
    "OptimizationResult",
    "ResourceLimitError",
    "RobustnessQuery",
    "WelfareDistribution",
    "approval_score",
    "as_dist",
    "cp_to_lottery",
    "dominance_graph",
    "dominates",
    "enumerate_plausible",
    "exists_nec_swm",
    "expected_sw",
    "gen_unrobust_instance",
    "greedy_swm",
    "is_nec_swm",
    "is_poss_swm",
    "is_swm",
    "lottery_to_joint",
    "max_exp_sw",
    "max_swm",
    "robust_check",
    "sample",
    "social_welfare",
    "sw_dist",
    "swm_prob",
    "validate",
]
