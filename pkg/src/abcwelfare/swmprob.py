"""Probability that a committee maximizes social welfare."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .core import Committee, ResourceLimitError, _is_swm_scores, approval_scores, check_committee
from .distribution import WelfareDistribution, as_dist
from .models import (
    DEFAULT_PROFILE_CAP,
    DEFAULT_UNCERTAIN_CAP,
    CandidateProbabilityModel,
    JointProbabilityModel,
    LotteryModel,
    UncertaintyModel,
)
from .oracle import oracle_swm_prob

ZERO = Fraction(0)

METHODS = ("joint-sum", "cp-decomposition", "oracle-enumeration")


@dataclass(frozen=True)
class SwmProbReport:
    probability: Fraction
    method: str
    work: int


def score_distributions(model: UncertaintyModel) -> dict[int, WelfareDistribution]:
    return {c: as_dist(model, c) for c in model.instance.candidates}


def cp_swm_prob(
    model: CandidateProbabilityModel,
    committee: Committee,
    scores: Mapping[int, WelfareDistribution] | None = None,
) -> Fraction:
    """Pr[max outside score <= min inside score] for independent candidate scores.

    Conditions on the minimum member score ``t``:
    ``Pr[min = t] = prod Pr[AS >= t] - prod Pr[AS >= t + 1]`` over members,
    times ``prod Pr[AS <= t]`` over non-members.
    """
    if scores is None:
        scores = score_distributions(model)
    inst = model.instance
    outside = [c for c in inst.candidates if c not in committee]
    total = ZERO
    for t in range(inst.n + 1):
        at_least_t = math.prod((scores[c].tail(t) for c in committee), start=Fraction(1))
        above_t = math.prod((scores[c].tail(t + 1) for c in committee), start=Fraction(1))
        p_min = at_least_t - above_t
        if p_min:
            total += p_min * math.prod((scores[c].cdf(t) for c in outside), start=Fraction(1))
    return total


def swm_prob(
    model: UncertaintyModel,
    committee: Iterable[int],
    cap: int = DEFAULT_PROFILE_CAP,
    uncertain_cap: int = DEFAULT_UNCERTAIN_CAP,
) -> SwmProbReport:
    """Exact probability that ``committee`` is social-welfare maximizing.

    The joint model sums over its listed profiles and the candidate-probability
    model uses independent per-candidate score distributions; both are
    polynomial.  For the lottery model the problem is #P-hard, so the
    answer comes from full enumeration and raises
    :class:`~abcwelfare.core.ResourceLimitError` once the number of plausible
    profiles exceeds ``cap``.
    """
    w = check_committee(committee, model.instance)
    inst = model.instance
    if isinstance(model, JointProbabilityModel):
        total = ZERO
        for lam, profile in model.entries:
            if _is_swm_scores(w, approval_scores(profile, inst.m), inst.m):
                total += lam
        return SwmProbReport(total, "joint-sum", len(model.entries))
    if isinstance(model, CandidateProbabilityModel):
        return SwmProbReport(cp_swm_prob(model, w), "cp-decomposition", inst.n * inst.m)
    if isinstance(model, LotteryModel):
        count = math.prod(model.support_sizes())
        if count > cap:
            raise ResourceLimitError(
                f"SWM probability in the lottery model is #P-hard; exact enumeration needs "
                f"{count} profiles, above the cap of {cap}",
                required=count,
                cap=cap,
            )
        return SwmProbReport(oracle_swm_prob(model, w, cap, uncertain_cap), "oracle-enumeration", count)
    raise TypeError(f"unsupported model {type(model).__name__}")
