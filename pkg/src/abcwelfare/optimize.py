"""Committee selection under uncertainty.

``max_exp_sw`` maximizes expected welfare, which is additive over members,
so it reduces to sorting per-candidate expected scores.  ``max_swm``
maximizes the probability of being welfare-maximizing; that is NP-hard for
joint and lottery models, so it searches exhaustively under caps, with a
sorting shortcut for a single voter under candidate probabilities.
``robust_check`` evaluates ``Pr[SW(W) >= alpha * SW(W*)]``, where ``W*`` is
the optimum of each realized profile.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import (
    Committee,
    InvalidInputError,
    Instance,
    ResourceLimitError,
    _is_swm_scores,
    approval_scores,
    check_committee,
    committee_key,
    committees,
    top_k,
)
from .models import (
    DEFAULT_COMMITTEE_CAP,
    DEFAULT_PROFILE_CAP,
    DEFAULT_UNCERTAIN_CAP,
    CandidateProbabilityModel,
    JointProbabilityModel,
    LotteryModel,
    UncertaintyModel,
    check_committee_cap,
    enumerate_plausible,
    parse_probability,
    plausible_count,
)
from .swmprob import cp_swm_prob, score_distributions

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class OptimizationResult:
    committee: Committee
    objective: Fraction
    co_optima: tuple  # committees in lexicographic order, ``committee`` first
    method: str


@dataclass(frozen=True)
class RobustnessQuery:
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        for name in ("alpha", "beta"):
            value = parse_probability(getattr(self, name))
            if not 0 < value <= 1:
                raise InvalidInputError(f"{name}={value} must lie in (0, 1]")
            object.__setattr__(self, name, value)


def expected_scores(model: UncertaintyModel) -> list[Fraction]:
    """Expected approval score per candidate; index 0 is padding."""
    m = model.instance.m
    scores = [ZERO] * (m + 1)
    if isinstance(model, JointProbabilityModel):
        for lam, profile in model.entries:
            for a in profile:
                for c in a:
                    scores[c] += lam
    elif isinstance(model, LotteryModel):
        for dist in model.voters:
            for lam, s in dist:
                for c in s:
                    scores[c] += lam
    elif isinstance(model, CandidateProbabilityModel):
        for row in model.p:
            for c, x in enumerate(row, start=1):
                scores[c] += x
    else:
        raise TypeError(f"unsupported model {type(model).__name__}")
    return scores


def expected_sw(model: UncertaintyModel, committee: Iterable[int]) -> Fraction:
    w = check_committee(committee, model.instance)
    scores = expected_scores(model)
    return sum((scores[c] for c in w), ZERO)


def _top_k_ties(values: Sequence, k: int, m: int, cap: int) -> list[Committee]:
    """Every size-k set maximizing the sum of ``values``, lexicographically ordered."""
    threshold = sorted(values[1:], reverse=True)[k - 1]
    must = [c for c in range(1, m + 1) if values[c] > threshold]
    tier = [c for c in range(1, m + 1) if values[c] == threshold]
    need = k - len(must)
    count = math.comb(len(tier), need)
    if count > cap:
        raise ResourceLimitError(f"{count} tied optimal committees exceed the cap of {cap}", count, cap)
    found = [frozenset(must) | frozenset(extra) for extra in itertools.combinations(tier, need)]
    return sorted(found, key=committee_key)


def max_exp_sw(model: UncertaintyModel, committee_cap: int = DEFAULT_COMMITTEE_CAP) -> OptimizationResult:
    """Committee with the largest expected social welfare.

    The winner is the top ``k`` candidates by expected approval score with
    smallest-index tie-breaking; ``co_optima`` lists every committee reaching
    the same expectation.
    """
    inst = model.instance
    scores = expected_scores(model)
    winner = top_k(scores, inst.k, inst.m)
    objective = sum((scores[c] for c in winner), ZERO)
    co = _top_k_ties(scores, inst.k, inst.m, committee_cap)
    return OptimizationResult(winner, objective, tuple(co), "expected-score-sort")


def _single_voter_max_swm(model: CandidateProbabilityModel) -> OptimizationResult:
    inst = model.instance
    row = (None,) + tuple(model.p[0])
    winner = top_k(row, inst.k, inst.m)
    # candidates with equal approval probability are interchangeable
    co = _top_k_ties(row, inst.k, inst.m, DEFAULT_COMMITTEE_CAP)
    return OptimizationResult(winner, cp_swm_prob(model, winner), tuple(co), "cp-single-voter")


def max_swm(
    model: UncertaintyModel,
    cap: int = DEFAULT_PROFILE_CAP,
    uncertain_cap: int = DEFAULT_UNCERTAIN_CAP,
    committee_cap: int = DEFAULT_COMMITTEE_CAP,
) -> OptimizationResult:
    """Committee with the highest probability of being welfare-maximizing.

    Candidate probabilities with one voter: take the ``k`` most likely
    approved candidates.  Otherwise every committee is scored: exactly per
    committee for candidate probabilities, and by enumerating plausible
    profiles for joint and lottery models (NP-hard even with one voter).

    Raises
    ------
    ResourceLimitError
        If the committee count or the plausible-profile count exceeds its cap.
    """
    inst = model.instance
    if isinstance(model, CandidateProbabilityModel) and inst.n == 1:
        return _single_voter_max_swm(model)
    try:
        check_committee_cap(inst, committee_cap)
        if not isinstance(model, CandidateProbabilityModel):
            count = plausible_count(model)
            if count > cap:
                raise ResourceLimitError(
                    f"{count} plausible profiles exceed the cap of {cap}", required=count, cap=cap
                )
    except ResourceLimitError as exc:
        raise ResourceLimitError(
            f"maximizing SWM probability is NP-hard and needs exhaustive search: {exc}",
            required=exc.required,
            cap=exc.cap,
        ) from exc

    all_w = list(committees(inst.m, inst.k))
    if isinstance(model, CandidateProbabilityModel):
        dists = score_distributions(model)
        probs = [cp_swm_prob(model, w, dists) for w in all_w]
        method = "cp-exhaustive"
    else:
        probs = [ZERO] * len(all_w)
        for lam, profile in enumerate_plausible(model, cap, uncertain_cap):
            scores = approval_scores(profile, inst.m)
            for j, w in enumerate(all_w):
                if _is_swm_scores(w, scores, inst.m):
                    probs[j] += lam
        method = "profile-enumeration"
    best = max(probs)
    co = tuple(w for w, p in zip(all_w, probs) if p == best)
    return OptimizationResult(co[0], best, co, method)


def robust_check(
    model: UncertaintyModel,
    committee: Iterable[int],
    query: RobustnessQuery,
    cap: int = DEFAULT_PROFILE_CAP,
    uncertain_cap: int = DEFAULT_UNCERTAIN_CAP,
) -> tuple[bool, Fraction]:
    """Exact ``Pr[SW(W) >= alpha * SW(W*)]`` and whether it reaches ``beta``.

    ``SW(W*)`` is recomputed for each plausible profile (sum of the ``k``
    largest approval scores), so this always enumerates.
    """
    w = check_committee(committee, model.instance)
    inst = model.instance
    total = ZERO
    for lam, profile in enumerate_plausible(model, cap, uncertain_cap):
        scores = approval_scores(profile, inst.m)
        optimum = sum(sorted(scores[1:], reverse=True)[: inst.k])
        if sum(scores[c] for c in w) >= query.alpha * optimum:
            total += lam
    return total >= query.beta, total


@dataclass(frozen=True)
class UnrobustFamily:
    """Outcome of the single-voter, uniform-probability, ``k = 1`` construction.

    ``value = p + (1 - p)^m`` is the robustness probability of every committee
    for every ``alpha``; ``model`` is set only when it falls below ``beta``.
    """

    value: Fraction
    model: CandidateProbabilityModel | None

    @property
    def feasible(self) -> bool:
        return self.model is not None


def uniform_single_voter(m: int, p) -> CandidateProbabilityModel:
    p = parse_probability(p)
    return CandidateProbabilityModel(Instance(1, m, 1), ((p,) * m,))


def gen_unrobust_instance(m: int, p, beta) -> UnrobustFamily:
    p, beta = parse_probability(p), parse_probability(beta)
    if not isinstance(m, int) or m < 1:
        raise InvalidInputError(f"m must be a positive integer, got {m!r}")
    if not 0 <= p <= 1:
        raise InvalidInputError(f"p={p} must lie in [0, 1]")
    if not 0 < beta <= 1:
        raise InvalidInputError(f"beta={beta} must lie in (0, 1]")
    value = p + (1 - p) ** m
    return UnrobustFamily(value, uniform_single_voter(m, p) if value < beta else None)
