"""Possibly / necessarily welfare-maximizing committees.

A committee is *possibly* SWM if it maximizes welfare in at least one
plausible profile and *necessarily* SWM if it does so in all of them.  Fast
paths build a single adversarial deterministic profile (candidate-probability
and lottery models) or scan the listed profiles (joint model).  Deciding
possible SWM in the lottery model is NP-complete, so that case enumerates
under a cap.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Iterable

from .core import (
    Committee,
    ResourceLimitError,
    _is_swm_scores,
    approval_scores,
    check_committee,
)
from .models import (
    DEFAULT_PROFILE_CAP,
    DEFAULT_UNCERTAIN_CAP,
    CandidateProbabilityModel,
    JointProbabilityModel,
    LotteryModel,
    UncertaintyModel,
)
from .oracle import oracle_is_poss_swm


class Dominance(enum.Enum):
    """Verdict for an ordered candidate pair ``(a, b)`` over all plausible profiles."""

    DOMINATES = "dominates"  # AS(a) >= AS(b) always, strictly in some profile
    DOMINATED = "dominated"
    TIED = "tie-equal"  # AS(a) == AS(b) always
    INCOMPARABLE = "incomparable"


# Per-voter preference when building the profile that favours `rival` over `c`:
# rival only, both, neither, c only.
_CASE_PRIORITY = {(True, False): 0, (True, True): 1, (False, False): 2, (False, True): 3}


def adversarial_profile(model: LotteryModel, c: int, rival: int) -> tuple:
    """Plausible profile maximizing ``AS(rival) - AS(c)``.

    Each voter takes a support set containing ``rival`` but not ``c`` if one
    exists, else one containing both, else neither, else ``c`` only.  Within a
    case the first set in input order is used.
    """
    profile = []
    for dist in model.voters:
        best = min(
            range(len(dist)),
            key=lambda r: (_CASE_PRIORITY[(rival in dist[r][1], c in dist[r][1])], r),
        )
        profile.append(dist[best][1])
    return tuple(profile)


def _always_at_least(model: UncertaintyModel, c: int, rival: int) -> bool:
    """True if ``AS(c) >= AS(rival)`` in every plausible profile."""
    if isinstance(model, LotteryModel):
        profile = adversarial_profile(model, c, rival)
        return sum(c in a for a in profile) >= sum(rival in a for a in profile)
    if isinstance(model, JointProbabilityModel):
        return all(
            sum(c in a for a in profile) >= sum(rival in a for a in profile)
            for _, profile in model.entries
        )
    if isinstance(model, CandidateProbabilityModel):
        # cells are independent, so per voter the worst case is rival possible, c avoidable
        gap = 0
        for row in model.p:
            gap += (row[rival - 1] > 0) - (row[c - 1] == 1)
        return gap <= 0
    raise TypeError(f"unsupported model {type(model).__name__}")


def dominates(model: UncertaintyModel, a: int, b: int) -> Dominance:
    if a == b:
        raise ValueError("dominance needs two distinct candidates")
    check_committee([a, b], model.instance, size=2)
    forward = _always_at_least(model, a, b)
    backward = _always_at_least(model, b, a)
    if forward and backward:
        return Dominance.TIED
    if forward:
        return Dominance.DOMINATES
    if backward:
        return Dominance.DOMINATED
    return Dominance.INCOMPARABLE


@dataclass(frozen=True)
class DominanceGraph:
    m: int
    edges: frozenset  # (a, b): a's score is never below b's

    def has_edge(self, a: int, b: int) -> bool:
        return (a, b) in self.edges

    def is_acyclic(self) -> bool:
        indegree = {c: 0 for c in range(1, self.m + 1)}
        for _, b in self.edges:
            indegree[b] += 1
        ready = [c for c, d in indegree.items() if d == 0]
        seen = 0
        while ready:
            a = ready.pop()
            seen += 1
            for x, b in self.edges:
                if x == a:
                    indegree[b] -= 1
                    if indegree[b] == 0:
                        ready.append(b)
        return seen == self.m


def dominance_graph(model: UncertaintyModel) -> DominanceGraph:
    """Edges for every dominated pair; always-tied pairs get only the smaller-index-first edge."""
    edges = set()
    for a, b in itertools.combinations(model.instance.candidates, 2):
        verdict = dominates(model, a, b)
        if verdict in (Dominance.DOMINATES, Dominance.TIED):
            edges.add((a, b))
        elif verdict is Dominance.DOMINATED:
            edges.add((b, a))
    return DominanceGraph(model.instance.m, frozenset(edges))


def select_by_dominance(graph: DominanceGraph, k: int) -> Committee | None:
    """Pick ``k`` candidates by repeatedly taking a zero-indegree node, then verify.

    Ties between zero-indegree nodes go to the smallest index.  The result is
    accepted only if every chosen candidate has an edge to every unchosen one.
    """
    remaining = set(graph.edges)
    chosen: list[int] = []
    while len(chosen) < k:
        blocked = {b for _, b in remaining}
        pick = min(c for c in range(1, graph.m + 1) if c not in chosen and c not in blocked)
        chosen.append(pick)
        remaining = {(a, b) for a, b in remaining if a != pick}
    committee = frozenset(chosen)
    outside = [c for c in range(1, graph.m + 1) if c not in committee]
    if all(graph.has_edge(a, b) for a in committee for b in outside):
        return committee
    return None


def _cp_possible_profile(model: CandidateProbabilityModel, w: Committee) -> tuple:
    return tuple(
        frozenset(c for c, x in enumerate(row, start=1) if (x > 0 if c in w else x == 1))
        for row in model.p
    )


def _cp_necessary_profile(model: CandidateProbabilityModel, w: Committee) -> tuple:
    return tuple(
        frozenset(c for c, x in enumerate(row, start=1) if (x == 1 if c in w else x > 0))
        for row in model.p
    )


def _swm_in(w: Committee, profile, m: int) -> bool:
    return _is_swm_scores(w, approval_scores(profile, m), m)


def is_poss_swm(
    model: UncertaintyModel,
    committee: Iterable[int],
    cap: int = DEFAULT_PROFILE_CAP,
    uncertain_cap: int = DEFAULT_UNCERTAIN_CAP,
) -> bool:
    """Is the committee SWM in at least one plausible profile?

    Candidate-probability models are decided on one profile: members get every
    possible approval, non-members only their certain ones.
    """
    w = check_committee(committee, model.instance)
    m = model.instance.m
    if isinstance(model, JointProbabilityModel):
        return any(_swm_in(w, profile, m) for _, profile in model.entries)
    if isinstance(model, CandidateProbabilityModel):
        return _swm_in(w, _cp_possible_profile(model, w), m)
    if isinstance(model, LotteryModel):
        count = math.prod(model.support_sizes())
        if count > cap:
            raise ResourceLimitError(
                f"possible-SWM in the lottery model is NP-complete; exhaustive search needs "
                f"{count} profiles, above the cap of {cap}",
                required=count,
                cap=cap,
            )
        return oracle_is_poss_swm(model, w, cap, uncertain_cap)
    raise TypeError(f"unsupported model {type(model).__name__}")


def is_nec_swm(model: UncertaintyModel, committee: Iterable[int]) -> bool:
    """Is the committee SWM in every plausible profile?  Polynomial for all models."""
    w = check_committee(committee, model.instance)
    inst = model.instance
    if isinstance(model, JointProbabilityModel):
        return all(_swm_in(w, profile, inst.m) for _, profile in model.entries)
    if isinstance(model, CandidateProbabilityModel):
        return _swm_in(w, _cp_necessary_profile(model, w), inst.m)
    if isinstance(model, LotteryModel):
        outside = [c for c in inst.candidates if c not in w]
        return all(_always_at_least(model, c, rival) for c in w for rival in outside)
    raise TypeError(f"unsupported model {type(model).__name__}")


def exists_nec_swm(model: UncertaintyModel) -> Committee | None:
    """A necessarily-SWM committee of size ``k`` if one exists, else None."""
    inst = model.instance
    if isinstance(model, CandidateProbabilityModel):
        certain = [0] * (inst.m + 1)
        positive = [0] * (inst.m + 1)
        for row in model.p:
            for c, x in enumerate(row, start=1):
                certain[c] += x == 1
                positive[c] += x > 0
        order = sorted(inst.candidates, key=lambda c: (-certain[c], -positive[c], c))
        w = frozenset(order[: inst.k])
        return w if is_nec_swm(model, w) else None
    if isinstance(model, JointProbabilityModel):
        survivors = set(inst.candidates)
        for _, profile in model.entries:
            scores = approval_scores(profile, inst.m)
            kth = sorted(scores[1:], reverse=True)[inst.k - 1]
            survivors -= {c for c in inst.candidates if scores[c] < kth}
        if len(survivors) < inst.k:
            return None
        w = select_by_dominance(dominance_graph(model), inst.k)
        return w if w is not None and is_nec_swm(model, w) else None
    if isinstance(model, LotteryModel):
        return select_by_dominance(dominance_graph(model), inst.k)
    raise TypeError(f"unsupported model {type(model).__name__}")
