"""Brute-force reference answers by exhaustive enumeration.

Every function here enumerates all plausible profiles and, per profile, all
``C(m, k)`` committees, computing welfare straight from the definition.  The
cost is exponential; these functions are the ground truth the fast paths are
tested against, and the actual implementation where no fast path exists.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .core import Committee, check_committee, committee_key, committees
from .distribution import WelfareDistribution
from .models import (
    DEFAULT_PROFILE_CAP,
    DEFAULT_UNCERTAIN_CAP,
    UncertaintyModel,
    check_committee_cap,
    enumerate_plausible,
)

ZERO = Fraction(0)


@dataclass(frozen=True)
class _Table:
    committees: tuple  # lexicographic order
    rows: tuple  # (probability, profile, welfare of each committee, best welfare)

    def index(self, committee: Committee) -> int:
        return self.committees.index(committee)


@functools.lru_cache(maxsize=16)
def _table(model: UncertaintyModel, cap: int, uncertain_cap: int) -> _Table:
    inst = model.instance
    check_committee_cap(inst)
    all_w = tuple(committees(inst.m, inst.k))
    rows = []
    for lam, profile in enumerate_plausible(model, cap, uncertain_cap):
        welfare = tuple(sum(len(w & a) for a in profile) for w in all_w)
        rows.append((lam, profile, welfare, max(welfare)))
    return _Table(all_w, tuple(rows))


def oracle_swm_prob(
    model: UncertaintyModel,
    committee: Iterable[int],
    cap: int = DEFAULT_PROFILE_CAP,
    uncertain_cap: int = DEFAULT_UNCERTAIN_CAP,
) -> Fraction:
    w = check_committee(committee, model.instance)
    t = _table(model, cap, uncertain_cap)
    j = t.index(w)
    return sum((lam for lam, _, sw, best in t.rows if sw[j] == best), ZERO)


def oracle_sw_dist(
    model: UncertaintyModel,
    committee: Iterable[int],
    cap: int = DEFAULT_PROFILE_CAP,
    uncertain_cap: int = DEFAULT_UNCERTAIN_CAP,
) -> WelfareDistribution:
    w = check_committee(committee, model.instance)
    t = _table(model, cap, uncertain_cap)
    j = t.index(w)
    acc: dict[int, Fraction] = {}
    for lam, _, sw, _ in t.rows:
        acc[sw[j]] = acc.get(sw[j], ZERO) + lam
    return WelfareDistribution.from_mapping(acc)


def oracle_is_poss_swm(model, committee, cap=DEFAULT_PROFILE_CAP, uncertain_cap=DEFAULT_UNCERTAIN_CAP) -> bool:
    w = check_committee(committee, model.instance)
    t = _table(model, cap, uncertain_cap)
    j = t.index(w)
    return any(sw[j] == best for _, _, sw, best in t.rows)


def oracle_is_nec_swm(model, committee, cap=DEFAULT_PROFILE_CAP, uncertain_cap=DEFAULT_UNCERTAIN_CAP) -> bool:
    w = check_committee(committee, model.instance)
    t = _table(model, cap, uncertain_cap)
    j = t.index(w)
    return all(sw[j] == best for _, _, sw, best in t.rows)


def oracle_swm_probs(model, cap=DEFAULT_PROFILE_CAP, uncertain_cap=DEFAULT_UNCERTAIN_CAP) -> dict:
    """SWM probability of every committee, keyed by committee."""
    t = _table(model, cap, uncertain_cap)
    probs = [ZERO] * len(t.committees)
    for lam, _, sw, best in t.rows:
        for j, value in enumerate(sw):
            if value == best:
                probs[j] += lam
    return dict(zip(t.committees, probs))


def oracle_max_swm(model, cap=DEFAULT_PROFILE_CAP, uncertain_cap=DEFAULT_UNCERTAIN_CAP) -> tuple[Committee, Fraction]:
    """Committee with the largest SWM probability; lexicographically least on ties."""
    probs = oracle_swm_probs(model, cap, uncertain_cap)
    best = max(probs.values())
    winner = min((w for w, p in probs.items() if p == best), key=committee_key)
    return winner, best


def oracle_exists_nec_swm(model, cap=DEFAULT_PROFILE_CAP, uncertain_cap=DEFAULT_UNCERTAIN_CAP):
    """Lexicographically least necessarily-SWM committee, or None."""
    probs = oracle_swm_probs(model, cap, uncertain_cap)
    found = [w for w, p in probs.items() if p == 1]
    return min(found, key=committee_key) if found else None


def oracle_expected_sw(model, committee, cap=DEFAULT_PROFILE_CAP, uncertain_cap=DEFAULT_UNCERTAIN_CAP) -> Fraction:
    w = check_committee(committee, model.instance)
    t = _table(model, cap, uncertain_cap)
    j = t.index(w)
    return sum((lam * sw[j] for lam, _, sw, _ in t.rows), ZERO)


def oracle_robust_prob(
    model, committee, alpha: Fraction, cap=DEFAULT_PROFILE_CAP, uncertain_cap=DEFAULT_UNCERTAIN_CAP
) -> Fraction:
    """``Pr[SW(W) >= alpha * max_W' SW(W')]`` with the optimum taken per profile."""
    w = check_committee(committee, model.instance)
    t = _table(model, cap, uncertain_cap)
    j = t.index(w)
    return sum((lam for lam, _, sw, best in t.rows if sw[j] >= alpha * best), ZERO)


@dataclass
class OracleReport:
    quantity: str
    value: object
    profiles_enumerated: int
    committees_enumerated: int


def oracle_report(
    quantity: str,
    model: UncertaintyModel,
    committee=None,
    cap: int = DEFAULT_PROFILE_CAP,
    uncertain_cap: int = DEFAULT_UNCERTAIN_CAP,
) -> OracleReport:
    """Run one oracle computation and record how much was enumerated."""
    handlers = {
        "prob": lambda: oracle_swm_prob(model, committee, cap, uncertain_cap),
        "dist": lambda: oracle_sw_dist(model, committee, cap, uncertain_cap),
        "check-poss": lambda: oracle_is_poss_swm(model, committee, cap, uncertain_cap),
        "check-nec": lambda: oracle_is_nec_swm(model, committee, cap, uncertain_cap),
        "expected": lambda: oracle_expected_sw(model, committee, cap, uncertain_cap),
        "maxswm": lambda: oracle_max_swm(model, cap, uncertain_cap),
        "exists-nec": lambda: oracle_exists_nec_swm(model, cap, uncertain_cap),
    }
    if quantity not in handlers:
        raise KeyError(f"oracle has no quantity '{quantity}'")
    value = handlers[quantity]()
    t = _table(model, cap, uncertain_cap)
    return OracleReport(quantity, value, len(t.rows), len(t.committees))
