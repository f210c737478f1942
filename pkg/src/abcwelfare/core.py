"""Deterministic approval-voting primitives.

Voters are numbered ``1..n`` and candidates ``1..m``.  An approval profile is a
tuple of frozensets (one per voter) and a committee is a frozenset of exactly
``k`` candidates.  Social welfare of a committee is the total overlap
``sum_i |W & A_i|``.
"""

from __future__ import annotations

import itertools
from math import comb
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Profile = tuple  # tuple[frozenset[int], ...]
Committee = frozenset  # frozenset[int]


class InvalidInputError(ValueError):
    """Raised when an instance, profile, committee or parameter is malformed."""


class ResourceLimitError(RuntimeError):
    """Raised when an exponential enumeration would exceed its configured cap."""

    def __init__(self, message: str, required: int | None = None, cap: int | None = None):
        super().__init__(message)
        self.required = required
        self.cap = cap


@dataclass(frozen=True)
class Instance:
    n: int
    m: int
    k: int

    def __post_init__(self):
        for name in ("n", "m", "k"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise InvalidInputError(f"{name} must be an integer, got {value!r}")
        if self.n < 1 or self.m < 1:
            raise InvalidInputError(f"need n >= 1 and m >= 1, got n={self.n}, m={self.m}")
        if not 1 <= self.k <= self.m:
            raise InvalidInputError(f"committee size k={self.k} outside [1, m={self.m}]")

    @property
    def candidates(self) -> range:
        return range(1, self.m + 1)


def make_profile(sets: Iterable[Iterable[int]]) -> Profile:
    return tuple(frozenset(s) for s in sets)


def make_committee(members: Iterable[int]) -> Committee:
    return frozenset(members)


def check_profile(profile: Sequence[frozenset], instance: Instance) -> None:
    if len(profile) != instance.n:
        raise InvalidInputError(
            f"profile has {len(profile)} approval sets but n={instance.n}"
        )
    for i, approved in enumerate(profile, start=1):
        bad = [c for c in approved if not 1 <= c <= instance.m]
        if bad:
            raise InvalidInputError(f"voter {i} approves unknown candidates {sorted(bad)}")


def check_committee(committee: Iterable[int], instance: Instance, size: int | None = None) -> Committee:
    """Validate a committee against ``instance`` and return it as a frozenset.

    ``size`` defaults to ``instance.k``; pass another value for auxiliary
    candidate sets such as singletons.
    """
    members = list(committee)
    w = frozenset(members)
    expected = instance.k if size is None else size
    if len(w) != len(members):
        raise InvalidInputError(f"committee {sorted(members)} has duplicate members")
    if len(w) != expected:
        raise InvalidInputError(f"committee {sorted(w)} has size {len(w)}, expected {expected}")
    bad = [c for c in w if not 1 <= c <= instance.m]
    if bad:
        raise InvalidInputError(f"committee members {sorted(bad)} outside 1..{instance.m}")
    return w


def social_welfare(committee: Committee, profile: Profile, instance: Instance | None = None) -> int:
    """Total number of (voter, member) approvals: ``sum_i |W & A_i|``."""
    if instance is not None:
        check_committee(committee, instance)
        check_profile(profile, instance)
    return sum(len(committee & approved) for approved in profile)


def approval_score(candidate: int, profile: Profile, instance: Instance | None = None) -> int:
    if instance is not None:
        if not 1 <= candidate <= instance.m:
            raise InvalidInputError(f"candidate {candidate} outside 1..{instance.m}")
        check_profile(profile, instance)
    return sum(1 for approved in profile if candidate in approved)


def approval_scores(profile: Profile, m: int) -> list[int]:
    """Scores indexed by candidate; entry 0 is unused padding."""
    scores = [0] * (m + 1)
    for approved in profile:
        for c in approved:
            scores[c] += 1
    return scores


def is_swm(committee: Committee, profile: Profile, instance: Instance) -> bool:
    """Return True if no committee of the same size has larger social welfare.

    Because welfare is additive over members, this holds exactly when the
    weakest member's approval score is at least the strongest non-member's.
    Ties count as maximizing.
    """
    check_committee(committee, instance)
    check_profile(profile, instance)
    return _is_swm_scores(committee, approval_scores(profile, instance.m), instance.m)


def _is_swm_scores(committee: Committee, scores: Sequence[int], m: int) -> bool:
    inside = min(scores[c] for c in committee)
    outside = max((scores[c] for c in range(1, m + 1) if c not in committee), default=None)
    return outside is None or inside >= outside


def top_k(values: Sequence, k: int, m: int) -> Committee:
    """The ``k`` candidates with the largest ``values[c]``, smallest index first on ties."""
    order = sorted(range(1, m + 1), key=lambda c: (-values[c], c))
    return frozenset(order[:k])


def greedy_swm(profile: Profile, instance: Instance) -> Committee:
    check_profile(profile, instance)
    return top_k(approval_scores(profile, instance.m), instance.k, instance.m)


def committees(m: int, k: int) -> Iterator[Committee]:
    """All size-``k`` committees over ``1..m`` in lexicographic order."""
    for combo in itertools.combinations(range(1, m + 1), k):
        yield frozenset(combo)


def committee_key(committee: Committee) -> tuple:
    return tuple(sorted(committee))


def committee_count(m: int, k: int) -> int:
    return comb(m, k)
