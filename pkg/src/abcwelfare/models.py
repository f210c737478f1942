"""Uncertain approval preferences.

Four models are supported:

* ``JointProbabilityModel``: an explicit distribution over whole profiles.
* ``LotteryModel``: independent per-voter distributions over approval sets.
* ``CandidateProbabilityModel``: independent per-(voter, candidate) approval
  probabilities; with ``is_3va=True`` every entry is restricted to
  ``{0, 1/2, 1}``.

All probabilities are :class:`fractions.Fraction` so that every downstream
computation is exact.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .core import InvalidInputError, Instance, Profile, ResourceLimitError, make_profile

DEFAULT_PROFILE_CAP = 10**6
DEFAULT_UNCERTAIN_CAP = 20
DEFAULT_COMMITTEE_CAP = 10**5

HALF = Fraction(1, 2)
THREE_VALUED = (Fraction(0), HALF, Fraction(1))


def parse_probability(value) -> Fraction:
    """Parse ``"0.35"``, ``"7/20"``, ints or JSON floats into an exact Fraction.

    Floats go through their shortest ``repr`` so that ``0.3`` becomes ``3/10``.
    """
    if isinstance(value, bool):
        raise InvalidInputError(f"not a probability: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        value = repr(value)
    if not isinstance(value, str):
        raise InvalidInputError(f"not a probability: {value!r}")
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"cannot parse probability {value!r}") from exc


@dataclass(frozen=True)
class JointProbabilityModel:
    instance: Instance
    entries: tuple  # tuple[tuple[Fraction, Profile], ...]

    kind = "joint"

    @classmethod
    def build(cls, instance: Instance, entries: Iterable[tuple]) -> "JointProbabilityModel":
        return cls(instance, tuple((parse_probability(p), make_profile(sets)) for p, sets in entries))


@dataclass(frozen=True)
class LotteryModel:
    instance: Instance
    voters: tuple  # tuple[tuple[tuple[Fraction, frozenset], ...], ...]

    kind = "lottery"

    @classmethod
    def build(cls, instance: Instance, voters: Iterable[Iterable[tuple]]) -> "LotteryModel":
        """Build from ``[(prob, set), ...]`` per voter, merging repeated sets."""
        merged = []
        for dist in voters:
            acc: dict[frozenset, Fraction] = {}
            for p, s in dist:
                s = frozenset(s)
                acc[s] = acc.get(s, Fraction(0)) + parse_probability(p)
            merged.append(tuple((p, s) for s, p in acc.items()))
        return cls(instance, tuple(merged))

    def support_sizes(self) -> list[int]:
        return [len(dist) for dist in self.voters]


@dataclass(frozen=True)
class CandidateProbabilityModel:
    instance: Instance
    p: tuple  # n rows of m Fractions; p[i-1][c-1] is voter i's approval probability for c
    is_3va: bool = False

    @property
    def kind(self) -> str:
        return "3va" if self.is_3va else "candidate_prob"

    @classmethod
    def build(cls, instance: Instance, matrix: Iterable[Iterable], is_3va: bool = False):
        return cls(instance, tuple(tuple(parse_probability(x) for x in row) for row in matrix), is_3va)

    def prob(self, voter: int, candidate: int) -> Fraction:
        return self.p[voter - 1][candidate - 1]

    def column(self, candidate: int) -> list[Fraction]:
        return [row[candidate - 1] for row in self.p]

    def uncertain_counts(self) -> list[int]:
        return [sum(1 for x in row if 0 < x < 1) for row in self.p]


UncertaintyModel = Union[JointProbabilityModel, LotteryModel, CandidateProbabilityModel]


def _profile_problems(profile, instance: Instance) -> list[str]:
    out = []
    if len(profile) != instance.n:
        out.append(f"has {len(profile)} approval sets, expected n={instance.n}")
    for i, s in enumerate(profile, start=1):
        bad = sorted(c for c in s if not 1 <= c <= instance.m)
        if bad:
            out.append(f"voter {i} approves unknown candidates {bad}")
    return out


def validate(model: UncertaintyModel) -> list[str]:
    """Return a list of human-readable violations; empty means valid."""
    problems: list[str] = []
    inst = model.instance
    if isinstance(model, JointProbabilityModel):
        if not model.entries:
            problems.append("joint model has no profiles")
        total = Fraction(0)
        seen = set()
        for r, (lam, profile) in enumerate(model.entries, start=1):
            if lam <= 0:
                problems.append(f"profile {r} has non-positive probability {lam}")
            total += lam
            problems.extend(f"profile {r} {msg}" for msg in _profile_problems(profile, inst))
            if profile in seen:
                problems.append(f"profile {r} duplicates an earlier profile")
            seen.add(profile)
        if model.entries and total != 1:
            problems.append(f"profile probabilities sum to {total}")
    elif isinstance(model, LotteryModel):
        if len(model.voters) != inst.n:
            problems.append(f"lottery has {len(model.voters)} voters, expected n={inst.n}")
        for i, dist in enumerate(model.voters, start=1):
            if not dist:
                problems.append(f"voter {i} has an empty distribution")
                continue
            total = Fraction(0)
            seen = set()
            for lam, s in dist:
                if lam <= 0:
                    problems.append(f"voter {i} set {sorted(s)} has non-positive probability {lam}")
                total += lam
                bad = sorted(c for c in s if not 1 <= c <= inst.m)
                if bad:
                    problems.append(f"voter {i} set contains unknown candidates {bad}")
                if s in seen:
                    problems.append(f"voter {i} lists set {sorted(s)} twice")
                seen.add(s)
            if total != 1:
                problems.append(f"voter {i} distribution sums to {total}")
    elif isinstance(model, CandidateProbabilityModel):
        if len(model.p) != inst.n:
            problems.append(f"matrix has {len(model.p)} rows, expected n={inst.n}")
        for i, row in enumerate(model.p, start=1):
            if len(row) != inst.m:
                problems.append(f"voter {i} row has {len(row)} entries, expected m={inst.m}")
            for c, x in enumerate(row, start=1):
                if not 0 <= x <= 1:
                    problems.append(f"voter {i} candidate {c}: probability out of range ({x})")
                elif model.is_3va and x not in THREE_VALUED:
                    problems.append(f"voter {i} candidate {c}: 3va entry {x} not in {{0, 1/2, 1}}")
    else:
        problems.append(f"unknown model type {type(model).__name__}")
    return problems


def ensure_valid(model: UncertaintyModel) -> UncertaintyModel:
    problems = validate(model)
    if problems:
        raise InvalidInputError("; ".join(problems))
    return model


def plausible_count(model: UncertaintyModel) -> int:
    """Number of plausible profiles, computed without enumerating them."""
    if isinstance(model, JointProbabilityModel):
        return len(model.entries)
    if isinstance(model, LotteryModel):
        return math.prod(model.support_sizes())
    return 2 ** sum(model.uncertain_counts())


def _check_cap(required: int, cap: int, what: str) -> None:
    if required > cap:
        raise ResourceLimitError(
            f"{what}: {required} exceeds the enumeration cap of {cap}", required=required, cap=cap
        )


def check_committee_cap(instance: Instance, cap: int = DEFAULT_COMMITTEE_CAP) -> int:
    count = math.comb(instance.m, instance.k)
    _check_cap(count, cap, f"committee count C({instance.m}, {instance.k})")
    return count


def lottery_to_joint(model: LotteryModel, cap: int = DEFAULT_PROFILE_CAP) -> JointProbabilityModel:
    """Expand independent voter lotteries into the equivalent joint distribution."""
    sizes = model.support_sizes()
    _check_cap(math.prod(sizes), cap, f"lottery product of support sizes {sizes}")
    return JointProbabilityModel(model.instance, tuple(_product(model.voters)))


def _product(voters: Sequence[Sequence[tuple]]) -> list[tuple[Fraction, Profile]]:
    out = [(Fraction(1), ())]
    for dist in voters:
        out = [(p * lam, prefix + (s,)) for p, prefix in out for lam, s in dist]
    return out


def _row_distribution(row: Sequence[Fraction]) -> list[tuple[Fraction, frozenset]]:
    certain = [c for c, x in enumerate(row, start=1) if x == 1]
    uncertain = [(c, x) for c, x in enumerate(row, start=1) if 0 < x < 1]
    out = []
    for bits in itertools.product((True, False), repeat=len(uncertain)):
        prob = Fraction(1)
        members = list(certain)
        for (c, x), on in zip(uncertain, bits):
            if on:
                prob *= x
                members.append(c)
            else:
                prob *= 1 - x
        out.append((prob, frozenset(members)))
    return out


def cp_to_lottery(model: CandidateProbabilityModel, cap: int = DEFAULT_UNCERTAIN_CAP) -> LotteryModel:
    """Per voter, list every approval set consistent with the certain entries."""
    for i, u in enumerate(model.uncertain_counts(), start=1):
        _check_cap(u, cap, f"voter {i} uncertain entries")
    return LotteryModel(model.instance, tuple(tuple(_row_distribution(row)) for row in model.p))


def enumerate_plausible(
    model: UncertaintyModel,
    cap: int = DEFAULT_PROFILE_CAP,
    uncertain_cap: int = DEFAULT_UNCERTAIN_CAP,
) -> list[tuple[Fraction, Profile]]:
    """Every plausible profile exactly once, paired with its exact probability."""
    return list(_plausible(model, cap, uncertain_cap))


@functools.lru_cache(maxsize=32)
def _plausible(model, cap: int, uncertain_cap: int) -> tuple:
    _check_cap(plausible_count(model), cap, "plausible profile count")
    if isinstance(model, JointProbabilityModel):
        return model.entries
    if isinstance(model, CandidateProbabilityModel):
        model = cp_to_lottery(model, uncertain_cap)
    return tuple(_product(model.voters))


def _draw(rng: random.Random, weighted: Sequence[tuple[Fraction, object]]):
    u = Fraction(rng.getrandbits(64), 1 << 64)
    acc = Fraction(0)
    for lam, item in weighted:
        acc += lam
        if u < acc:
            return item
    return weighted[-1][1]


def sample(model: UncertaintyModel, seed: int) -> Profile:
    """Draw one plausible profile; the same ``(model, seed)`` always gives the same profile."""
    rng = random.Random(seed)
    if isinstance(model, JointProbabilityModel):
        return _draw(rng, model.entries)
    if isinstance(model, LotteryModel):
        return tuple(_draw(rng, dist) for dist in model.voters)
    profile = []
    for row in model.p:
        approved = set()
        for c, x in enumerate(row, start=1):
            if Fraction(rng.getrandbits(64), 1 << 64) < x:
                approved.add(c)
        profile.append(frozenset(approved))
    return tuple(profile)


def profile_key(profile: Profile) -> tuple:
    return tuple(tuple(sorted(s)) for s in profile)


def canonical_pairs(pairs: Iterable[tuple[Fraction, Profile]]) -> list[tuple]:
    """Sorted ``(profile_key, probability)`` list, for multiset comparisons."""
    return sorted((profile_key(a), p) for p, a in pairs)
