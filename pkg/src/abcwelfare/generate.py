"""Seeded random instances for tests and benchmarks."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .core import InvalidInputError, Instance
from .models import (
    THREE_VALUED,
    CandidateProbabilityModel,
    JointProbabilityModel,
    LotteryModel,
    UncertaintyModel,
    ensure_valid,
    parse_probability,
)

CP_MENU = tuple(Fraction(i, 4) for i in range(5))


def _weights(rng: random.Random, count: int) -> list[Fraction]:
    raw = [rng.randint(1, 9) for _ in range(count)]
    total = sum(raw)
    return [Fraction(w, total) for w in raw]


def _random_set(rng: random.Random, m: int) -> frozenset:
    return frozenset(c for c in range(1, m + 1) if rng.random() < 0.5)


def _distinct(rng: random.Random, count: int, draw) -> list:
    out: list = []
    seen = set()
    while len(out) < count:
        item = draw()
        if item not in seen:
            seen.add(item)
            out.append(item)
    return out


def gen_random(
    kind: str,
    n: int,
    m: int,
    k: int,
    seed: int,
    support: int = 3,
    menu: Sequence | None = None,
) -> UncertaintyModel:
    """Random valid model of the given kind; identical output for identical arguments.

    ``support`` bounds the number of support sets per voter (lottery) or of
    listed profiles (joint); each is drawn uniformly from 1..support.  ``menu``
    is the finite set candidate probabilities are drawn from.
    """
    instance = Instance(n, m, k)
    if support < 1:
        raise InvalidInputError(f"support must be at least 1, got {support}")
    rng = random.Random(seed)
    if kind == "joint":
        count = min(rng.randint(1, support), 2 ** (n * m))
        profiles = _distinct(rng, count, lambda: tuple(_random_set(rng, m) for _ in range(n)))
        model = JointProbabilityModel(instance, tuple(zip(_weights(rng, count), profiles)))
    elif kind == "lottery":
        voters = []
        for _ in range(n):
            count = min(rng.randint(1, support), 2**m)
            sets = _distinct(rng, count, lambda: _random_set(rng, m))
            voters.append(tuple(zip(_weights(rng, count), sets)))
        model = LotteryModel(instance, tuple(voters))
    elif kind in ("candidate_prob", "3va"):
        if menu is None:
            menu = THREE_VALUED if kind == "3va" else CP_MENU
        menu = [parse_probability(x) for x in menu]
        if not menu:
            raise InvalidInputError("probability menu is empty")
        matrix = tuple(tuple(rng.choice(menu) for _ in range(m)) for _ in range(n))
        model = CandidateProbabilityModel(instance, matrix, is_3va=(kind == "3va"))
    else:
        raise InvalidInputError(f"unknown model kind '{kind}'")
    return ensure_valid(model)
