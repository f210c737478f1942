"""Exact social-welfare distributions.

* Joint model: accumulate each profile's probability at its welfare value.
* Lottery model: per voter, tabulate the distribution of ``|W & A_i|``
  (the contribution table) and convolve the rows voter by voter.
* Candidate-probability model: the welfare is a constant (number of certain
  approvals of members) plus a Poisson-binomial count over the uncertain
  (voter, member) cells.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .core import Committee, InvalidInputError, check_committee
from .models import (
    CandidateProbabilityModel,
    JointProbabilityModel,
    LotteryModel,
    UncertaintyModel,
)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class WelfareDistribution:
    """Exact pmf over integer welfare values.

    ``probs[j]`` is the probability of value ``offset + j``.  Leading and
    trailing zeros are trimmed so that equal distributions compare equal.
    """

    offset: int
    probs: tuple

    @classmethod
    def from_list(cls, probs: Sequence[Fraction], offset: int = 0) -> "WelfareDistribution":
        lo, hi = 0, len(probs)
        while lo < hi and probs[lo] == 0:
            lo += 1
        while hi > lo and probs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            raise InvalidInputError("distribution has no mass")
        return cls(offset + lo, tuple(Fraction(p) for p in probs[lo:hi]))

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, Fraction]) -> "WelfareDistribution":
        lo, hi = min(mapping), max(mapping)
        return cls.from_list([mapping.get(t, ZERO) for t in range(lo, hi + 1)], offset=lo)

    @property
    def support_min(self) -> int:
        return self.offset

    @property
    def support_max(self) -> int:
        return self.offset + len(self.probs) - 1

    def __getitem__(self, tau: int) -> Fraction:
        j = tau - self.offset
        return self.probs[j] if 0 <= j < len(self.probs) else ZERO

    def items(self) -> Iterable[tuple[int, Fraction]]:
        return ((self.offset + j, p) for j, p in enumerate(self.probs))

    def as_dict(self) -> dict[int, Fraction]:
        return {t: p for t, p in self.items() if p}

    def total(self) -> Fraction:
        return sum(self.probs, ZERO)

    def tail(self, tau: int) -> Fraction:
        """``Pr[X >= tau]``."""
        return sum((p for t, p in self.items() if t >= tau), ZERO)

    def cdf(self, tau: int) -> Fraction:
        """``Pr[X <= tau]``."""
        return sum((p for t, p in self.items() if t <= tau), ZERO)

    def mean(self) -> Fraction:
        return sum((t * p for t, p in self.items()), ZERO)


def contribution_table(model: LotteryModel, committee: Committee) -> list[list[Fraction]]:
    """``f[i][j] = Pr[|W & A_i| = j]`` for each voter (0-based row) and ``j = 0..|W|``."""
    size = len(committee)
    table = []
    for dist in model.voters:
        row = [ZERO] * (size + 1)
        for lam, s in dist:
            row[len(committee & s)] += lam
        table.append(row)
    return table


def convolve(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [ZERO] * (len(a) + len(b) - 1)
    for r, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[r + j] += x * y
    return out


def lottery_dp(table: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    """Distribution of the sum of independent per-voter contributions.

    Returns the full row ``dp[n][0..n*k]``.
    """
    dp = list(table[0])
    for row in table[1:]:
        dp = convolve(dp, row)
    return dp


def poisson_binomial(probabilities: Sequence[Fraction]) -> list[Fraction]:
    """Exact pmf of the number of successes among independent Bernoulli trials.

    Entry ``j`` is ``Pr[j successes]`` for ``j = 0..len(probabilities)``.  Each
    trial updates ``dp[j] = p * dp[j-1] + (1 - p) * dp[j]``.
    """
    dp = [ONE]
    for p in probabilities:
        q = 1 - p
        nxt = [ZERO] * (len(dp) + 1)
        for j, x in enumerate(dp):
            nxt[j] += q * x
            nxt[j + 1] += p * x
        dp = nxt
    return dp


def cp_cells(model: CandidateProbabilityModel, members: Iterable[int]) -> tuple[int, list[Fraction]]:
    """Split the (voter, member) cells into a certain-approval count and uncertain probabilities.

    Certain disapprovals are dropped since they never contribute.
    """
    certain = 0
    uncertain = []
    for row in model.p:
        for c in sorted(members):
            x = row[c - 1]
            if x == 1:
                certain += 1
            elif x > 0:
                uncertain.append(x)
    return certain, uncertain


def _distribution(model: UncertaintyModel, members: Committee) -> WelfareDistribution:
    if isinstance(model, JointProbabilityModel):
        acc: dict[int, Fraction] = {}
        for lam, profile in model.entries:
            sw = sum(len(members & a) for a in profile)
            acc[sw] = acc.get(sw, ZERO) + lam
        return WelfareDistribution.from_mapping(acc)
    if isinstance(model, LotteryModel):
        return WelfareDistribution.from_list(lottery_dp(contribution_table(model, members)))
    if isinstance(model, CandidateProbabilityModel):
        certain, uncertain = cp_cells(model, members)
        return WelfareDistribution.from_list(poisson_binomial(uncertain), offset=certain)
    raise InvalidInputError(f"unsupported model {type(model).__name__}")


def sw_dist(model: UncertaintyModel, committee: Iterable[int]) -> WelfareDistribution:
    """Full distribution of ``SW(W)`` over the plausible profiles.

    Parameters
    ----------
    model : UncertaintyModel
        A validated joint, lottery or candidate-probability model.
    committee : iterable of int
        Exactly ``k`` distinct candidates.

    Returns
    -------
    WelfareDistribution
        Exact probabilities, no enumeration of profiles for the lottery and
        candidate-probability models.

    Examples
    --------
    >>> from abcwelfare.models import CandidateProbabilityModel
    >>> from abcwelfare.core import Instance
    >>> cp = CandidateProbabilityModel.build(Instance(2, 2, 2), [["1", "0.5"], ["0.6", "0.8"]])
    >>> sw_dist(cp, {1, 2})[3]
    Fraction(23, 50)
    """
    w = check_committee(committee, model.instance)
    return _distribution(model, w)


def as_dist(model: UncertaintyModel, candidate: int) -> WelfareDistribution:
    """Distribution of one candidate's approval score (welfare of the singleton committee)."""
    (c,) = check_committee([candidate], model.instance, size=1)
    return _distribution(model, frozenset([c]))


def sw_tail(model: UncertaintyModel, committee: Iterable[int], tau: int) -> Fraction:
    return sw_dist(model, committee).tail(tau)
