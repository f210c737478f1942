import collections
import math
import random
from fractions import Fraction as F

import pytest

from abcwelfare.core import Instance, InvalidInputError, ResourceLimitError
from abcwelfare.models import (
    CandidateProbabilityModel,
    JointProbabilityModel,
    LotteryModel,
    canonical_pairs,
    cp_to_lottery,
    enumerate_plausible,
    lottery_to_joint,
    parse_probability,
    profile_key,
    sample,
    validate,
)

from conftest import random_instances


def test_parse_probability_is_exact():
    assert parse_probability("0.3") == F(3, 10)
    assert parse_probability("7/20") == parse_probability("0.35")
    assert parse_probability(0.1) == F(1, 10)
    assert parse_probability(1) == 1
    for bad in ("abc", "1/0", None, True, [0.5]):
        with pytest.raises(InvalidInputError):
            parse_probability(bad)


def test_validate_examples(lottery_example):
    assert validate(lottery_example) == []
    short = LotteryModel.build(
        Instance(2, 2, 1), [[("1", {1})], [("0.5", {1}), ("0.4", {2})]]
    )
    assert validate(short) == ["voter 2 distribution sums to 9/10"]
    cp = CandidateProbabilityModel.build(Instance(1, 2, 1), [["7/5", "0"]])
    assert any("probability out of range" in v for v in validate(cp))


def test_validate_flags_other_violations():
    inst = Instance(2, 2, 1)
    zero = LotteryModel.build(inst, [[("1", {1}), ("0", {2})], [("1", {1})]])
    assert any("non-positive" in v for v in validate(zero))
    wrong_voters = LotteryModel.build(inst, [[("1", {1})]])
    assert any("expected n=2" in v for v in validate(wrong_voters))
    unknown = LotteryModel.build(inst, [[("1", {3})], [("1", {1})]])
    assert any("unknown candidates" in v for v in validate(unknown))
    bad_3va = CandidateProbabilityModel.build(inst, [["1/4", "0"], ["1", "1"]], is_3va=True)
    assert any("3va" in v for v in validate(bad_3va))
    ragged = CandidateProbabilityModel.build(inst, [["1"], ["1", "0"]])
    assert any("expected m=2" in v for v in validate(ragged))
    joint = JointProbabilityModel.build(inst, [("1/2", [{1}, {2}]), ("1/2", [{1}, {2}])])
    assert any("duplicates" in v for v in validate(joint))
    assert validate(JointProbabilityModel(inst, ())) == ["joint model has no profiles"]


def test_lottery_duplicates_are_merged():
    model = LotteryModel.build(Instance(1, 2, 1), [[("0.25", {1}), ("0.5", {2}), ("0.25", [1])]])
    assert model.voters == (((F(1, 2), frozenset({1})), (F(1, 2), frozenset({2}))),)
    assert validate(model) == []


def test_lottery_to_joint_examples(lottery_example):
    joint = lottery_to_joint(lottery_example)
    assert len(joint.entries) == 18
    assert sum(p for p, _ in joint.entries) == 1
    lookup = {profile_key(a): p for p, a in joint.entries}
    assert lookup[((1, 2), (1, 2), (1,))] == F(3, 50)

    certain = LotteryModel.build(Instance(2, 2, 1), [[("1", {1})], [("1", {2})]])
    assert lottery_to_joint(certain).entries == ((1, (frozenset({1}), frozenset({2}))),)

    uniform = LotteryModel.build(Instance(2, 2, 1), [[("1/2", {1}), ("1/2", {2})]] * 2)
    assert [p for p, _ in lottery_to_joint(uniform).entries] == [F(1, 4)] * 4

    with pytest.raises(ResourceLimitError) as info:
        lottery_to_joint(lottery_example, cap=17)
    assert info.value.required == 18


def _support(lottery):
    return {frozenset(s): p for p, s in lottery.voters[0]}


def test_cp_to_lottery_examples():
    inst = Instance(1, 3, 1)
    certain = cp_to_lottery(CandidateProbabilityModel.build(inst, [["1", "0", "0"]]))
    assert _support(certain) == {frozenset({1}): 1}
    one = cp_to_lottery(CandidateProbabilityModel.build(Instance(1, 2, 1), [["1", "1/2"]]))
    assert _support(one) == {frozenset({1}): F(1, 2), frozenset({1, 2}): F(1, 2)}
    two = cp_to_lottery(CandidateProbabilityModel.build(Instance(1, 2, 1), [["1/2", "4/5"]]))
    assert _support(two) == {
        frozenset({1, 2}): F(2, 5),
        frozenset({1}): F(1, 10),
        frozenset({2}): F(2, 5),
        frozenset(): F(1, 10),
    }
    with pytest.raises(ResourceLimitError):
        cp_to_lottery(CandidateProbabilityModel.build(Instance(1, 3, 1), [["1/2"] * 3]), cap=2)


def test_enumerate_plausible_examples(lottery_example, threeva_example):
    a = (frozenset({1}), frozenset({2}))
    b = (frozenset({2}), frozenset({2}))
    joint = JointProbabilityModel(Instance(2, 2, 1), ((F(1, 3), a), (F(2, 3), b)))
    assert enumerate_plausible(joint) == [(F(1, 3), a), (F(2, 3), b)]

    pairs = enumerate_plausible(lottery_example)
    assert len(pairs) == 18 and sum(p for p, _ in pairs) == 1

    pairs = enumerate_plausible(threeva_example)
    assert len(pairs) == 32
    assert {p for p, _ in pairs} == {F(1, 32)}
    assert len({profile_key(a) for _, a in pairs}) == 32

    with pytest.raises(ResourceLimitError):
        enumerate_plausible(threeva_example, cap=31)


def test_conversion_chain_on_random_models():
    for model in random_instances("lottery", 60, seed=3):
        assert canonical_pairs(enumerate_plausible(model)) == canonical_pairs(
            enumerate_plausible(lottery_to_joint(model))
        )
    for model in random_instances("candidate_prob", 60, seed=3):
        assert canonical_pairs(enumerate_plausible(model)) == canonical_pairs(
            enumerate_plausible(cp_to_lottery(model))
        )


def test_normalization_and_3va_subtyping():
    for kind in ("joint", "lottery", "candidate_prob", "3va"):
        for model in random_instances(kind, 40, seed=5):
            assert sum(p for p, _ in enumerate_plausible(model)) == 1
    for model in random_instances("3va", 40, seed=6):
        assert validate(CandidateProbabilityModel(model.instance, model.p)) == []
        u = sum(model.uncertain_counts())
        assert all(p == F(1, 2**u) for p, _ in enumerate_plausible(model))


def test_sample_determinism(lottery_example, threeva_example):
    certain = CandidateProbabilityModel.build(Instance(2, 3, 1), [["1", "0", "1"], ["0", "0", "0"]])
    for seed in range(5):
        assert sample(certain, seed) == (frozenset({1, 3}), frozenset())
    for model in (lottery_example, threeva_example, lottery_to_joint(lottery_example)):
        assert sample(model, 12345) == sample(model, 12345)
        plausible = {profile_key(a) for _, a in enumerate_plausible(model)}
        assert all(profile_key(sample(model, s)) in plausible for s in range(50))


def test_sample_frequencies_within_five_sigma(threeva_example):
    draws = 100_000
    rng = random.Random(99)
    counts = collections.Counter(profile_key(sample(threeva_example, rng.getrandbits(64))) for _ in range(draws))
    assert len(counts) == 32
    p = 1 / 32
    sigma = math.sqrt(draws * p * (1 - p))
    assert all(abs(c - draws * p) <= 5 * sigma for c in counts.values())
