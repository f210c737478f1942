import itertools
import random
from fractions import Fraction as F

import pytest

from abcwelfare.core import Instance, InvalidInputError, ResourceLimitError, committees, greedy_swm
from abcwelfare.distribution import sw_dist
from abcwelfare.models import CandidateProbabilityModel, LotteryModel
from abcwelfare.optimize import (
    RobustnessQuery,
    expected_scores,
    expected_sw,
    gen_unrobust_instance,
    max_exp_sw,
    max_swm,
    robust_check,
    uniform_single_voter,
)
from abcwelfare.oracle import oracle_expected_sw, oracle_max_swm, oracle_robust_prob
from abcwelfare.swmprob import swm_prob

from conftest import KINDS, random_instances

CERTAIN = CandidateProbabilityModel.build(Instance(3, 4, 2), [["1", "0", "1", "0"], ["1", "1", "0", "0"], ["0", "1", "1", "1"]])
CERTAIN_PROFILE = tuple(frozenset(c for c, x in enumerate(row, 1) if x == 1) for row in CERTAIN.p)


def test_expected_welfare_examples(cp_example, threeva_example):
    assert expected_sw(cp_example, {1, 2}) == F(29, 10)
    zero = CandidateProbabilityModel.build(Instance(2, 3, 2), [["0"] * 3] * 2)
    assert expected_sw(zero, {1, 2}) == 0
    # column sums of the worked 3VA matrix are 3/2, 3/2, 2, 3/2
    assert expected_scores(threeva_example)[1:] == [F(3, 2), F(3, 2), 2, F(3, 2)]
    assert expected_sw(threeva_example, {3, 4}) == F(7, 2)


def test_max_exp_sw_examples(threeva_example):
    res = max_exp_sw(threeva_example)
    assert res.committee == {1, 3}
    assert res.objective == F(7, 2)
    assert res.co_optima == (frozenset({1, 3}), frozenset({2, 3}), frozenset({3, 4}))
    assert max_exp_sw(CERTAIN).committee == greedy_swm(CERTAIN_PROFILE, CERTAIN.instance)
    uniform = CandidateProbabilityModel.build(Instance(2, 5, 3), [["1/3"] * 5] * 2)
    res = max_exp_sw(uniform)
    assert res.committee == {1, 2, 3} and len(res.co_optima) == 10


def test_max_swm_examples(threeva_example):
    res = max_swm(threeva_example)
    assert (res.committee, res.objective, res.co_optima) == (frozenset({1, 3}), F(19, 32), (frozenset({1, 3}),))
    single = CandidateProbabilityModel.build(Instance(1, 3, 2), [["0.9", "0.2", "0.7"]])
    res = max_swm(single)
    assert res.committee == {1, 3} and res.method == "cp-single-voter"
    assert res.objective == max(swm_prob(single, w).probability for w in committees(3, 2))
    res = max_swm(CERTAIN)
    assert (res.committee, res.objective) == (greedy_swm(CERTAIN_PROFILE, CERTAIN.instance), 1)


def test_expectation_winners_differ_from_probability_winner(threeva_example):
    exp_res = max_exp_sw(threeva_example)
    swm_res = max_swm(threeva_example)
    assert len(swm_res.co_optima) == 1
    assert swm_res.committee in exp_res.co_optima
    others = [w for w in exp_res.co_optima if w != swm_res.committee]
    assert all(swm_prob(threeva_example, w).probability < swm_res.objective for w in others)


def test_max_swm_matches_oracle():
    for kind in KINDS:
        for model in random_instances(kind, 80, seed=41):
            res = max_swm(model)
            assert (res.committee, res.objective) == oracle_max_swm(model)
            assert res.committee == min(res.co_optima, key=lambda w: sorted(w))


def test_max_swm_caps(lottery_example):
    with pytest.raises(ResourceLimitError, match="NP-hard"):
        max_swm(lottery_example, cap=17)
    wide = CandidateProbabilityModel.build(Instance(2, 30, 15), [["1/2"] * 30] * 2)
    with pytest.raises(ResourceLimitError, match="NP-hard"):
        max_swm(wide)


def test_expectation_matches_oracle_and_mean():
    for kind in KINDS:
        for model in random_instances(kind, 60, seed=42):
            best = max_exp_sw(model)
            values = {w: expected_sw(model, w) for w in committees(model.instance.m, model.instance.k)}
            assert best.objective == max(values.values())
            assert set(best.co_optima) == {w for w, v in values.items() if v == best.objective}
            for w, v in values.items():
                assert v == oracle_expected_sw(model, w) == sw_dist(model, w).mean()


def test_robustness_examples(threeva_example):
    half = RobustnessQuery(F(1, 2), F(1, 2))
    for w in max_exp_sw(threeva_example).co_optima:
        assert robust_check(threeva_example, w, half)[0]
    family = uniform_single_voter(3, F(1, 2))
    for c in (1, 2, 3):
        assert robust_check(family, {c}, half) == (True, F(5, 8))
    exact = RobustnessQuery(1, 1)
    assert robust_check(CERTAIN, greedy_swm(CERTAIN_PROFILE, CERTAIN.instance), exact) == (True, 1)


def test_robustness_matches_oracle():
    alphas = [F(1, 3), F(1, 2), F(2, 3), F(1)]
    for model in random_instances("candidate_prob", 40, seed=43) + random_instances("lottery", 40, seed=43):
        for w, alpha in itertools.product(committees(model.instance.m, model.instance.k), alphas):
            ok, p = robust_check(model, w, RobustnessQuery(alpha, F(1, 2)))
            assert p == oracle_robust_prob(model, w, alpha)
            assert ok == (p >= F(1, 2))


def test_non_integral_threshold_is_compared_exactly():
    # optimum welfare is 2 and {1, 3} gets 1, so the threshold 2*alpha decides
    model = LotteryModel.build(Instance(1, 3, 2), [[("1", {1, 2})]])
    assert robust_check(model, {1, 3}, RobustnessQuery(F(1, 2), 1)) == (True, 1)
    assert robust_check(model, {1, 3}, RobustnessQuery(F(51, 100), 1)) == (False, 0)


def test_expectation_median_bound_in_3va():
    for model in random_instances("3va", 100, seed=44):
        for w in max_exp_sw(model).co_optima:
            dist = sw_dist(model, w)
            assert dist.tail(dist.mean()) >= F(1, 2)


def test_query_validation():
    assert RobustnessQuery("0.5", "1/3") == RobustnessQuery(F(1, 2), F(1, 3))
    for alpha, beta in [(0, F(1, 2)), (F(3, 2), F(1, 2)), (F(1, 2), 0), (F(1, 2), "2")]:
        with pytest.raises(InvalidInputError):
            RobustnessQuery(alpha, beta)


def test_unrobust_generator():
    family = gen_unrobust_instance(20, F(1, 10), F(1, 2))
    assert family.value == F(1, 10) + F(9, 10) ** 20
    assert family.feasible and family.model.instance == Instance(1, 20, 1)
    assert family.model.p == ((F(1, 10),) * 20,)
    family = gen_unrobust_instance(1, F(1, 2), F(1, 2))
    assert family.value == 1 and not family.feasible and family.model is None
    for m in range(1, 6):
        assert not gen_unrobust_instance(m, F(3, 5), F(1, 2)).feasible
    for bad in [(0, "1/2", "1/2"), (3, "3/2", "1/2"), (3, "1/2", "0")]:
        with pytest.raises(InvalidInputError):
            gen_unrobust_instance(*bad)


def test_single_voter_co_optima_are_exact():
    rng = random.Random(45)
    menu = [F(i, 4) for i in range(5)]
    for _ in range(300):
        m = rng.randint(1, 7)
        k = rng.randint(1, m)
        model = CandidateProbabilityModel(Instance(1, m, k), (tuple(rng.choice(menu) for _ in range(m)),))
        res = max_swm(model)
        probs = {w: swm_prob(model, w).probability for w in committees(m, k)}
        best = max(probs.values())
        assert res.objective == best
        assert list(res.co_optima) == sorted((w for w, p in probs.items() if p == best), key=sorted)
