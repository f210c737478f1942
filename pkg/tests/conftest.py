import random

import pytest

from abcwelfare.fileformat import load_golden
from abcwelfare.generate import gen_random
from abcwelfare.models import plausible_count

KINDS = ("joint", "lottery", "candidate_prob", "3va")

# The oracle enumerates every plausible profile, so random instances whose
# profile count exceeds this are redrawn with the next seed.
PROFILE_BUDGET = 2048
SUITE_SIZE = 500


def random_instances(kind, count, seed, n_max=5, m_max=5, budget=PROFILE_BUDGET, **kwargs):
    rng = random.Random(f"{kind}-{seed}")
    out = []
    draw = 0
    while len(out) < count:
        draw += 1
        n = rng.randint(1, n_max)
        m = rng.randint(1, m_max)
        k = rng.randint(1, m)
        support = 5 if kind == "joint" else 3
        model = gen_random(kind, n, m, k, seed=rng.getrandbits(32), support=support, **kwargs)
        if plausible_count(model) <= budget:
            out.append(model)
    return out


@pytest.fixture(scope="session")
def suite():
    return {kind: random_instances(kind, SUITE_SIZE, seed=2024) for kind in KINDS}


@pytest.fixture(scope="session")
def lottery_example():
    return load_golden("lottery_example")


@pytest.fixture(scope="session")
def cp_example():
    return load_golden("cp_example")


@pytest.fixture(scope="session")
def threeva_example():
    return load_golden("threeva_example")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import CRITERIA

    outcomes = {}
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            if report.when != "call" and status == "passed":
                continue
            name = report.nodeid.rsplit("::", 1)[-1]
            if name.startswith("test_criterion_"):
                number = int(name.split("_")[2])
                if status != "passed" or number not in outcomes:
                    outcomes[number] = "PASS" if status == "passed" else "FAIL"
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(outcomes):
        terminalreporter.write_line(f"criterion {number:2d}: {outcomes[number]}  {CRITERIA[number]}")
