import numpy as np
import pytest

from comomab.core import Action, ActionSet

ACCEPTANCE_LINES = []


def record(criterion: str, passed: bool, detail: str = ""):
    ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_instance(rng, max_arms=10, max_actions=30, dim=2):
    """Random unit-weight action set covering every arm, with Bernoulli means."""
    n = int(rng.integers(2, max_arms + 1))
    n_actions = int(rng.integers(max(2, n // 2), max_actions + 1))
    actions = []
    uncovered = list(rng.permutation(n))
    while uncovered or len(actions) < n_actions:
        size = int(rng.integers(1, min(3, n) + 1))
        arms = set(rng.choice(n, size, replace=False).tolist())
        if uncovered:
            arms.add(int(uncovered.pop()))
        actions.append(Action.unit(sorted(arms), n))
        if len(actions) >= max_actions and not uncovered:
            break
    aset = ActionSet(actions[:max_actions] if not uncovered else actions, n, dim)
    return aset, rng.uniform(0.05, 0.95, (n, dim))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
