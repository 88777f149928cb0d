import random

import pytest


def random_bipartite(rng: random.Random, max_side: int = 8, max_label: int = 50):
    """Random connected bipartite intersection pattern as a red x blue
    matrix, by rejection sampling at a random edge density."""
    while True:
        r = rng.randint(1, max_side)
        b = rng.randint(1, max_side)
        p = rng.uniform(0.15, 1.0)
        N = [[rng.randint(1, max_label) if rng.random() < p else 0 for _ in range(b)] for _ in range(r)]
        if is_connected(N):
            return N


def is_connected(N) -> bool:
    r, b = len(N), len(N[0])
    seen = {("r", 0)}
    stack = [("r", 0)]
    while stack:
        side, k = stack.pop()
        if side == "r":
            nxt = [("b", j) for j in range(b) if N[k][j]]
        else:
            nxt = [("r", i) for i in range(r) if N[i][k]]
        for v in nxt:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == r + b


@pytest.fixture
def rng():
    return random.Random(20240229)


_ACCEPTANCE: list[str] = []


def record(name: str, ok: bool, detail: str):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"
    _ACCEPTANCE.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
