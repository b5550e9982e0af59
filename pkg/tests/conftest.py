import itertools

import pytest

from ucdensity.search import enumerate_ucf


def brute_closure(masks):
    """Repeated pairwise unions until nothing new appears."""
    current = set(masks)
    while True:
        extra = {a | b for a in current for b in current} - current
        if not extra:
            return current
        current |= extra


def relabel_min(n, masks):
    """Lexicographically least sorted mask tuple over all relabellings."""
    best = None
    for perm in itertools.permutations(range(n)):
        img = []
        for mask in masks:
            out = 0
            for a in range(n):
                if mask >> a & 1:
                    out |= 1 << perm[a]
            img.append(out)
        img = tuple(sorted(img))
        if best is None or img < best:
            best = img
    return best


@pytest.fixture(scope="session")
def corpus_le4():
    return [f for n in range(1, 5) for f in enumerate_ucf(n)]


@pytest.fixture(scope="session")
def corpus_le5():
    return [f for n in range(1, 6) for f in enumerate_ucf(n)]


# Acceptance verdict lines, filled by test_acceptance.py and echoed in the
# terminal summary so they appear in plain ``pytest`` output.
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
