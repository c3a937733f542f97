import random
import sys

import pytest

from mediator_market.cons_list import ConsList

# length_def / set_def recurse once per element; lists up to 2**10 must fit
RECURSION_LIMIT = 10_000
if sys.getrecursionlimit() < RECURSION_LIMIT:
    sys.setrecursionlimit(RECURSION_LIMIT)


def random_lists(seed, count, max_len=2**10, domain=16):
    """Seeded (python list, ConsList) pairs; elements from a small int domain."""
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(0, max_len)
        xs = [rng.randrange(domain) for _ in range(n)]
        yield xs, ConsList.of(xs)


@pytest.fixture
def rng():
    return random.Random(20240917)


# -- acceptance verdict lines ----------------------------------------------------

VERDICTS = []


class Verdict:
    """Records one PASS/FAIL line per acceptance criterion."""

    def __init__(self, name):
        self.name = name
        self.detail = ""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        status = "PASS" if exc_type is None else "FAIL"
        line = f"[{status}] {self.name}"
        if self.detail:
            line += f" -- {self.detail}"
        if exc_type is not None and exc is not None:
            line += f" ({exc_type.__name__}: {str(exc).splitlines()[0] if str(exc) else ''})"
        VERDICTS.append(line)
        print(line)
        return False


@pytest.fixture
def verdict():
    return Verdict


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
