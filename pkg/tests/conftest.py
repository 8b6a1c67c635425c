import random
from fractions import Fraction

import pytest

from ooperators.tensor import qarray


def rand_tensor(rng, shape, lo=-2, hi=2, den=(1, 1, 2)):
    n = 1
    for s in shape:
        n *= s
    vals = [Fraction(rng.randint(lo, hi), rng.choice(den)) for _ in range(n)]
    return qarray(vals).reshape(shape)


@pytest.fixture
def rng():
    return random.Random(20240601)


VERDICTS = []


def verdict(number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    VERDICTS.append(line)
    print(line)
    assert ok, line


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(VERDICTS, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
