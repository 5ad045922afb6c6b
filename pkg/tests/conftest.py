import random
from fractions import Fraction

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return random.Random(20240611)


def random_cone_generators(r: random.Random, n: int, k: int, lo: int = -3, hi: int = 3):
    gens = []
    while len(gens) < k:
        v = tuple(Fraction(r.randint(lo, hi), r.randint(1, 3)) for _ in range(n))
        if any(v):
            gens.append(v)
    return gens


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    """Store the outcome of an acceptance criterion for the terminal summary."""
    ACCEPTANCE[criterion] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
