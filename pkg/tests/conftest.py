import random
import time
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

import pytest

from arcop.arcgraph import GapGraph, WeightedArcGraph, enumerate_graphs
from arcop.glue import disc_gap

FIXTURES = Path(__file__).parent / "fixtures"

_RESULTS = []


@contextmanager
def criterion(number: int, title: str, budget: float):
    """Time one acceptance criterion and record a PASS/FAIL line for the summary."""
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed < budget
        status = "PASS" if ok and within else "FAIL"
        line = f"criterion {number:2d}: {status}  {title}  ({elapsed:.2f} s, budget {budget:g} s)"
        _RESULTS.append((number, line))
        print(line)
    assert within, f"criterion {number} took {elapsed:.1f} s, budget {budget} s"


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_RESULTS):
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def graph_pool():
    """GTree graphs with 1 to 3 inputs, at most 4 arcs and genus at most 1."""
    pool = []
    for n in (1, 2, 3):
        for g in (0, 1):
            pool += enumerate_graphs(n, 4, genus=g, max_genus=1)
    return pool


def random_weights(rng: random.Random, count: int, generic: bool = False):
    if generic:
        return tuple(Fraction(rng.randint(1, 10**6), 10**6) for _ in range(count))
    return tuple(Fraction(rng.randint(1, 5), rng.randint(1, 3)) for _ in range(count))


def random_weighted(rng: random.Random, pool, generic: bool = False) -> WeightedArcGraph:
    g = rng.choice(pool)
    return WeightedArcGraph(g, random_weights(rng, g.arc_count, generic))


def random_gap(rng: random.Random, pool, allow_empty: bool = True) -> GapGraph:
    if allow_empty and rng.random() < 0.25:
        return disc_gap(Fraction(rng.randint(1, 4), rng.randint(1, 3)), rng.randint(0, 1))
    g = rng.choice(pool)
    gaps = tuple(Fraction(rng.choice([0, 0, 1, 2]), rng.randint(1, 3)) for _ in range(g.window_size(0)))
    return GapGraph(g, random_weights(rng, g.arc_count), gaps, Fraction(rng.choice([0, 1, 3]), 2))
