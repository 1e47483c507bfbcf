import itertools
import random

import pytest

from linkcensus.exact import Vec3Q, det3
from linkcensus.graphs import Embedding, build_graph
from linkcensus.harness import reference_fixtures

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def refs():
    return {name: ef.embedding for name, ef in reference_fixtures().items()}


def random_ray(rng, bound=50):
    while True:
        v = Vec3Q(rng.randint(-bound, bound), rng.randint(-bound, bound), rng.randint(-bound, bound))
        if not v.is_zero():
            return v


def rays_in_general_position(rays):
    for a, b in itertools.combinations(rays, 2):
        if a.cross(b).is_zero():
            return False
    return all(det3(a, b, c) != 0 for a, b, c in itertools.combinations(rays, 3))


def random_embedding(rng, graph="K331", bound=20):
    g = build_graph(graph)
    while True:
        pts = {v: Vec3Q(*(rng.randint(-bound, bound) for _ in range(3))) for v in g.vertices}
        emb = Embedding(g, pts, check=False)
        if not emb.coplanar_quadruples():
            return emb


@pytest.fixture
def rng():
    return random.Random(12345)
