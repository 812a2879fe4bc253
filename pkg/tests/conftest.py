from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, settings

from ripslab.simplicial import SimplicialComplex

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def rp2() -> SimplicialComplex:
    # 6-vertex projective plane
    return SimplicialComplex([
        (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
        (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5),
    ])


def csaszar_torus() -> SimplicialComplex:
    return SimplicialComplex([tuple(sorted(((i, (i + 1) % 7, (i + 3) % 7)))) for i in range(7)]
                             + [tuple(sorted((i, (i + 2) % 7, (i + 3) % 7))) for i in range(7)])


def icosahedron() -> SimplicialComplex:
    # vertex 0 top, 1..5 upper ring, 6..10 lower ring, 11 bottom
    faces = []
    for i in range(5):
        a, b = 1 + i, 1 + (i + 1) % 5
        c, d = 6 + i, 6 + (i + 1) % 5
        faces += [(0, a, b), (11, c, d), (a, b, c), (b, c, d)]
    return SimplicialComplex(faces)


@pytest.fixture
def square_coords():
    return {0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (0, 1)}


TRIANGLE = {0: (F(0), F(0)), 1: (F(1), F(0)), 2: (F(1, 2), F(433, 500))}


def _embedded(coords, facets):
    from ripslab.universality import EmbeddedComplex

    coords = {v: tuple(F(c) for c in p) for v, p in coords.items()}
    return EmbeddedComplex(SimplicialComplex(facets), coords)


def square_ec():
    return _embedded({0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (0, 1)}, [(0, 1), (1, 2), (2, 3), (0, 3)])


def triangle_ec():
    return _embedded(TRIANGLE, [(0, 1), (1, 2), (0, 2)])


def wedge_ec():
    coords = {**TRIANGLE, 3: (F(-1), F(0)), 4: (F(-1, 2), F(-433, 500))}
    return _embedded(coords, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])


def tetrahedron_ec():
    h = F(1, 2)
    coords = {0: (h, h, h), 1: (h, -h, -h), 2: (-h, h, -h), 3: (-h, -h, h)}
    return _embedded(coords, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])


CORPUS = {"square": square_ec, "triangle": triangle_ec, "wedge": wedge_ec, "tetrahedron": tetrahedron_ec}


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
