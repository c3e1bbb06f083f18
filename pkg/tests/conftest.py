import random
from fractions import Fraction
from functools import cmp_to_key

import pytest

from toric_kstab.cone import from_polytope
from toric_kstab.polytope import HalfPlane, PolygonError, angle_before, from_halfplanes
from toric_kstab.presets import get_preset

# Candidate primitive normals for random polygons; the axis directions are
# always used so every angular gap stays below pi.
AXES = [(1, 0), (0, 1), (-1, 0), (0, -1)]
EXTRA_NORMALS = [
    (1, 1), (-1, 1), (-1, -1), (1, -1),
    (2, 1), (1, 2), (-1, 2), (-2, 1), (-2, -1), (-1, -2), (1, -2), (2, -1),
    (3, 1), (1, 3), (-3, 2), (2, -3),
]


def _angle_cmp(a, b):
    if a == b:
        return 0
    return -1 if angle_before(a, b) else 1


def random_polygon(rng, max_level=10):
    """A random polygon with the origin in its interior."""
    while True:
        normals = AXES + rng.sample(EXTRA_NORMALS, rng.randint(0, 6))
        normals.sort(key=cmp_to_key(_angle_cmp))
        halfplanes = [HalfPlane(u, rng.randint(1, max_level)) for u in normals]
        try:
            return from_halfplanes(halfplanes)
        except PolygonError:
            continue


def random_symmetric_polygon(rng, max_level=10):
    """A random polygon invariant under x -> -x."""
    while True:
        normals = set(AXES)
        for u in rng.sample(EXTRA_NORMALS, rng.randint(0, 4)):
            normals.update({u, (-u[0], -u[1])})
        levels = {}
        for u in sorted(normals):
            levels.setdefault(u, rng.randint(1, max_level))
            levels[(-u[0], -u[1])] = levels[u]
        ordered = sorted(normals, key=cmp_to_key(_angle_cmp))
        try:
            return from_halfplanes([HalfPlane(u, levels[u]) for u in ordered])
        except PolygonError:
            continue


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def example1():
    return get_preset("example1")


@pytest.fixture(scope="session")
def example2():
    return get_preset("example2")


@pytest.fixture(scope="session")
def example2_corrected():
    return get_preset("example2-corrected")


@pytest.fixture(scope="session")
def example3():
    return get_preset("example3")


@pytest.fixture(scope="session")
def example1_polygon(example1):
    return from_halfplanes(example1.spec.halfplanes)


@pytest.fixture(scope="session")
def example1_cone(example1):
    return from_polytope(example1.spec.halfplanes)


def frac_points(points):
    return tuple((Fraction(x), Fraction(y)) for x, y in points)
