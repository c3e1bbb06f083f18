from fractions import Fraction

import pytest

from conftest import frac_points
from toric_kstab.cone import (
    ConeError,
    DuplicateRay,
    EmptySlice,
    NotFullDimensional,
    NotStronglyConvex,
    RayInteriorToHull,
    RaysNotCyclic,
    SlicePolyhedron,
    cross_section,
    from_polytope,
    from_rays,
    hull_rays,
    is_reeb_interior,
    listed_pair_smoothness,
    pair_minor_gcd,
    smooth_away_from_vertex,
)
from toric_kstab.exact import det2, dot
from toric_kstab.presets import get_preset

OCTANT = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_octant_normals_point_inward() -> None:
    cone = from_rays(OCTANT)
    assert cone.facet_normals == ((0, 0, 1), (1, 0, 0), (0, 1, 0))
    for i, nu in enumerate(cone.facet_normals):
        a, b = cone.facet_rays(i)
        assert dot(nu, a) == 0 and dot(nu, b) == 0
    assert cone.contains((1, 2, 3))
    assert not cone.contains((-1, 2, 3))


def test_either_cyclic_orientation_is_accepted() -> None:
    forward = from_rays(OCTANT)
    backward = from_rays(list(reversed(OCTANT)))
    for cone in (forward, backward):
        assert all(dot(nu, (1, 1, 1)) > 0 for nu in cone.facet_normals)


@pytest.mark.parametrize("rays, error", [
    ([(1, 0, 0), (0, 1, 0), (0, 0, 0)], ConeError),
    ([(1, 0, 0), (2, 0, 0), (0, 1, 0), (0, 0, 1)], DuplicateRay),
    ([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, 0, 1)], NotStronglyConvex),
    ([(1, 0, 0), (0, 1, 0), (1, 1, 0)], NotFullDimensional),
    ([(1, 0, 0), (0, 1, 0)], NotFullDimensional),
    ([(1, 0, 1), (0, 1, 1), (1, 1, 3), (-1, 0, 1), (0, -1, 1)], RayInteriorToHull),
    ([(1, 0, 1), (-1, 0, 1), (0, 1, 1), (0, -1, 1)], RaysNotCyclic),
])
def test_from_rays_errors(rays, error) -> None:
    with pytest.raises(error):
        from_rays(rays)


def test_printed_example2_has_an_interior_ray(example2) -> None:
    with pytest.raises(RayInteriorToHull) as info:
        from_rays(example2.spec.cone_rays)
    assert info.value.index == 7
    hull = hull_rays(example2.spec.cone_rays)
    assert (-1, -1, 10) not in hull
    assert len(hull) == 7
    assert is_reeb_interior(from_rays(hull), (0, 0, 1)).interior


def test_listed_pair_smoothness_of_printed_example2(example2) -> None:
    report = listed_pair_smoothness(example2.spec.cone_rays)
    assert not report.smooth
    assert [(p.index, p.next_index) for p in report.failures] == [(6, 7)]
    failure = report.failures[0]
    assert failure.minors == (0, -3, -3)
    assert failure.gcd == 3


@pytest.mark.parametrize("name", ["example1", "example2-corrected", "example3", "cp1cp1-minres-q3"])
def test_preset_cones_are_smooth_and_reeb_interior(name) -> None:
    cone = from_polytope(get_preset(name).spec.halfplanes)
    assert smooth_away_from_vertex(cone).smooth
    assert is_reeb_interior(cone, (0, 0, 1))


def test_quotient_cone_is_singular() -> None:
    cone = from_polytope(get_preset("cp1cp1-quotient:3").spec.halfplanes)
    report = smooth_away_from_vertex(cone)
    assert [(p.index, p.next_index) for p in report.failures] == [(1, 2), (3, 4)]
    assert pair_minor_gcd((1, 0, 1), (1, 3, 1)) == 3
    assert pair_minor_gcd((1, 3, 1), (-1, 0, 1)) == 1
    assert is_reeb_interior(cone, (0, 0, 1))


def test_reeb_violation_names_a_facet(example1_cone) -> None:
    check = is_reeb_interior(example1_cone, (0, 0, -1))
    assert not check
    assert check.violating_facet == 1
    assert check.pairings[0] <= 0
    boundary = is_reeb_interior(example1_cone, (1, 0, 9))
    assert not boundary.interior
    assert boundary.pairings[boundary.violating_facet - 1] == 0


def test_example1_slice_at_e1(example1_cone) -> None:
    s = cross_section(example1_cone, (1, 0, 0))
    assert s.compact_vertices == frac_points([(0, 9), (1, 8), (2, 8), (3, 10)])
    assert s.tail_rays == ((1, 6), (-1, 6))
    assert det2(*s.tail_rays) > 0
    assert not s.bounded
    assert s.to_space((1, 8)) == (1, 1, 8)
    assert example1_cone.contains(s.to_space((1, 8)))
    assert s.contains((Fraction(3, 2), 9))
    assert not s.contains((0, 0))


def test_example1_slice_at_minus_e1(example1_cone) -> None:
    s = cross_section(example1_cone, (-1, 0, 0))
    assert set(s.compact_vertices) == set(frac_points([(0, 9), (-1, 8), (-2, 8), (-3, 10)]))
    assert len(s.tail_rays) == 2


def test_slice_vertices_lie_in_the_cone(example1_cone) -> None:
    for weight in [(1, 0, 0), (0, 1, 0), (1, 1, 1), (0, 0, 1), (2, -1, 1)]:
        s = cross_section(example1_cone, weight)
        for v in s.compact_vertices:
            point = s.to_space(v)
            assert dot(weight, point) == 1
            assert example1_cone.contains(point)


def test_reeb_interior_iff_bounded_slice(example1_cone) -> None:
    assert is_reeb_interior(example1_cone, (0, 0, 1))
    bounded = cross_section(example1_cone, (0, 0, 1))
    assert bounded.bounded
    assert len(bounded.compact_vertices) == 10
    assert not is_reeb_interior(example1_cone, (1, 0, 0))
    assert not cross_section(example1_cone, (1, 0, 0)).bounded


def test_bounded_slice_is_counterclockwise(example1_cone) -> None:
    s = cross_section(example1_cone, (0, 0, 1))
    vs = s.compact_vertices
    n = len(vs)
    cx = sum(v[0] for v in vs) / n
    cy = sum(v[1] for v in vs) / n
    rel = [(v[0] - cx, v[1] - cy) for v in vs]
    for i in range(n):
        assert det2(rel[i], rel[(i + 1) % n]) > 0


def test_empty_slice(example1_cone) -> None:
    with pytest.raises(EmptySlice):
        cross_section(example1_cone, (0, 0, -1))


def test_from_points_segment() -> None:
    s = SlicePolyhedron.from_points([(0, 0), (2, 0)])
    assert s.bounded
    assert s.boundary_edges() == list(frac_points([(2, 0), (-2, 0)]))
    with pytest.raises(ConeError):
        s.to_space((0, 0))


def _random_member(rng, s):
    """Random rational point of conv(vertices) + cone(tail rays)."""
    weights = [Fraction(rng.randint(1, 20)) for _ in s.compact_vertices]
    total = sum(weights)
    x = sum(w * v[0] for w, v in zip(weights, s.compact_vertices)) / total
    y = sum(w * v[1] for w, v in zip(weights, s.compact_vertices)) / total
    for t in s.tail_rays:
        c = Fraction(rng.randint(0, 10), rng.randint(1, 5))
        x, y = x + c * t[0], y + c * t[1]
    return (x, y)


@pytest.mark.parametrize("weight", [(1, 0, 0), (0, 0, 1), (2, -1, 1)])
def test_cross_section_vertices_match_inequalities(rng, example1_cone, weight) -> None:
    s = cross_section(example1_cone, weight)
    for _ in range(100):
        p = _random_member(rng, s)
        assert s.contains(p)
        assert example1_cone.contains(s.to_space(p))
    for _ in range(100):
        p = _random_member(rng, s)
        a, c = rng.choice(s.inequalities)
        step = (a[0] * p[0] + a[1] * p[1] + c) / (a[0] ** 2 + a[1] ** 2) + 1
        q = (p[0] - step * a[0], p[1] - step * a[1])
        assert not s.contains(q)
        assert not example1_cone.contains(s.to_space(q))
