"""
Three dimensional polarized cones and their cross-sections.

The cone over a moment polygon is generated by the rays w_i = (u_i, lambda_i).
Rays are kept in cyclic order, so each adjacent pair spans a facet whose
inward normal is a primitive multiple of the cross product of the pair.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .exact import (
    LatticeVector,
    ZeroVectorError,
    cross3,
    det2,
    det3,
    dot,
    gcd_all,
    in_cone,
    lattice_plane_frame,
    positive_functional,
    primitivize,
    scale_to_primitive,
)
from .polytope import HalfPlane, angle_before

logger = logging.getLogger(__name__)

Point2 = Tuple[Fraction, Fraction]


class ConeError(ValueError):
    """Base class for cone construction errors."""


class NotStronglyConvex(ConeError):
    """The cone contains a line."""


class NotFullDimensional(ConeError):
    """The rays do not span Q^3."""


class RayInteriorToHull(ConeError):
    """A listed ray lies in the cone spanned by the other rays."""

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class RaysNotCyclic(ConeError):
    """The rays are extremal but not listed in cyclic order."""


class DuplicateRay(ConeError):
    """Two rays point in the same direction."""


class EmptySlice(ConeError):
    """No point of the cone lies on the slicing plane."""


def _pair_minors(a: Sequence[int], b: Sequence[int]) -> Tuple[int, int, int]:
    """2x2 minors of the matrix with rows a, b, columns (01, 02, 12)."""
    return (
        a[0] * b[1] - a[1] * b[0],
        a[0] * b[2] - a[2] * b[0],
        a[1] * b[2] - a[2] * b[1],
    )


@dataclass(frozen=True)
class Cone3:
    """Strongly convex cone with cyclically ordered rays and inward facet normals.

    facet_normals[i] is the normal of the facet spanned by rays i and i+1.
    """

    rays: Tuple[LatticeVector, ...]
    facet_normals: Tuple[LatticeVector, ...]

    def facet_rays(self, i: int) -> Tuple[LatticeVector, LatticeVector]:
        return self.rays[i], self.rays[(i + 1) % len(self.rays)]

    def contains(self, v: Sequence[int]) -> bool:
        return all(dot(nu, v) >= 0 for nu in self.facet_normals)


def _check_convex_position(rays: Sequence[LatticeVector]) -> Optional[int]:
    """Orientation sign if the rays are in convex cyclic position, else None."""
    n = len(rays)
    orientation = 0
    for i in range(n):
        a, b = rays[i], rays[(i + 1) % n]
        for j in range(n):
            if j in (i, (i + 1) % n):
                continue
            s = det3(a, b, rays[j])
            if s == 0:
                return None
            s = 1 if s > 0 else -1
            if orientation == 0:
                orientation = s
            elif s != orientation:
                return None
    return orientation


def from_rays(ws: Sequence[Sequence[int]]) -> Cone3:
    """Validate cyclically ordered rays and compute inward facet normals.

    Raises:
        NotFullDimensional, DuplicateRay, NotStronglyConvex,
        RayInteriorToHull, RaysNotCyclic.
    """
    rays = tuple(tuple(int(x) for x in w) for w in ws)
    if len(rays) < 3:
        raise NotFullDimensional(f"{len(rays)} rays cannot span a 3-dimensional cone")
    for i, w in enumerate(rays):
        if len(w) != 3:
            raise ConeError(f"ray w{i + 1} must have 3 coordinates, got {w}")
        if not any(w):
            raise ConeError(f"ray w{i + 1} is zero")
    directions = [primitivize(w)[0] for w in rays]
    for i, j in combinations(range(len(rays)), 2):
        if directions[i] == directions[j]:
            raise DuplicateRay(f"rays w{i + 1} and w{j + 1} have the same direction")

    lineality = positive_functional(rays).zero_set
    if lineality:
        names = ", ".join(f"w{i + 1}" for i in sorted(lineality))
        raise NotStronglyConvex(f"cone contains a line (rays {names} span a linear subspace)")
    if all(det3(*triple) == 0 for triple in combinations(rays, 3)):
        raise NotFullDimensional("rays lie in a plane")

    orientation = _check_convex_position(rays)
    if orientation is None:
        for i, w in enumerate(rays):
            others = rays[:i] + rays[i + 1:]
            if in_cone(w, others):
                raise RayInteriorToHull(
                    f"ray w{i + 1} = {w} lies in the cone spanned by the other rays", i + 1
                )
        raise RaysNotCyclic("rays are not listed in cyclic order")

    normals = []
    for i in range(len(rays)):
        a, b = rays[i], rays[(i + 1) % len(rays)]
        nu = primitivize(cross3(a, b))[0]
        normals.append(tuple(orientation * x for x in nu))
    logger.debug("cone with %d rays, orientation %+d", len(rays), orientation)
    return Cone3(rays, tuple(normals))


def from_polytope(hs: Sequence[HalfPlane]) -> Cone3:
    """Cone over the polygon data: rays w_i = (u_i, lambda_i)."""
    return from_rays([h.lift() for h in hs])


# ---------------------------------------------------------------------------
# Smoothness and Reeb vectors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairSmoothness:
    """gcd of the 2x2 minors of rays (index, index + 1), 1-based."""

    index: int
    next_index: int
    minors: Tuple[int, int, int]
    gcd: int

    @property
    def smooth(self) -> bool:
        return self.gcd == 1


@dataclass(frozen=True)
class SmoothnessReport:
    pairs: Tuple[PairSmoothness, ...]

    @property
    def smooth(self) -> bool:
        return all(p.smooth for p in self.pairs)

    @property
    def failures(self) -> Tuple[PairSmoothness, ...]:
        return tuple(p for p in self.pairs if not p.smooth)


def pair_minor_gcd(a: Sequence[int], b: Sequence[int]) -> int:
    """1 exactly when the pair extends to a basis of Z^3."""
    return gcd_all(_pair_minors(a, b))


def listed_pair_smoothness(rays: Sequence[Sequence[int]]) -> SmoothnessReport:
    """Smoothness table over successive pairs of a ray list, valid cone or not."""
    n = len(rays)
    pairs = []
    for i in range(n):
        a, b = rays[i], rays[(i + 1) % n]
        minors = _pair_minors(a, b)
        pairs.append(PairSmoothness(i + 1, (i + 1) % n + 1, minors, gcd_all(minors)))
    return SmoothnessReport(tuple(pairs))


def smooth_away_from_vertex(c: Cone3) -> SmoothnessReport:
    return listed_pair_smoothness(c.rays)


@dataclass(frozen=True)
class ReebCheck:
    interior: bool
    pairings: Tuple[int, ...]
    violating_facet: Optional[int] = None

    def __bool__(self) -> bool:
        return self.interior


def is_reeb_interior(c: Cone3, xi: Sequence[int]) -> ReebCheck:
    """xi is interior iff it pairs strictly positively with every facet normal.

    violating_facet is the 1-based index of the first facet with pairing <= 0.
    """
    pairings = tuple(dot(nu, xi) for nu in c.facet_normals)
    for k, value in enumerate(pairings):
        if value <= 0:
            return ReebCheck(False, pairings, k + 1)
    return ReebCheck(True, pairings)


def hull_rays(rays: Sequence[Sequence[int]]) -> List[LatticeVector]:
    """Drop rays lying in the cone of the remaining ones, keeping list order."""
    kept = [tuple(w) for w in rays]
    i = 0
    while i < len(kept):
        if in_cone(kept[i], kept[:i] + kept[i + 1:]):
            logger.debug("dropping ray %s from hull", kept[i])
            del kept[i]
        else:
            i += 1
    return kept


# ---------------------------------------------------------------------------
# Cross-sections
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SlicePolyhedron:
    """Cross-section of a cone by the plane <R, y> = 1, in plane coordinates.

    compact_vertices are counterclockwise. For a bounded slice they start at
    the smallest angle around their average; for an unbounded slice they are
    the boundary chain and tail_rays = (out, in): the boundary leaves the last
    vertex along ``out`` and reaches the first vertex travelling along -``in``.

    inequalities are pairs (a, c) meaning <a, p> + c >= 0, and frame is
    (p0, b1, b2) with plane point p0 + s*b1 + t*b2 for coordinates (s, t).
    """

    weight: Optional[LatticeVector]
    compact_vertices: Tuple[Point2, ...]
    tail_rays: Tuple[Tuple[int, int], ...] = ()
    inequalities: Tuple[Tuple[Tuple[int, int], Fraction], ...] = ()
    frame: Optional[Tuple[Tuple[Fraction, ...], LatticeVector, LatticeVector]] = None

    @classmethod
    def from_points(cls, vertices: Sequence[Sequence], tail_rays: Sequence[Sequence[int]] = ()) -> "SlicePolyhedron":
        """Stand-alone polyhedron from vertices listed as in the class docstring."""
        return cls(
            None,
            tuple((Fraction(x), Fraction(y)) for x, y in vertices),
            tuple((int(x), int(y)) for x, y in tail_rays),
        )

    @property
    def bounded(self) -> bool:
        return not self.tail_rays

    def boundary_edges(self) -> List[Point2]:
        """Edge vectors of the compact boundary: cyclic if bounded, the chain otherwise."""
        vs = self.compact_vertices
        if len(vs) < 2:
            return []
        pairs = list(zip(vs, vs[1:]))
        if self.bounded:
            pairs.append((vs[-1], vs[0]))
        return [(b[0] - a[0], b[1] - a[1]) for a, b in pairs]

    def contains(self, point: Sequence[Fraction]) -> bool:
        if not self.inequalities:
            raise ConeError("slice carries no inequalities")
        return all(a[0] * point[0] + a[1] * point[1] + c >= 0 for a, c in self.inequalities)

    def to_space(self, point: Sequence[Fraction]) -> Tuple[Fraction, Fraction, Fraction]:
        if self.frame is None:
            raise ConeError("slice carries no plane frame")
        p0, b1, b2 = self.frame
        return tuple(p0[k] + point[0] * b1[k] + point[1] * b2[k] for k in range(3))


def _ccw_from_smallest_angle(points: Sequence[Point2]) -> Tuple[Point2, ...]:
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)
    rel = {p: (p[0] - cx, p[1] - cy) for p in points}
    ordered = list(points)
    # insertion sort with the exact angle comparator
    for i in range(1, len(ordered)):
        j = i
        while j > 0 and angle_before(rel[ordered[j]], rel[ordered[j - 1]]):
            ordered[j], ordered[j - 1] = ordered[j - 1], ordered[j]
            j -= 1
    return tuple(ordered)


def cross_section(c: Cone3, weight: Sequence[int]) -> SlicePolyhedron:
    """Slice the cone by <R, y> = 1 and convert to vertices plus tail rays.

    Raises:
        EmptySlice: if no ray pairs positively with R.
    """
    weight = tuple(int(x) for x in weight)
    if not any(weight):
        raise ZeroVectorError("slice weight is zero")
    if not any(dot(w, weight) > 0 for w in c.rays):
        raise EmptySlice(f"no ray pairs positively with {weight}")

    p0, (b1, b2) = lattice_plane_frame(weight)
    inequalities = []
    for nu in c.facet_normals:
        a = (dot(nu, b1), dot(nu, b2))
        offset = dot(nu, p0)
        if a == (0, 0):
            if offset < 0:
                raise EmptySlice(f"facet normal {nu} excludes the plane {weight}")
            continue
        inequalities.append((a, offset))

    def feasible(point: Point2) -> bool:
        return all(a[0] * point[0] + a[1] * point[1] + off >= 0 for a, off in inequalities)

    vertices: List[Point2] = []
    for (a1, c1), (a2, c2) in combinations(inequalities, 2):
        d = det2(a1, a2)
        if d == 0:
            continue
        point = (Fraction(-c1 * a2[1] + c2 * a1[1], d), Fraction(-a1[0] * c2 + a2[0] * c1, d))
        if feasible(point) and point not in vertices:
            vertices.append(point)
    if not vertices:
        raise EmptySlice(f"slice at {weight} has no vertices")

    tails: List[Tuple[int, int]] = []
    for a, _ in inequalities:
        for cand in ((-a[1], a[0]), (a[1], -a[0])):
            if all(b[0] * cand[0] + b[1] * cand[1] >= 0 for b, _ in inequalities):
                prim = scale_to_primitive(cand)
                if prim not in tails:
                    tails.append(prim)
    if len(tails) > 2:
        raise ConeError(f"recession cone of slice at {weight} is not pointed")
    logger.debug("slice at %s: %d vertices, tails %s", weight, len(vertices), tails)

    if not tails:
        ordered = _ccw_from_smallest_angle(vertices)
        tail_rays: Tuple[Tuple[int, int], ...] = ()
    else:
        if len(tails) == 2 and det2(tails[0], tails[1]) < 0:
            tails.reverse()
        center = (sum(t[0] for t in tails), sum(t[1] for t in tails))
        ordered = tuple(sorted(vertices, key=lambda p: -det2(center, p)))
        tail_rays = tuple(tails)
    return SlicePolyhedron(
        weight=weight,
        compact_vertices=ordered,
        tail_rays=tail_rays,
        inequalities=tuple(inequalities),
        frame=(p0, b1, b2),
    )
