"""
Moment polygons and their K-stability invariants.

A polygon is given by half-planes <u_i, x> <= lambda_i with normals in
counterclockwise order. From it we integrate over the interior and the
boundary (with a boundary measure rescaled per facet normal) to get the
average scalar curvature S0, the toric Futaki functional L and the
Zhou-Zhu criterion.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import SurdSum, det2, dot, gcd_all, surd_sign

logger = logging.getLogger(__name__)

Point = Tuple[Fraction, Fraction]


class PolygonError(ValueError):
    """Base class for polygon construction and evaluation errors."""


class UnboundedRegion(PolygonError):
    """The half-planes leave an angular gap of at least pi between normals."""


class EmptyInterior(PolygonError):
    """The half-planes intersect in an empty or lower dimensional set."""


class RedundantHalfplane(PolygonError):
    """Some half-plane does not contribute an edge."""


class UnsortedNormals(PolygonError):
    """Normals are not in strictly increasing angular order."""


class NonpositiveLevel(PolygonError):
    """A level lambda_i <= 0, so the origin is not interior."""


class MeasureConvention(Enum):
    """How the length of a facet normal rescales the boundary measure."""

    EUCLIDEAN = "euclidean"
    SUP_NORM = "sup"
    LATTICE_PRIMITIVE = "lattice"

    @classmethod
    def parse(cls, name: str) -> "MeasureConvention":
        for conv in cls:
            if conv.value == name or conv.name.lower() == name.lower():
                return conv
        raise PolygonError(f"unknown measure convention {name!r}")

    def edge_weight(self, edge_vector: Point, normal: Tuple[int, int]) -> SurdSum:
        """Length of an edge divided by the chosen norm of its normal."""
        squared = edge_vector[0] ** 2 + edge_vector[1] ** 2
        if self is MeasureConvention.EUCLIDEAN:
            return SurdSum.sqrt_of_rational(squared / Fraction(dot(normal, normal)))
        length = SurdSum.sqrt_of_rational(squared)
        if self is MeasureConvention.SUP_NORM:
            return length / max(abs(normal[0]), abs(normal[1]))
        return length / gcd_all(normal)


DEFAULT_CONVENTION = MeasureConvention.SUP_NORM


@dataclass(frozen=True)
class HalfPlane:
    """The half-plane <normal, x> <= level."""

    normal: Tuple[int, int]
    level: int

    def __post_init__(self):
        if len(self.normal) != 2:
            raise PolygonError(f"half-plane normal must have 2 coordinates, got {self.normal}")
        object.__setattr__(self, "normal", (int(self.normal[0]), int(self.normal[1])))
        if self.normal == (0, 0):
            raise PolygonError("half-plane normal is zero")
        object.__setattr__(self, "level", int(self.level))

    def slack(self, point: Sequence[Fraction]) -> Fraction:
        """level - <normal, point>; nonnegative inside."""
        return self.level - dot(self.normal, point)

    def lift(self) -> Tuple[int, int, int]:
        return (self.normal[0], self.normal[1], self.level)


@dataclass(frozen=True)
class AffineFunction:
    """theta(x, y) = a*x + b*y + c."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def __call__(self, point: Sequence[Fraction]) -> Fraction:
        return self.a * point[0] + self.b * point[1] + self.c

    def __add__(self, other: "AffineFunction") -> "AffineFunction":
        return AffineFunction(self.a + other.a, self.b + other.b, self.c + other.c)

    def scaled(self, k: Fraction) -> "AffineFunction":
        return AffineFunction(self.a * k, self.b * k, self.c * k)


ONE = AffineFunction(c=1)
X = AffineFunction(a=1)
Y = AffineFunction(b=1)


@dataclass(frozen=True)
class Edge:
    """Edge k of a polygon, lying on half-plane k."""

    index: int
    start: Point
    end: Point
    halfplane: HalfPlane

    @property
    def vector(self) -> Point:
        return (self.end[0] - self.start[0], self.end[1] - self.start[1])

    @property
    def midpoint(self) -> Point:
        return ((self.start[0] + self.end[0]) / 2, (self.start[1] + self.end[1]) / 2)

    def weight(self, conv: MeasureConvention) -> SurdSum:
        return conv.edge_weight(self.vector, self.halfplane.normal)


@dataclass(frozen=True)
class Polygon:
    """Convex polygon with vertex i on the boundary lines of half-planes i and i+1."""

    halfplanes: Tuple[HalfPlane, ...]
    vertices: Tuple[Point, ...]

    @property
    def edges(self) -> Tuple[Edge, ...]:
        n = len(self.halfplanes)
        return tuple(
            Edge(k, self.vertices[k - 1], self.vertices[k], self.halfplanes[k]) for k in range(n)
        )

    @property
    def levels(self) -> Tuple[int, ...]:
        return tuple(h.level for h in self.halfplanes)

    def contains(self, point: Sequence[Fraction]) -> bool:
        return all(h.slack(point) >= 0 for h in self.halfplanes)


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def _half_class(v: Sequence[int]) -> int:
    """0 for angles in [0, pi), 1 for [pi, 2pi)."""
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def angle_before(a: Sequence, b: Sequence) -> bool:
    """True if the polar angle of a in [0, 2pi) is smaller than that of b."""
    ha, hb = _half_class(a), _half_class(b)
    if ha != hb:
        return ha < hb
    return det2(a, b) > 0


def _same_direction(a: Sequence[int], b: Sequence[int]) -> bool:
    return det2(a, b) == 0 and dot(a, b) > 0


def _intersect(h1: HalfPlane, h2: HalfPlane) -> Point:
    (a1, b1), (a2, b2) = h1.normal, h2.normal
    d = det2(h1.normal, h2.normal)
    return (
        Fraction(h1.level * b2 - h2.level * b1, d),
        Fraction(a1 * h2.level - a2 * h1.level, d),
    )


def _clip(poly: List[Point], h: HalfPlane) -> List[Point]:
    """Sutherland-Hodgman step against one half-plane."""
    out: List[Point] = []
    for i, cur in enumerate(poly):
        prev = poly[i - 1]
        s_cur, s_prev = h.slack(cur), h.slack(prev)
        if s_cur >= 0:
            if s_prev < 0:
                t = s_prev / (s_prev - s_cur)
                out.append((prev[0] + t * (cur[0] - prev[0]), prev[1] + t * (cur[1] - prev[1])))
            out.append(cur)
        elif s_prev >= 0:
            t = s_prev / (s_prev - s_cur)
            out.append((prev[0] + t * (cur[0] - prev[0]), prev[1] + t * (cur[1] - prev[1])))
    return out


def _shoelace(points: Sequence[Point]) -> Fraction:
    return sum(
        (det2(points[i - 1], points[i]) for i in range(len(points))), Fraction(0)
    ) / 2


def _diagnose(hs: Sequence[HalfPlane]) -> PolygonError:
    """Decide between an empty interior and a redundant half-plane."""
    points = [
        _intersect(hs[i], hs[j])
        for i in range(len(hs))
        for j in range(i + 1, len(hs))
        if det2(hs[i].normal, hs[j].normal) != 0
    ]
    bound = max((max(abs(p[0]), abs(p[1])) for p in points), default=Fraction(0)) + 1
    region: List[Point] = [(bound, bound), (-bound, bound), (-bound, -bound), (bound, -bound)]
    for h in hs:
        region = _clip(region, h)
        if not region:
            break
    if len(region) < 3 or _shoelace(region) == 0:
        return EmptyInterior("half-planes have empty interior")
    for k, h in enumerate(hs):
        on_line = [p for p in region if h.slack(p) == 0]
        if len(set(on_line)) < 2:
            return RedundantHalfplane(f"half-plane {k + 1} {h.normal} <= {h.level} is redundant")
    return RedundantHalfplane("a half-plane is redundant")


def from_halfplanes(hs: Sequence[HalfPlane]) -> Polygon:
    """Build the polygon cut out by half-planes in counterclockwise normal order.

    Raises:
        UnsortedNormals, RedundantHalfplane, UnboundedRegion, EmptyInterior.
    """
    hs = tuple(hs)
    n = len(hs)
    if n < 3:
        raise UnboundedRegion(f"{n} half-planes cannot bound a polygon")

    for i in range(n):
        for j in range(i + 1, n):
            if _same_direction(hs[i].normal, hs[j].normal):
                raise RedundantHalfplane(
                    f"half-planes {i + 1} and {j + 1} have parallel normals {hs[i].normal}, {hs[j].normal}"
                )
    descents = sum(1 for i in range(n) if not angle_before(hs[i].normal, hs[(i + 1) % n].normal))
    if descents != 1:
        raise UnsortedNormals("normals are not in counterclockwise angular order")
    for i in range(n):
        nxt = hs[(i + 1) % n]
        if det2(hs[i].normal, nxt.normal) <= 0:
            raise UnboundedRegion(
                f"angle from normal {i + 1} to normal {(i + 1) % n + 1} is at least pi"
            )

    vertices = tuple(_intersect(hs[i], hs[(i + 1) % n]) for i in range(n))
    for k in range(n):
        u = hs[k].normal
        start, end = vertices[k - 1], vertices[k]
        t = dot((end[0] - start[0], end[1] - start[1]), (-u[1], u[0]))
        if t <= 0:
            logger.debug("edge %d has nonpositive length parameter %s", k + 1, t)
            raise _diagnose(hs)
    return Polygon(hs, vertices)


def polygon(data: Sequence[Tuple[int, int, int]]) -> Polygon:
    """Shorthand: polygon from (ux, uy, lambda) triples."""
    return from_halfplanes([HalfPlane((ux, uy), lam) for ux, uy, lam in data])


# ---------------------------------------------------------------------------
# Integrals
# ---------------------------------------------------------------------------

def area(p: Polygon) -> Fraction:
    """Exact area of the polygon (shoelace formula over its vertices)."""
    return _shoelace(p.vertices)


def _first_moments(p: Polygon) -> Tuple[Fraction, Fraction]:
    """(integral of x, integral of y) over the polygon."""
    mx = my = Fraction(0)
    vs = p.vertices
    for i in range(len(vs)):
        a, b = vs[i - 1], vs[i]
        cross = det2(a, b)
        mx += (a[0] + b[0]) * cross
        my += (a[1] + b[1]) * cross
    return mx / 6, my / 6


def moment(p: Polygon, theta: AffineFunction) -> Fraction:
    mx, my = _first_moments(p)
    return theta.a * mx + theta.b * my + theta.c * area(p)


def centroid(p: Polygon) -> Point:
    mx, my = _first_moments(p)
    a = area(p)
    return (mx / a, my / a)


def boundary_measure(p: Polygon, conv: MeasureConvention) -> SurdSum:
    total = SurdSum()
    for edge in p.edges:
        total = total + edge.weight(conv)
    return total


def boundary_moment(p: Polygon, theta: AffineFunction, conv: MeasureConvention) -> SurdSum:
    """Integral of theta over the boundary; exact since theta is affine on each edge."""
    total = SurdSum()
    for edge in p.edges:
        total = total + edge.weight(conv) * theta(edge.midpoint)
    return total


def mean_scalar_curvature(p: Polygon, conv: MeasureConvention) -> SurdSum:
    """S0 = boundary measure / area."""
    return boundary_measure(p, conv) / area(p)


def futaki(p: Polygon, theta: AffineFunction, conv: MeasureConvention) -> SurdSum:
    """L(theta) = boundary integral of theta - S0 * area integral of theta."""
    return boundary_moment(p, theta, conv) - mean_scalar_curvature(p, conv) * moment(p, theta)


def futaki_vanishes(p: Polygon, conv: MeasureConvention) -> bool:
    return not futaki(p, X, conv) and not futaki(p, Y, conv)


def compare_conventions(p: Polygon) -> Dict[MeasureConvention, SurdSum]:
    return {conv: mean_scalar_curvature(p, conv) for conv in MeasureConvention}


@dataclass(frozen=True)
class FacetMargin:
    index: int
    level: int
    bound: Fraction
    margin: SurdSum

    @property
    def sign(self) -> int:
        return surd_sign(self.margin)


@dataclass(frozen=True)
class ZhouZhuReport:
    n: int
    convention: MeasureConvention
    s0: SurdSum
    futaki_x: SurdSum
    futaki_y: SurdSum
    margins: Tuple[FacetMargin, ...] = field(default_factory=tuple)

    @property
    def futaki_vanishes(self) -> bool:
        return not self.futaki_x and not self.futaki_y

    @property
    def worst(self) -> FacetMargin:
        worst = self.margins[0]
        for m in self.margins[1:]:
            if m.margin < worst.margin:
                worst = m
        return worst

    @property
    def passed(self) -> bool:
        return self.futaki_vanishes and all(m.sign > 0 for m in self.margins)

    @property
    def verdict(self) -> str:
        return "Pass" if self.passed else "Fail"


def zhou_zhu(p: Polygon, n: int = 2, conv: MeasureConvention = DEFAULT_CONVENTION) -> ZhouZhuReport:
    """Check vanishing Futaki and S0 < (n+1)/lambda_i on every facet.

    Raises:
        NonpositiveLevel: if some lambda_i <= 0.
    """
    if n < 1:
        raise PolygonError(f"n must be positive, got {n}")
    for k, h in enumerate(p.halfplanes):
        if h.level <= 0:
            raise NonpositiveLevel(f"half-plane {k + 1} has level {h.level} <= 0")
    s0 = mean_scalar_curvature(p, conv)
    margins = tuple(
        FacetMargin(k + 1, h.level, Fraction(n + 1, h.level), Fraction(n + 1, h.level) - s0)
        for k, h in enumerate(p.halfplanes)
    )
    return ZhouZhuReport(
        n=n,
        convention=conv,
        s0=s0,
        futaki_x=futaki(p, X, conv),
        futaki_y=futaki(p, Y, conv),
        margins=margins,
    )


# ---------------------------------------------------------------------------
# Transformations of half-plane data
# ---------------------------------------------------------------------------

def translate_halfplanes(hs: Sequence[HalfPlane], t: Tuple[int, int]) -> List[HalfPlane]:
    """Half-planes of the polygon moved by the integer vector t."""
    return [HalfPlane(h.normal, h.level + dot(h.normal, t)) for h in hs]


def scale_halfplanes(hs: Sequence[HalfPlane], c: int) -> List[HalfPlane]:
    if c <= 0:
        raise PolygonError(f"scale factor must be positive, got {c}")
    return [HalfPlane(h.normal, h.level * c) for h in hs]


def transform_halfplanes(hs: Sequence[HalfPlane], matrix: Sequence[Sequence[int]]) -> List[HalfPlane]:
    """Half-planes of A(polygon) for A in GL(2, Z): u -> A^{-T} u.

    The list is reversed when det A = -1 so the normals stay
    counterclockwise.
    """
    (a, b), (c, d) = matrix
    det = a * d - b * c
    if det not in (1, -1):
        raise PolygonError(f"matrix {matrix} is not in GL(2, Z)")
    # A^{-T} = (1/det) [[d, -c], [-b, a]]
    mapped = [
        HalfPlane(((d * h.normal[0] - c * h.normal[1]) * det, (-b * h.normal[0] + a * h.normal[1]) * det), h.level)
        for h in hs
    ]
    if det < 0:
        mapped.reverse()
    return mapped
